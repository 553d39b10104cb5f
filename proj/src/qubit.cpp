// qubit.cpp: Two-level system domain types and static Bloch-Redfield rates

#include "adiabr/qubit.hpp"

#include "adiabr/errors.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace adiabr {

using cd = std::complex<double>;

namespace pauli {
Mat2 identity() { return Mat2::Identity(); }
Mat2 x() {
    Mat2 s;
    s << 0.0, 1.0, 1.0, 0.0;
    return s;
}
Mat2 y() {
    Mat2 s;
    s << 0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0;
    return s;
}
Mat2 z() {
    Mat2 s;
    s << 1.0, 0.0, 0.0, -1.0;
    return s;
}
} // namespace pauli

void BathSpec::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ValidationError("BathSpec: alpha must be finite and >= 0");
    if (e_cutoff && !(*e_cutoff > 0.0 && std::isfinite(*e_cutoff)))
        throw ValidationError("BathSpec: finite cutoff must be > 0 (omit it for E_c = infinity)");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ValidationError("BathSpec: temperature must be finite and >= 0");
    if (!(j0 >= 0.0) || !std::isfinite(j0))
        throw ValidationError("BathSpec: j0 must be finite and >= 0");
}

QubitState::QubitState() : rho_(Mat2::Identity() * 0.5) {}

QubitState::QubitState(const Mat2& rho) : rho_(rho) {
    if (!rho.allFinite())
        throw ValidationError("QubitState: non-finite entries");
    if (std::abs(rho.trace() - cd(1.0, 0.0)) > kTraceTol)
        throw ValidationError("QubitState: trace differs from 1");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw ValidationError("QubitState: matrix is not Hermitian");
    if (bloch().norm() > 1.0 + kBlochTol)
        throw ValidationError("QubitState: Bloch vector longer than 1");
}

QubitState QubitState::ground() {
    Mat2 rho = Mat2::Zero();
    rho(0, 0) = 1.0;
    return QubitState(rho);
}

QubitState QubitState::excited() {
    Mat2 rho = Mat2::Zero();
    rho(1, 1) = 1.0;
    return QubitState(rho);
}

QubitState QubitState::mixed() { return QubitState(); }

Vec3 QubitState::bloch() const {
    // m_i = Tr(sigma_i rho)
    return {2.0 * rho_(0, 1).real(), -2.0 * rho_(0, 1).imag(),
            (rho_(0, 0) - rho_(1, 1)).real()};
}

double QubitState::purity() const { return (rho_ * rho_).trace().real(); }

std::string_view to_string(CouplingMode mode) {
    switch (mode) {
    case CouplingMode::perp_y: return "perp-y";
    case CouplingMode::inplane_z: return "inplane-z";
    case CouplingMode::longitudinal: return "longitudinal";
    }
    return "?";
}

CouplingMode coupling_mode_from_string(std::string_view name) {
    if (name == "perp-y" || name == "perp_y") return CouplingMode::perp_y;
    if (name == "inplane-z" || name == "inplane_z") return CouplingMode::inplane_z;
    if (name == "longitudinal") return CouplingMode::longitudinal;
    throw ConfigError("unknown coupling mode '" + std::string(name) +
                      "' (expected perp-y, inplane-z or longitudinal)");
}

CouplingSpec CouplingSpec::from_mode(CouplingMode mode) {
    switch (mode) {
    case CouplingMode::perp_y: return {mode, Vec3(0.0, 1.0, 0.0)};
    case CouplingMode::inplane_z: return {mode, Vec3(0.0, 0.0, 1.0)};
    // co-rotating with the field; n is its direction at t = 0
    case CouplingMode::longitudinal: return {mode, Vec3(0.0, 0.0, -1.0)};
    }
    throw ConfigError("unknown coupling mode");
}

void CouplingSpec::validate() const {
    if (!n.allFinite() || std::abs(n.norm() - 1.0) > 1e-12)
        throw ValidationError("CouplingSpec: direction n must be a unit vector");
}

void RateSet::validate(double tol) const {
    if (!(gamma_r >= 0.0 && gamma_e >= 0.0 && gamma_2 >= 0.0 && gamma_phi >= 0.0 &&
          geometry_factor >= 0.0))
        throw ValidationError("RateSet: rates must be non-negative");
    if (gamma_2 < 0.5 * (gamma_r + gamma_e) - tol)
        throw ValidationError("RateSet: gamma_2 below (gamma_r + gamma_e)/2");
}

double planck_occupation(double eps, double temperature) {
    if (temperature < 0.0)
        throw DomainError("planck_occupation: negative temperature");
    if (temperature == 0.0) return 0.0;
    if (!(eps > 0.0))
        throw DomainError("planck_occupation: eps <= 0 at finite temperature diverges");
    return 1.0 / std::expm1(eps / temperature);
}

double ohmic_spectral_density(double eps, const BathSpec& bath) {
    if (eps < 0.0)
        throw DomainError("ohmic_spectral_density: eps must be >= 0");
    const double linear = 2.0 * M_PI * bath.alpha * eps;
    if (!bath.e_cutoff) return linear;
    return linear * std::exp(-eps / *bath.e_cutoff);
}

Vec3 bloch_of_density(const QubitState& state) { return state.bloch(); }

QubitState density_of_bloch(const Vec3& m) {
    if (!m.allFinite() || m.norm() > 1.0 + QubitState::kBlochTol)
        throw ValidationError("density_of_bloch: |m| must be <= 1");
    const Mat2 rho =
        0.5 * (pauli::identity() + m.x() * pauli::x() + m.y() * pauli::y() + m.z() * pauli::z());
    return QubitState(rho);
}

RateSet rates_from_weights(double flip_weight, double gamma_phi, double eps, const BathSpec& bath) {
    RateSet r;
    r.geometry_factor = flip_weight;
    r.gamma_phi = gamma_phi;
    if (flip_weight > 0.0 && bath.alpha > 0.0) {
        const double j = ohmic_spectral_density(eps, bath);
        const double n = planck_occupation(eps, bath.temperature);
        r.gamma_r = 0.5 * flip_weight * j * (n + 1.0);
        r.gamma_e = 0.5 * flip_weight * j * n;
    }
    r.gamma_2 = 0.5 * (r.gamma_r + r.gamma_e) + r.gamma_phi;
    return r;
}

RateSet static_rates(const CouplingSpec& coupling, double eps, const BathSpec& bath) {
    if (!(eps > 0.0))
        throw DomainError("static_rates: eps must be > 0");
    coupling.validate();
    const Vec3& n = coupling.n;
    return rates_from_weights(n.x() * n.x() + n.y() * n.y(), n.z() * n.z() * bath.j0, eps, bath);
}

} // namespace adiabr

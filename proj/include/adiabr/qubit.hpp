// qubit.hpp: Two-level system domain types, Ohmic bath, thermal occupation and static rates
//
// Units: hbar = 1 and energies are measured in units of the minimal gap Delta,
// times in units of 1/Delta.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string_view>

namespace adiabr {

using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
} // namespace pauli

// Ohmic (s = 1) environment. An empty cutoff means E_c = infinity.
struct BathSpec {
    double alpha{0.0};
    std::optional<double> e_cutoff{};
    double temperature{0.0};
    double j0{0.0};

    bool has_cutoff() const noexcept { return e_cutoff.has_value(); }
    void validate() const;
};

// 2x2 Hermitian, unit-trace density matrix. Construction validates the invariants.
class QubitState {
public:
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kBlochTol = 1e-6;

    QubitState();
    explicit QubitState(const Mat2& rho);

    static QubitState ground();   // |0><0|, m = (0,0,1)
    static QubitState excited();  // |1><1|
    static QubitState mixed();

    const Mat2& rho() const noexcept { return rho_; }
    Vec3 bloch() const;
    double population(int level) const { return rho_(level, level).real(); }
    double purity() const;

private:
    Mat2 rho_;
};

enum class CouplingMode { perp_y, inplane_z, longitudinal };

std::string_view to_string(CouplingMode mode);
CouplingMode coupling_mode_from_string(std::string_view name);

// Direction n of the environment field in the qubit space.
struct CouplingSpec {
    CouplingMode mode{CouplingMode::perp_y};
    Vec3 n{0.0, 1.0, 0.0};

    static CouplingSpec from_mode(CouplingMode mode);
    void validate() const;
};

struct RateSet {
    double gamma_r{0.0};
    double gamma_e{0.0};
    double gamma_2{0.0};
    double gamma_phi{0.0};
    double geometry_factor{0.0};

    double total() const noexcept { return gamma_r + gamma_e; }
    void validate(double tol = 1e-12) const;
};

// Bose occupation 1/(exp(eps/T) - 1); exactly zero at T = 0.
double planck_occupation(double eps, double temperature);

// J(eps) = 2 pi alpha eps exp(-eps/E_c).
double ohmic_spectral_density(double eps, const BathSpec& bath);

Vec3 bloch_of_density(const QubitState& state);
QubitState density_of_bloch(const Vec3& m);

// Flip rates from the component of n perpendicular to a static field along z,
// pure dephasing from the parallel component.
RateSet static_rates(const CouplingSpec& coupling, double eps, const BathSpec& bath);

// Rates for a given flip weight and pure-dephasing rate at gap eps.
RateSet rates_from_weights(double flip_weight, double gamma_phi, double eps, const BathSpec& bath);

} // namespace adiabr

// frames.cpp: Rotating-field and Landau-Zener basis transformations

#include "adiabr/frames.hpp"

#include "adiabr/errors.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace adiabr {

namespace {

using cd = std::complex<double>;

// exp(i phi sigma / 2)
Mat2 half_angle_rotation(double phi, const Mat2& sigma) {
    return std::cos(0.5 * phi) * pauli::identity() + cd(0.0, std::sin(0.5 * phi)) * sigma;
}

Vec3 pauli_components(const Mat2& m) {
    return {0.5 * (pauli::x() * m).trace().real(), 0.5 * (pauli::y() * m).trace().real(),
            0.5 * (pauli::z() * m).trace().real()};
}

Mat2 lab_coupling_operator(CouplingMode mode, const FrameAngles& frame) {
    switch (mode) {
    case CouplingMode::perp_y: return pauli::y();
    case CouplingMode::inplane_z: return pauli::z();
    case CouplingMode::longitudinal: {
        const Vec3 b = control_field(frame).normalized();
        return b.x() * pauli::x() + b.y() * pauli::y() + b.z() * pauli::z();
    }
    }
    throw ConfigError("unknown coupling mode");
}

} // namespace

std::string_view to_string(Basis basis) {
    switch (basis) {
    case Basis::diabatic: return "diabatic";
    case Basis::adiabatic: return "adiabatic";
    case Basis::eigen: return "eigen";
    }
    return "?";
}

Basis basis_from_string(std::string_view name) {
    if (name == "diabatic") return Basis::diabatic;
    if (name == "adiabatic") return Basis::adiabatic;
    if (name == "eigen") return Basis::eigen;
    throw ConfigError("unknown basis '" + std::string(name) +
                      "' (expected diabatic, adiabatic or eigen)");
}

void RotatingFieldParams::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ValidationError("RotatingFieldParams: delta must be > 0");
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw ValidationError("RotatingFieldParams: omega must be >= 0");
}

void LZParams::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ValidationError("LZParams: delta must be > 0");
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError("LZParams: v must be > 0");
}

FrameAngles rotating_frame(double t, const RotatingFieldParams& p) {
    FrameAngles f;
    f.scenario = Scenario::rotation;
    f.t = t;
    f.e_gap = p.delta;
    if (t < 0.0) {
        f.w_gap = p.delta;
        return f;
    }
    f.theta = p.omega * t;
    f.theta_dot = p.omega;
    f.eta = std::atan(p.omega / p.delta);
    f.eta_dot = 0.0;
    f.w_gap = std::hypot(p.delta, p.omega);
    return f;
}

FrameAngles lz_frame(double t, const LZParams& p) {
    const double d = p.delta;
    const double v = p.v;
    const double vt = v * t;
    const double e = std::hypot(vt, d);
    const double e3 = e * e * e;
    const double off = v * d / (e * e);  // theta_dot

    FrameAngles f;
    f.scenario = Scenario::landau_zener;
    f.t = t;
    f.e_gap = e;
    f.theta = std::atan2(d, -vt);  // in [0, pi]
    f.theta_dot = off;
    f.eta = std::atan(v * d / e3);
    f.w_gap = std::hypot(e, off);
    f.eta_dot = -3.0 * v * v * v * d * t / (e3 * f.w_gap * f.w_gap);
    return f;
}

Vec3 control_field(const FrameAngles& f) {
    return f.e_gap * Vec3(std::sin(f.theta), 0.0, -std::cos(f.theta));
}

Mat2 effective_hamiltonian(const FrameAngles& f, Basis level) {
    switch (level) {
    case Basis::diabatic: {
        const Vec3 b = control_field(f);
        return -0.5 * (b.x() * pauli::x() + b.y() * pauli::y() + b.z() * pauli::z());
    }
    case Basis::adiabatic: return -0.5 * (f.e_gap * pauli::z() - f.theta_dot * pauli::y());
    case Basis::eigen: return -0.5 * (f.w_gap * pauli::z() + f.eta_dot * pauli::x());
    }
    throw ConfigError("unknown basis");
}

Mat2 frame_unitary(const FrameAngles& f, Basis level) {
    if (level == Basis::diabatic) return pauli::identity();
    const Mat2 u1 = half_angle_rotation(M_PI - f.theta, pauli::y());
    if (level == Basis::adiabatic) return u1;
    return half_angle_rotation(f.eta, pauli::x()) * u1;
}

EffectiveCoupling transformed_coupling(CouplingMode mode, const FrameAngles& frame, Basis level) {
    if (frame.scenario == Scenario::landau_zener && mode == CouplingMode::perp_y)
        throw ConfigError("perp-y coupling is not defined for the Landau-Zener scenario "
                          "(use inplane-z for n = z or longitudinal for n || b)");
    const Mat2 v = frame_unitary(frame, level);
    const Mat2 op = v * lab_coupling_operator(mode, frame) * v.adjoint();
    EffectiveCoupling out;
    out.c = pauli_components(op);
    out.flip_weight = out.c.x() * out.c.x() + out.c.y() * out.c.y();
    out.dephasing_weight = out.c.z() * out.c.z();
    return out;
}

} // namespace adiabr

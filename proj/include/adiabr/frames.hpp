// frames.hpp: Time-dependent basis transformations for the rotating-field and
// Landau-Zener scenarios
//
// Both scenarios use one parametrization of the control field,
//
//     b(t) = E(t) (sin theta, 0, -cos theta),   H_lab = -b.sigma / 2,
//
// so the Landau-Zener field b = (Delta, 0, v t) has cos theta = -v t / E and the
// rotating field starts along -z at t = 0 and turns toward +x. The adiabatic
// transformation is U1 = exp(i (pi - theta) sigma_y / 2) and the second one is
// U2 = exp(i eta sigma_x / 2) with tan eta = theta_dot / E. States transform as
// rho_frame = U rho_lab U^dag, Hamiltonians as U H U^dag + i dU/dt U^dag:
//
//     adiabatic:  H1 = -(E sigma_z - theta_dot sigma_y) / 2
//     eigen:      HV = -(W sigma_z + eta_dot sigma_x) / 2,   W = sqrt(E^2 + theta_dot^2)
//
// With this orientation the ground state of H1 has m_y = -theta_dot / W.

#pragma once

#include "adiabr/qubit.hpp"

#include <string_view>

namespace adiabr {

enum class Scenario { rotation, landau_zener };

// Which basis a state or Hamiltonian is expressed in.
enum class Basis { diabatic, adiabatic, eigen };

std::string_view to_string(Basis basis);
Basis basis_from_string(std::string_view name);

struct RotatingFieldParams {
    double delta{1.0};
    double omega{0.1};

    void validate() const;
};

struct LZParams {
    double delta{1.0};
    double v{0.5};

    void validate() const;
    // Rates are accurate to O(v^2 / Delta^4) only.
    bool beyond_truncation_accuracy() const noexcept { return v > delta * delta; }
};

// Time-local transformation data. eta_dot is the exact time derivative of eta.
struct FrameAngles {
    Scenario scenario{Scenario::rotation};
    double t{0.0};
    double theta{0.0};
    double eta{0.0};
    double theta_dot{0.0};
    double eta_dot{0.0};
    double e_gap{1.0};
    double w_gap{1.0};
};

FrameAngles rotating_frame(double t, const RotatingFieldParams& p);
FrameAngles lz_frame(double t, const LZParams& p);

// Lab-frame control field b(t).
Vec3 control_field(const FrameAngles& frame);

// Hamiltonian in the given basis (diabatic returns the lab Hamiltonian).
Mat2 effective_hamiltonian(const FrameAngles& frame, Basis level);

// Unitary U with rho_level = U rho_lab U^dag.
Mat2 frame_unitary(const FrameAngles& frame, Basis level);

// Components (c_x, c_y, c_z) of V n.sigma V^dag plus the weights that enter the rates.
struct EffectiveCoupling {
    Vec3 c{0.0, 0.0, 0.0};
    double flip_weight{0.0};       // c_x^2 + c_y^2
    double dephasing_weight{0.0};  // c_z^2
};

// Coupling operator n.sigma expressed in the eigen basis (or the adiabatic one when
// level == Basis::adiabatic). Rotation supports every mode; the LZ scenario supports
// inplane_z (the transverse n = z coupling) and longitudinal (n parallel to b).
EffectiveCoupling transformed_coupling(CouplingMode mode, const FrameAngles& frame,
                                       Basis level = Basis::eigen);

} // namespace adiabr

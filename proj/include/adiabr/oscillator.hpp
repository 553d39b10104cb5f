// oscillator.hpp: Qubit coupled to a single damped harmonic oscillator
//
// Joint Lindblad evolution in the eigen (V) frame of the rotating field:
//
//     H = -(W sz + eta_dot sx)/2 + omega0 (a^dag a + 1/2) + (lambda/2)(a + a^dag) c.sigma
//
// with c the coupling direction in the eigen frame. The oscillator is damped at rate
// kappa; at T > 0 the dissipator gains the thermal excitation channel with
// occupation N = planck_occupation(omega0, T). Joint indices are q * n_fock + k.

#pragma once

#include "adiabr/dynamics.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace adiabr {

struct OscillatorModel {
    double omega0{1.0};
    double lambda{0.1};
    double kappa{0.2};
    std::size_t n_fock{10};
    double temperature{0.0};
    // Truncation grows by doubling up to max_fock when auto_grow is set.
    bool auto_grow{true};
    std::size_t max_fock{160};

    void validate() const;
    double occupation() const;
};

struct JointState {
    static constexpr double kTraceTol = 1e-8;
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kEigenFloor = -1e-7;

    Eigen::MatrixXcd rho;
    std::size_t n_fock{0};

    static JointState product(const QubitState& qubit, const Eigen::MatrixXcd& oscillator);
    static Eigen::MatrixXcd thermal_oscillator(std::size_t n_fock, double omega0, double temperature);

    void validate() const;
    // Population of the highest Fock level kept.
    double top_level_population() const;
};

QubitState reduce_to_qubit(const JointState& joint);
Eigen::MatrixXcd reduce_to_oscillator(const JointState& joint);

struct JointRun {
    Trajectory trajectory;  // reduced qubit states in the eigen basis
    JointState final_state;
    std::size_t n_fock_used{0};
};

// Starts from the lab ground state of the field at cfg.t_start (expressed in the
// eigen frame) times the thermal oscillator, unless an initial joint state is given.
JointRun evolve_joint(const OscillatorModel& model, const RotatingFieldParams& field,
                      CouplingMode mode, const SolverConfig& cfg,
                      const std::vector<double>& samples = {},
                      std::optional<JointState> initial = std::nullopt);

} // namespace adiabr

// dynamics.hpp: Propagation of Bloch-Redfield, rate-equation and Lindblad models

#pragma once

#include "adiabr/frames.hpp"
#include "adiabr/integrator.hpp"
#include "adiabr/qubit.hpp"
#include "adiabr/rates.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace adiabr {

// m = Tr(sigma rho) and P_e = rho_11 in the basis of the trajectory. In the lab
// (diabatic) basis rho_11 is the |down> population, the state a Landau-Zener sweep
// starts in.
struct Observables {
    double mx{0.0};
    double my{0.0};
    double mz{0.0};
    double pe{0.0};
};

// Worst structural deviations seen over all accepted steps.
struct StepDiagnostics {
    std::size_t accepted{0};
    std::size_t rejected{0};
    double max_trace_dev{0.0};
    double max_hermitian_dev{0.0};
    double max_detailed_balance_rel{0.0};

    void merge(const StepDiagnostics& other);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<QubitState> states;
    std::vector<Observables> observables;
    std::vector<RateSet> rates;
    Basis basis_tag{Basis::eigen};
    std::optional<Scenario> scenario;
    // P_e in the diabatic, adiabatic and eigen bases (filled by lab_frame_observables).
    std::vector<std::array<double, 3>> pe_by_basis;
    StepDiagnostics diagnostics;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return times.size(); }
    void push(double t, const QubitState& s, const RateSet& r);
};

using GapFn = std::function<double(double)>;
using RateFn = std::function<RateSet(double)>;
using FrameFn = std::function<FrameAngles(double)>;

Observables observables_of(const QubitState& s);

// |Gamma_e/Gamma_r - exp(-gap/T)| relative to exp(-gap/T); at T = 0 returns Gamma_e
// relative to Gamma_r (which must vanish).
double detailed_balance_error(const RateSet& r, double gap, double temperature);

// Secular Bloch equations in the eigenbasis of a Hamiltonian -W(t) sigma_z / 2:
//   mx' = W my - G2 mx,  my' = -W mx - G2 my,  mz' = (Gr - Ge) - (Gr + Ge) mz.
// With an empty sample grid every accepted step is recorded. When a temperature is
// given the rates are checked for detailed balance on every accepted step.
Trajectory evolve_br_secular(const QubitState& initial, const GapFn& gap, const RateFn& rates,
                             const SolverConfig& cfg, const std::vector<double>& samples = {},
                             std::optional<double> temperature = std::nullopt);

// Rotating-field run: thermal (or ground, T = 0) state of the field at t = 0,
// secular BR in the eigen basis (or in the adiabatic basis when level is adiabatic).
Trajectory evolve_br_rotating(const RotatingFieldParams& p, CouplingMode mode,
                              const BathSpec& bath, const SolverConfig& cfg,
                              const std::vector<double>& samples = {},
                              Basis level = Basis::eigen,
                              std::optional<QubitState> initial_lab = std::nullopt);

// Lab-frame Gibbs state of the instantaneous field with Bloch length tanh(gap/2T)
// where gap is W (eigen level) or E (adiabatic level); pure ground state at T = 0.
QubitState thermal_lab_state(const FrameAngles& frame, double temperature,
                             Basis level = Basis::eigen);

// Landau-Zener sweep with the full (non-secular in eta_dot) BR equations:
//   rho' = -i[H, rho] + secular dissipator,  H = -(W sz + eta_dot sx)/2
// in the eigen basis, or H = -(E sz - theta_dot sy)/2 with U1-only rates when
// level == Basis::adiabatic. Starts in the ground state at cfg.t_start.
Trajectory evolve_br_lz(const LZParams& p, LZKind kind, const BathSpec& bath,
                        const SolverConfig& cfg, const std::vector<double>& samples = {},
                        Basis level = Basis::eigen);

struct RateEquationResult {
    Trajectory trajectory;  // Bloch (0, 0, m) in the eigen basis
    double p_inf{0.0};
};

// 1/Gamma0 dm/dt = 1 - m coth(W/2T), m(t_start) = 1. Requires T > 0.
RateEquationResult evolve_rate_equation(const LZParams& p, LZKind kind, const BathSpec& bath,
                                        const SolverConfig& cfg,
                                        const std::vector<double>& samples = {});

// Lindblad model in the adiabatic basis:
//   rho' = -i[H1, rho] + (gamma/2)(sz rho sz - rho),  H1 = -(E sz - s theta_dot sy)/2
// with s = theta_dot_sign. Rotation starts in the ground state at t = 0; the sweep
// starts in the ground state at cfg.t_start.
struct LindbladScenario {
    Scenario scenario{Scenario::rotation};
    RotatingFieldParams rotation{};
    LZParams lz{};
    double theta_dot_sign{1.0};
};

Trajectory evolve_lindblad_dephasing(const LindbladScenario& sc, double gamma,
                                     const SolverConfig& cfg,
                                     const std::vector<double>& samples = {});

// Default integration window for a Landau-Zener run: +-4 E_c / v with a finite
// cutoff, +-200 / Delta otherwise.
std::pair<double, double> default_lz_window(const LZParams& p, const BathSpec& bath);

FrameFn frame_provider(const RotatingFieldParams& p);
FrameFn frame_provider(const LZParams& p);

// Re-expresses every state of traj in the target basis.
Trajectory change_basis(const Trajectory& traj, const FrameFn& frames, Basis target);

// Lab-frame states and observables; for every sample also records P_e in the three
// bases.
Trajectory lab_frame_observables(const Trajectory& traj, const FrameFn& frames);

// Mean of my over samples with t >= t_from.
double tail_mean_my(const Trajectory& traj, double t_from);

} // namespace adiabr

// dynamics.cpp: Bloch-Redfield, rate-equation and Lindblad propagation

#include "adiabr/dynamics.hpp"

#include "adiabr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace adiabr {

namespace {

using cd = std::complex<double>;
using Rho4 = Eigen::Vector4cd;
using HamFn = std::function<Mat2(double)>;

struct DensityModel {
    HamFn hamiltonian;
    RateFn rates;  // empty: no relaxation
    GapFn gap;     // used for the detailed-balance check only
    double dephasing{0.0};
    std::optional<double> temperature;
};

Mat2 as_matrix(const Rho4& y) {
    Mat2 rho;
    rho << y(0), y(1), y(2), y(3);
    return rho;
}

Rho4 as_vector(const Mat2& rho) { return {rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1)}; }

Mat2 hermitian_part(const Mat2& m) { return 0.5 * (m + m.adjoint()); }

void track_rates(StepDiagnostics& d, const RateSet& r, double gap, std::optional<double> temp) {
    if (!temp) return;
    d.max_detailed_balance_rel =
        std::max(d.max_detailed_balance_rel, detailed_balance_error(r, gap, *temp));
}

// rho' = -i[H, rho] + secular dissipator + dephasing. Only rho00 and rho01 are
// computed; rho10' = conj(rho01') and rho11' = -rho00' keep the state Hermitian
// with unit trace through every Runge-Kutta stage.
Trajectory evolve_density(const Mat2& rho0, const DensityModel& m, const SolverConfig& cfg,
                          const std::vector<double>& samples, Basis tag, Scenario scenario) {
    Trajectory traj;
    traj.basis_tag = tag;
    traj.scenario = scenario;

    auto rhs = [&](double t, const Rho4& y) -> Rho4 {
        const Mat2 rho = as_matrix(y);
        const Mat2 h = m.hamiltonian(t);
        const Mat2 c = cd(0.0, -1.0) * (h * rho - rho * h);
        double d00 = c(0, 0).real();
        cd d01 = c(0, 1);
        if (m.rates) {
            const RateSet r = m.rates(t);
            d00 += -r.gamma_e * y(0).real() + r.gamma_r * y(3).real();
            d01 -= r.gamma_2 * y(1);
        }
        d01 -= m.dephasing * y(1);
        return Rho4(cd(d00, 0.0), d01, std::conj(d01), cd(-d00, 0.0));
    };

    auto rates_at = [&](double t) { return m.rates ? m.rates(t) : RateSet{}; };
    auto record = [&](double t, const Rho4& y) {
        traj.push(t, QubitState(as_matrix(y)), rates_at(t));
    };
    auto on_step = [&](double t, const Rho4& y) {
        StepDiagnostics& d = traj.diagnostics;
        d.max_trace_dev = std::max(d.max_trace_dev, std::abs((y(0) + y(3)).real() - 1.0));
        const double herm = std::max({std::abs(y(2) - std::conj(y(1))), std::abs(y(0).imag()),
                                      std::abs(y(3).imag())});
        d.max_hermitian_dev = std::max(d.max_hermitian_dev, herm);
        if (m.rates && m.gap) track_rates(d, m.rates(t), m.gap(t), m.temperature);
        if (samples.empty()) record(t, y);
    };

    const Rho4 y0 = as_vector(rho0);
    if (samples.empty()) record(cfg.t_start, y0);
    const IntegrationStats st = integrate(rhs, y0, cfg, samples, record, on_step);
    traj.diagnostics.accepted = st.accepted;
    traj.diagnostics.rejected = st.rejected;
    return traj;
}

// A sweep that starts far from the crossing has a vanishing right-hand side, which
// lets the step size grow past the whole crossing region unless it is bounded.
SolverConfig bounded_for_sweep(SolverConfig cfg, const LZParams& p) {
    if (!std::isfinite(cfg.max_step)) cfg.max_step = 0.25 * p.delta / p.v;
    return cfg;
}

void warn_lz(Trajectory& traj, const LZParams& p, const BathSpec& bath, const SolverConfig& cfg) {
    if (p.beyond_truncation_accuracy())
        traj.warnings.push_back("v > Delta^2: rates are accurate only to O(v^2/Delta^4)");
    if (bath.e_cutoff && cfg.t_end < 3.0 * *bath.e_cutoff / p.v) {
        std::ostringstream os;
        os << "t_end = " << cfg.t_end << " < 3 E_c / v = " << 3.0 * *bath.e_cutoff / p.v
           << ": P_e may not be converged";
        traj.warnings.push_back(os.str());
    }
}

} // namespace

void StepDiagnostics::merge(const StepDiagnostics& o) {
    accepted += o.accepted;
    rejected += o.rejected;
    max_trace_dev = std::max(max_trace_dev, o.max_trace_dev);
    max_hermitian_dev = std::max(max_hermitian_dev, o.max_hermitian_dev);
    max_detailed_balance_rel = std::max(max_detailed_balance_rel, o.max_detailed_balance_rel);
}

Observables observables_of(const QubitState& s) {
    const Vec3 m = s.bloch();
    return {m.x(), m.y(), m.z(), s.population(1)};
}

void Trajectory::push(double t, const QubitState& s, const RateSet& r) {
    if (!times.empty() && !(t > times.back())) return;  // duplicate end point
    times.push_back(t);
    states.push_back(s);
    observables.push_back(observables_of(s));
    rates.push_back(r);
}

double detailed_balance_error(const RateSet& r, double gap, double temperature) {
    if (temperature == 0.0) return r.gamma_r > 0.0 ? r.gamma_e / r.gamma_r : r.gamma_e;
    if (!(r.gamma_r > 0.0)) return 0.0;
    const double expected = std::exp(-gap / temperature);
    if (expected == 0.0) return r.gamma_e;
    return std::abs(r.gamma_e / r.gamma_r - expected) / expected;
}

Trajectory evolve_br_secular(const QubitState& initial, const GapFn& gap, const RateFn& rates,
                             const SolverConfig& cfg, const std::vector<double>& samples,
                             std::optional<double> temperature) {
    Trajectory traj;
    traj.basis_tag = Basis::eigen;

    auto rhs = [&](double t, const Eigen::Vector3d& m) -> Eigen::Vector3d {
        const double w = gap(t);
        const RateSet r = rates(t);
        return {w * m.y() - r.gamma_2 * m.x(), -w * m.x() - r.gamma_2 * m.y(),
                (r.gamma_r - r.gamma_e) - (r.gamma_r + r.gamma_e) * m.z()};
    };
    auto record = [&](double t, const Eigen::Vector3d& m) {
        traj.push(t, density_of_bloch(m), rates(t));
    };
    auto on_step = [&](double t, const Eigen::Vector3d& m) {
        track_rates(traj.diagnostics, rates(t), gap(t), temperature);
        if (samples.empty()) record(t, m);
    };

    const Eigen::Vector3d m0 = initial.bloch();
    if (samples.empty()) record(cfg.t_start, m0);
    const IntegrationStats st = integrate(rhs, m0, cfg, samples, record, on_step);
    traj.diagnostics.accepted = st.accepted;
    traj.diagnostics.rejected = st.rejected;
    return traj;
}

QubitState thermal_lab_state(const FrameAngles& frame, double temperature, Basis level) {
    const double gap = level == Basis::adiabatic ? frame.e_gap : frame.w_gap;
    const double len = temperature == 0.0 ? 1.0 : std::tanh(gap / (2.0 * temperature));
    return density_of_bloch(len * control_field(frame).normalized());
}

Trajectory evolve_br_rotating(const RotatingFieldParams& p, CouplingMode mode,
                              const BathSpec& bath, const SolverConfig& cfg,
                              const std::vector<double>& samples, Basis level,
                              std::optional<QubitState> initial_lab) {
    p.validate();
    bath.validate();
    if (level == Basis::diabatic)
        throw ConfigError("rotating BR runs in the adiabatic or eigen basis");
    const FrameAngles f0 = rotating_frame(cfg.t_start, p);
    const QubitState lab0 = initial_lab ? *initial_lab : thermal_lab_state(f0, bath.temperature, level);
    const Mat2 u0 = frame_unitary(f0, level);
    const Mat2 rho0 = hermitian_part(u0 * lab0.rho() * u0.adjoint());

    RateFn rates = [=](double t) { return rotating_rates(mode, rotating_frame(t, p), bath, level); };
    Trajectory traj;
    if (level == Basis::eigen) {
        GapFn gap = [=](double t) { return rotating_frame(t, p).w_gap; };
        traj = evolve_br_secular(QubitState(rho0), gap, rates, cfg, samples, bath.temperature);
    } else {
        DensityModel m;
        m.hamiltonian = [=](double t) {
            return effective_hamiltonian(rotating_frame(t, p), Basis::adiabatic);
        };
        m.rates = rates;
        m.gap = [=](double t) { return rotating_frame(t, p).e_gap; };
        m.temperature = bath.temperature;
        traj = evolve_density(rho0, m, cfg, samples, Basis::adiabatic, Scenario::rotation);
    }
    traj.basis_tag = level;
    traj.scenario = Scenario::rotation;
    return traj;
}

Trajectory evolve_br_lz(const LZParams& p, LZKind kind, const BathSpec& bath,
                        const SolverConfig& cfg, const std::vector<double>& samples,
                        Basis level) {
    p.validate();
    bath.validate();
    if (level == Basis::diabatic)
        throw ConfigError("Landau-Zener BR runs in the adiabatic or eigen basis");
    DensityModel m;
    m.hamiltonian = [=](double t) { return effective_hamiltonian(lz_frame(t, p), level); };
    m.rates = [=](double t) { return lz_rates(kind, lz_frame(t, p), bath, level); };
    m.gap = [=](double t) {
        const FrameAngles f = lz_frame(t, p);
        return level == Basis::adiabatic ? f.e_gap : f.w_gap;
    };
    m.temperature = bath.temperature;
    Trajectory traj = evolve_density(QubitState::ground().rho(), m, bounded_for_sweep(cfg, p),
                                     samples, level, Scenario::landau_zener);
    warn_lz(traj, p, bath, cfg);
    return traj;
}

RateEquationResult evolve_rate_equation(const LZParams& p, LZKind kind, const BathSpec& bath,
                                        const SolverConfig& cfg,
                                        const std::vector<double>& samples) {
    p.validate();
    bath.validate();
    if (!(bath.temperature > 0.0))
        throw ConfigError("rate equation needs T > 0 (use the Bloch-Redfield sweep at T = 0)");
    const double temp = bath.temperature;

    RateEquationResult out;
    Trajectory& traj = out.trajectory;
    traj.basis_tag = Basis::eigen;
    traj.scenario = Scenario::landau_zener;

    using V1 = Eigen::Matrix<double, 1, 1>;
    auto rhs = [&](double t, const V1& y) -> V1 {
        const FrameAngles f = lz_frame(t, p);
        const double g0 = rate_equation_coefficient(kind, f, bath);
        return V1(g0 * (1.0 - y(0) / std::tanh(f.w_gap / (2.0 * temp))));
    };
    auto record = [&](double t, const V1& y) {
        traj.push(t, density_of_bloch(Vec3(0.0, 0.0, y(0))), lz_rates(kind, lz_frame(t, p), bath));
    };
    auto on_step = [&](double t, const V1& y) {
        const FrameAngles f = lz_frame(t, p);
        track_rates(traj.diagnostics, lz_rates(kind, f, bath), f.w_gap, temp);
        if (samples.empty()) record(t, y);
    };
    V1 y0(1.0);
    if (samples.empty()) record(cfg.t_start, y0);
    double m_end = 1.0;
    auto last = [&](double t, const V1& y) {
        on_step(t, y);
        m_end = y(0);
    };
    const IntegrationStats st =
        integrate(rhs, y0, bounded_for_sweep(cfg, p), samples, record, last);
    traj.diagnostics.accepted = st.accepted;
    traj.diagnostics.rejected = st.rejected;
    out.p_inf = 0.5 * (1.0 - m_end);
    warn_lz(traj, p, bath, cfg);
    return out;
}

Trajectory evolve_lindblad_dephasing(const LindbladScenario& sc, double gamma,
                                     const SolverConfig& cfg,
                                     const std::vector<double>& samples) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw ConfigError("dephasing rate gamma must be finite and >= 0");
    FrameFn frames;
    if (sc.scenario == Scenario::rotation) {
        sc.rotation.validate();
        frames = frame_provider(sc.rotation);
    } else {
        sc.lz.validate();
        frames = frame_provider(sc.lz);
    }
    const double s = sc.theta_dot_sign;
    DensityModel m;
    m.hamiltonian = [=](double t) {
        const FrameAngles f = frames(t);
        return Mat2(-0.5 * (f.e_gap * pauli::z() - s * f.theta_dot * pauli::y()));
    };
    m.dephasing = gamma;
    const SolverConfig run_cfg =
        sc.scenario == Scenario::landau_zener ? bounded_for_sweep(cfg, sc.lz) : cfg;
    Trajectory traj = evolve_density(QubitState::ground().rho(), m, run_cfg, samples,
                                     Basis::adiabatic, sc.scenario);
    for (RateSet& r : traj.rates) {
        r.gamma_2 = gamma;
        r.gamma_phi = gamma;
    }
    if (sc.scenario == Scenario::landau_zener && sc.lz.beyond_truncation_accuracy())
        traj.warnings.push_back("v > Delta^2: outside the slow-sweep regime");
    return traj;
}

std::pair<double, double> default_lz_window(const LZParams& p, const BathSpec& bath) {
    if (bath.e_cutoff) {
        const double t = 4.0 * *bath.e_cutoff / p.v;
        return {-t, t};
    }
    return {-200.0 / p.delta, 200.0 / p.delta};
}

FrameFn frame_provider(const RotatingFieldParams& p) {
    return [p](double t) { return rotating_frame(t, p); };
}

FrameFn frame_provider(const LZParams& p) {
    return [p](double t) { return lz_frame(t, p); };
}

Trajectory change_basis(const Trajectory& traj, const FrameFn& frames, Basis target) {
    Trajectory out = traj;
    out.basis_tag = target;
    if (traj.basis_tag == target) return out;
    out.states.clear();
    out.observables.clear();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const FrameAngles f = frames(traj.times[i]);
        if (traj.scenario && *traj.scenario != f.scenario)
            throw ConfigError("frame provider belongs to a different scenario than the trajectory");
        const Mat2 u_from = frame_unitary(f, traj.basis_tag);
        const Mat2 u_to = frame_unitary(f, target);
        const Mat2 w = u_to * u_from.adjoint();
        const QubitState s(hermitian_part(w * traj.states[i].rho() * w.adjoint()));
        out.states.push_back(s);
        out.observables.push_back(observables_of(s));
    }
    return out;
}

Trajectory lab_frame_observables(const Trajectory& traj, const FrameFn& frames) {
    Trajectory lab = change_basis(traj, frames, Basis::diabatic);
    const Trajectory adia = change_basis(traj, frames, Basis::adiabatic);
    const Trajectory eig = change_basis(traj, frames, Basis::eigen);
    lab.pe_by_basis.clear();
    for (std::size_t i = 0; i < lab.size(); ++i)
        lab.pe_by_basis.push_back(
            {lab.observables[i].pe, adia.observables[i].pe, eig.observables[i].pe});
    return lab;
}

double tail_mean_my(const Trajectory& traj, double t_from) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times[i] < t_from) continue;
        sum += traj.observables[i].my;
        ++n;
    }
    if (n == 0) throw ConfigError("tail_mean_my: no samples after the requested time");
    return sum / static_cast<double>(n);
}

} // namespace adiabr

// integrator.hpp: Explicit Runge-Kutta integrators for Eigen vector states
//
// Dormand-Prince 5(4) with error control and the 4th-order continuous extension
// for dense output, plus classical fixed-step RK4. Works for real and complex
// Eigen column vectors.

#pragma once

#include "adiabr/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace adiabr {

enum class Method { adaptive_rk, fixed_rk4 };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct SolverConfig {
    double rel_tol{1e-8};
    double abs_tol{1e-10};
    double max_step{std::numeric_limits<double>::infinity()};
    double initial_step{0.0};  // 0 selects a step from the initial slope
    double t_start{0.0};
    double t_end{1.0};
    Method method{Method::adaptive_rk};
    std::size_t max_steps{20'000'000};

    void validate() const;
};

struct IntegrationStats {
    std::size_t accepted{0};
    std::size_t rejected{0};
    std::size_t rhs_evaluations{0};
};

namespace detail {

template <class State>
double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    const auto scale = atol + rtol * y0.array().abs().max(y1.array().abs());
    return std::sqrt((err.array().abs() / scale).square().mean());
}

// Dormand-Prince tableau
struct DP45 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                            d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                            d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
};

} // namespace detail

// Continuous extension over one accepted step [t0, t0 + h].
template <class State>
class DenseStep {
public:
    DenseStep() = default;

    void build(double t0, double h, const State& y0, const State& y1, const State& k1,
               const State& k3, const State& k4, const State& k5, const State& k6,
               const State& k7) {
        using T = detail::DP45;
        t0_ = t0;
        h_ = h;
        r1_ = y0;
        r2_ = y1 - y0;
        r3_ = h * k1 - r2_;
        r4_ = r2_ - h * k7 - r3_;
        r5_ = h * (T::d1 * k1 + T::d3 * k3 + T::d4 * k4 + T::d5 * k5 + T::d6 * k6 + T::d7 * k7);
    }

    State operator()(double t) const {
        const double s = (t - t0_) / h_;
        const double s1 = 1.0 - s;
        return r1_ + s * (r2_ + s1 * (r3_ + s * (r4_ + s1 * r5_)));
    }

private:
    double t0_{0.0};
    double h_{1.0};
    State r1_, r2_, r3_, r4_, r5_;
};

// Integrates dy/dt = f(t, y) from cfg.t_start to cfg.t_end.
//
// on_sample(t, y) is called once for each requested sample time (ascending,
// inside [t_start, t_end]); on_step(t, y) after every accepted step.
template <class State, class Rhs, class SampleFn, class StepFn>
IntegrationStats integrate(Rhs&& f, State y, const SolverConfig& cfg,
                           std::span<const double> samples, SampleFn&& on_sample,
                           StepFn&& on_step) {
    cfg.validate();
    using T = detail::DP45;
    IntegrationStats stats;
    const double t_end = cfg.t_end;
    double t = cfg.t_start;
    std::size_t next = 0;

    auto emit_upto = [&](double t_hi, auto&& value_at) {
        while (next < samples.size() && samples[next] <= t_hi) {
            on_sample(samples[next], value_at(samples[next]));
            ++next;
        }
    };
    while (next < samples.size() && samples[next] < t) ++next;  // before the window
    emit_upto(t, [&](double) { return y; });

    if (cfg.method == Method::fixed_rk4) {
        const double h_nom = cfg.initial_step > 0.0 ? cfg.initial_step
                             : std::isfinite(cfg.max_step) ? cfg.max_step
                                                           : (t_end - t) / 1000.0;
        while (t < t_end) {
            double target = std::min(t + h_nom, t_end);
            if (next < samples.size() && samples[next] < target) target = samples[next];
            const double h = target - t;
            const State k1 = f(t, y);
            const State k2 = f(t + 0.5 * h, State(y + 0.5 * h * k1));
            const State k3 = f(t + 0.5 * h, State(y + 0.5 * h * k2));
            const State k4 = f(t + h, State(y + h * k3));
            stats.rhs_evaluations += 4;
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t = target;
            ++stats.accepted;
            if (!y.allFinite()) throw SolverError("non-finite state", t);
            on_step(t, y);
            emit_upto(t, [&](double) { return y; });
            if (stats.accepted > cfg.max_steps) throw SolverError("step budget exhausted", t);
        }
        return stats;
    }

    State k1 = f(t, y);
    ++stats.rhs_evaluations;
    double h = cfg.initial_step;
    if (!(h > 0.0)) {
        // Hairer-Wanner starting step
        const State zero = State::Zero(y.size());
        const double d0 = detail::error_norm(y, y, zero, cfg.abs_tol, cfg.rel_tol);
        const double d1 = detail::error_norm(k1, y, zero, cfg.abs_tol, cfg.rel_tol);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, t_end - t);
        const State y1 = y + h0 * k1;
        const State f1 = f(t + h0, y1);
        ++stats.rhs_evaluations;
        const double d2 = detail::error_norm(State(f1 - k1), y, zero, cfg.abs_tol, cfg.rel_tol) / h0;
        const double m = std::max(d1, d2);
        const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
        h = std::min(100.0 * h0, h1);
    }
    h = std::min(h, cfg.max_step);

    DenseStep<State> dense;
    bool last_rejected = false;
    while (t < t_end) {
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw SolverError("step size underflow (stiff or singular right-hand side)", t);
        const bool final_step = t + h >= t_end;
        if (final_step) h = t_end - t;

        const State k2 = f(t + T::c2 * h, State(y + h * (T::a21 * k1)));
        const State k3 = f(t + T::c3 * h, State(y + h * (T::a31 * k1 + T::a32 * k2)));
        const State k4 = f(t + T::c4 * h, State(y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3)));
        const State k5 = f(t + T::c5 * h, State(y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 +
                                                          T::a54 * k4)));
        const State k6 = f(t + h, State(y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 +
                                                 T::a64 * k4 + T::a65 * k5)));
        const State y_new =
            y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
        const State k7 = f(t + h, y_new);
        stats.rhs_evaluations += 6;

        const State err =
            h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
        const double en = detail::error_norm(err, y, y_new, cfg.abs_tol, cfg.rel_tol);
        if (!std::isfinite(en)) {
            ++stats.rejected;
            h *= 0.1;
            last_rejected = true;
            continue;
        }
        const double fac_max = last_rejected ? 1.0 : 5.0;
        const double fac = en == 0.0 ? fac_max
                                     : std::clamp(0.9 * std::pow(en, -0.2), 0.2, fac_max);
        if (en <= 1.0) {
            const double t_new = final_step ? t_end : t + h;
            dense.build(t, h, y, y_new, k1, k3, k4, k5, k6, k7);
            t = t_new;
            y = y_new;
            k1 = k7;
            ++stats.accepted;
            on_step(t, y);
            emit_upto(t, [&](double ts) { return ts == t ? y : dense(ts); });
            h = std::min(h * fac, cfg.max_step);
            last_rejected = false;
            if (stats.accepted > cfg.max_steps) throw SolverError("step budget exhausted", t);
        } else {
            ++stats.rejected;
            h *= fac;
            last_rejected = true;
        }
    }
    return stats;
}

// Uniform grid of n points over [t0, t1] (n == 1 gives {t1}).
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

} // namespace adiabr

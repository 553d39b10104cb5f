// analytics.cpp: Closed-form solutions, asymptotics and their quadrature oracles

#include "adiabr/analytics.hpp"

#include "adiabr/errors.hpp"
#include "adiabr/rates.hpp"
#include "adiabr/special.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace adiabr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Upper limit for integrals in u with s = Delta cosh u; every integrand has decayed
// to nothing long before cosh u overflows.
constexpr double kUMax = 50.0;

double sq(double x) { return x * x; }

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + " must be finite and > 0");
}

void require_non_negative(double x, const char* what) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + " must be finite and >= 0");
}

std::string fmt(const char* label, double value) {
    std::ostringstream os;
    os << label << " = " << value;
    return os.str();
}

// Instantaneous ingredients of the finite-temperature rate integrals at t >= 0.
struct RateIngredients {
    double w{0.0};
    double g{0.0};
};

// P = int_{-inf}^{inf} Ge(t) exp(-int_t^inf G0(t') coth(W/2T) dt') dt for integrands
// even in t. Uses t = (Delta / v) sinh u and A(-t) = 2 A(0) - A(t).
double finite_t_double_integral(const std::function<RateIngredients(double)>& at, double alpha,
                                double v, double delta, double temperature,
                                std::optional<double> e_cutoff) {
    const BathSpec bath{alpha, e_cutoff, temperature, 0.0};
    const double scale = delta / v;
    auto t_of = [&](double u) { return scale * std::sinh(u); };
    auto jac = [&](double u) { return scale * std::cosh(u); };
    auto relax = [&](double u) {
        const RateIngredients r = at(t_of(u));
        return 0.5 * r.g * ohmic_spectral_density(r.w, bath) / std::tanh(r.w / (2.0 * temperature)) *
               jac(u);
    };
    auto excite = [&](double u) {
        const RateIngredients r = at(t_of(u));
        return 0.5 * r.g * ohmic_spectral_density(r.w, bath) * planck_occupation(r.w, temperature) *
               jac(u);
    };
    auto tail = [&](double u0) { return integrate(relax, u0, kUMax, 1e-11).value; };
    const double a0 = tail(0.0);
    auto outer = [&](double u) {
        const double ge = excite(u);
        if (ge == 0.0) return 0.0;
        const double a = tail(u);
        return ge * (std::exp(-a) + std::exp(-(2.0 * a0 - a)));
    };
    return integrate(outer, 0.0, kUMax, 1e-9).value;
}

void check_weak_coupling(AsymptoticResult& r, double alpha) {
    if (alpha > 0.1) r.warnings.push_back(fmt("alpha is not small", alpha));
}

} // namespace

double ground_state_my(double theta_dot, double delta) {
    require_positive(delta, "delta");
    return -theta_dot / std::hypot(delta, theta_dot);
}

double berry_curvature(double delta) {
    require_positive(delta, "delta");
    return 1.0 / (2.0 * delta * delta);
}

double berry_phase_half_sphere(double delta) {
    return 2.0 * M_PI * delta * delta * berry_curvature(delta);
}

double closed_form_my(double t, const RotatingFieldParams& p, const BathSpec& bath) {
    p.validate();
    bath.validate();
    if (bath.j0 != 0.0) throw DomainError("closed_form_my assumes j0 = 0");
    const FrameAngles f = rotating_frame(0.0, p);
    const double g = rotating_rates(CouplingMode::perp_y, f, bath).total();
    const double m0 =
        bath.temperature == 0.0 ? 1.0 : std::tanh(f.w_gap / (2.0 * bath.temperature));
    return -m0 * std::sin(f.eta) *
           (1.0 - 2.0 * sq(std::sin(0.5 * f.eta)) * std::exp(-g * t) -
            std::cos(f.eta) * std::exp(-0.5 * g * t) * std::cos(f.w_gap * t));
}

double steady_state_my(const RotatingFieldParams& p, double temperature) {
    p.validate();
    require_non_negative(temperature, "temperature");
    const double w = std::hypot(p.delta, p.omega);
    const double m0 = temperature == 0.0 ? 1.0 : std::tanh(w / (2.0 * temperature));
    return -(p.omega / w) * m0;
}

double lz_ideal_probability(double v, double delta) {
    require_positive(v, "v");
    require_positive(delta, "delta");
    return std::exp(-M_PI * delta * delta / (2.0 * v));
}

Suppression lz_zero_T_suppression(double alpha, double v, double delta,
                                  std::optional<double> e_cutoff) {
    require_non_negative(alpha, "alpha");
    require_positive(v, "v");
    require_positive(delta, "delta");
    Suppression s;
    s.exponent = M_PI * alpha * delta * delta / v;
    if (alpha == 0.0) return s;
    if (!e_cutoff) {
        s.pi_factor = 0.0;
        return s;
    }
    require_positive(*e_cutoff, "e_cutoff");
    s.pi_factor = std::exp(-s.exponent * std::log(2.0 * *e_cutoff / (std::exp(kEulerGamma) * delta)));
    return s;
}

double lz_zero_T_probability(double alpha, double v, double delta, std::optional<double> e_cutoff,
                             std::optional<double> c) {
    const double cc = c ? *c : lz_ideal_probability(v, delta);
    return cc * lz_zero_T_suppression(alpha, v, delta, e_cutoff).pi_factor;
}

double power_law_asymptote(double t, double alpha, double v, double delta, double c) {
    require_positive(t, "t");
    const double k = M_PI * alpha * delta * delta / v;
    return c * std::exp(-k * std::log(v * t / delta));
}

double fit_power_law_constant(const std::vector<double>& t, const std::vector<double>& pe,
                              double alpha, double v, double delta) {
    if (t.size() != pe.size() || t.empty())
        throw DomainError("fit_power_law_constant: need matching, non-empty samples");
    const double k = M_PI * alpha * delta * delta / v;
    double sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        require_positive(t[i], "t");
        require_positive(pe[i], "pe");
        sum += std::log(pe[i]) + k * std::log(v * t[i] / delta);
    }
    return std::exp(sum / static_cast<double>(t.size()));
}

double log_log_slope(const std::vector<double>& t, const std::vector<double>& pe) {
    if (t.size() != pe.size() || t.size() < 2)
        throw DomainError("log_log_slope: need at least two matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        require_positive(t[i], "t");
        require_positive(pe[i], "pe");
        const double x = std::log(t[i]), y = std::log(pe[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double renormalized_gap(double alpha, double delta, double e_cutoff) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("renormalized_gap: need 0 <= alpha < 1");
    require_positive(delta, "delta");
    require_positive(e_cutoff, "e_cutoff");
    return delta * std::pow(delta / e_cutoff, alpha / (1.0 - alpha));
}

double strong_coupling_decay(double t, double alpha, double v, double delta, double e_cutoff,
                             double c_prime) {
    require_positive(alpha, "alpha");
    require_positive(t, "t");
    require_positive(v, "v");
    const double dr = renormalized_gap(alpha, delta, e_cutoff);
    const double k = M_PI * dr * dr / (4.0 * alpha * std::tgamma(2.0 * alpha) * v);
    return c_prime * std::exp(-k * std::pow(v * t / dr, 2.0 * alpha));
}

std::string_view to_string(AsymptoticMethod m) {
    switch (m) {
    case AsymptoticMethod::quadrature: return "quadrature";
    case AsymptoticMethod::low_t: return "lowT";
    case AsymptoticMethod::high_t: return "highT";
    case AsymptoticMethod::linear: return "linear";
    }
    return "?";
}

AsymptoticResult lz_finite_T_P(double alpha, double v, double delta, double temperature,
                               std::optional<double> e_cutoff, AsymptoticMethod method,
                               QuadratureModel model) {
    require_non_negative(alpha, "alpha");
    require_positive(v, "v");
    require_positive(delta, "delta");
    require_non_negative(temperature, "temperature");
    if (method == AsymptoticMethod::linear)
        throw ConfigError("the linear law exists only for the longitudinal coupling");

    AsymptoticResult r;
    check_weak_coupling(r, alpha);
    const double d_i1 = M_PI * M_PI * alpha * delta * temperature / v;
    if (d_i1 >= 1.0) {
        r.valid = false;
        r.warnings.push_back(fmt("delta I1 >= 1, outside the thermal-activation approximation", d_i1));
    } else if (alpha * temperature * delta / v > 0.1) {
        r.warnings.push_back(fmt("alpha T Delta / v is not small", alpha * temperature * delta / v));
    }
    if (!e_cutoff) r.warnings.push_back("infinite cutoff: relaxation suppresses P_inf to 0");
    if (temperature == 0.0 || alpha == 0.0) return r;

    const double pi_factor = lz_zero_T_suppression(alpha, v, delta, e_cutoff).pi_factor;
    switch (method) {
    case AsymptoticMethod::low_t:
        if (temperature > 0.3 * delta) r.warnings.push_back(fmt("T is not << Delta", temperature));
        r.value = (2.0 * M_PI * alpha * delta * delta / v) *
                  std::sqrt(M_PI * temperature / (2.0 * delta)) * std::exp(-delta / temperature) *
                  pi_factor;
        break;
    case AsymptoticMethod::high_t:
        if (temperature < 2.0 * delta) r.warnings.push_back(fmt("T is not >> Delta", temperature));
        r.value = (2.0 * M_PI * M_PI * alpha * temperature * delta / v) * pi_factor;
        break;
    case AsymptoticMethod::quadrature: {
        if (!e_cutoff) return r;
        const LZParams p{delta, v};
        std::function<RateIngredients(double)> at;
        if (model == QuadratureModel::derivation) {
            at = [=](double t) {
                const double e = std::hypot(delta, v * t);
                return RateIngredients{e, sq(delta / e)};
            };
        } else {
            at = [=](double t) {
                const FrameAngles f = lz_frame(t, p);
                return RateIngredients{f.w_gap, flip_weight(CouplingMode::inplane_z, f)};
            };
        }
        r.value = finite_t_double_integral(at, alpha, v, delta, temperature, e_cutoff);
        break;
    }
    case AsymptoticMethod::linear: break;
    }
    return r;
}

AsymptoticResult lz_longitudinal_P(double alpha, double v, double delta, double temperature,
                                   AsymptoticMethod method, std::optional<double> e_cutoff) {
    require_non_negative(alpha, "alpha");
    require_positive(v, "v");
    require_positive(delta, "delta");
    require_non_negative(temperature, "temperature");
    AsymptoticResult r;
    check_weak_coupling(r, alpha);
    const double x = alpha * temperature * v / (delta * delta * delta);
    switch (method) {
    case AsymptoticMethod::low_t:
        if (temperature > 0.3 * delta) r.warnings.push_back(fmt("T is not << Delta", temperature));
        if (temperature == 0.0) return r;
        r.value = alpha * v * std::sqrt(M_PI * M_PI * M_PI / (32.0 * temperature * delta * delta * delta)) *
                  std::exp(-delta / temperature) *
                  std::exp(-2.0 * M_PI * alpha * v / (3.0 * delta * delta));
        break;
    case AsymptoticMethod::high_t:
        if (temperature < 2.0 * delta) r.warnings.push_back(fmt("T is not >> Delta", temperature));
        r.value = 0.5 * (1.0 - std::exp(-0.75 * M_PI * M_PI * x));
        break;
    case AsymptoticMethod::linear:
        if (temperature < 2.0 * delta) r.warnings.push_back(fmt("T is not >> Delta", temperature));
        if (x > 0.05) r.warnings.push_back(fmt("alpha T v / Delta^3 is not small", x));
        r.value = 0.375 * M_PI * M_PI * x;
        break;
    case AsymptoticMethod::quadrature: {
        if (temperature == 0.0 || alpha == 0.0) return r;
        const LZParams p{delta, v};
        auto at = [=](double t) {
            const FrameAngles f = lz_frame(t, p);
            return RateIngredients{f.w_gap, sq(std::sin(f.eta))};
        };
        r.value = finite_t_double_integral(at, alpha, v, delta, temperature, e_cutoff);
        break;
    }
    }
    return r;
}

double LindbladRotationForms::envelope(double t) const {
    return amplitude * std::exp(-decay_rate * t);
}

LindbladRotationForms lindblad_rotation_forms(double delta, double omega, double gamma) {
    require_positive(delta, "delta");
    require_non_negative(omega, "omega");
    require_non_negative(gamma, "gamma");
    LindbladRotationForms f;
    f.quasistationary_my = -0.5 * omega * delta / (delta * delta + gamma * gamma);
    f.decay_rate = 2.0 * omega * omega * gamma / (omega * omega + delta * delta);
    f.amplitude = -omega / std::hypot(delta, omega);
    return f;
}

double lindblad_r(double x) {
    require_non_negative(x, "x");
    if (x < 0.02) {
        const double x2 = x * x;
        return x * (0.75 + x2 * (-0.625 + x2 * (35.0 / 64.0 - x2 * 63.0 / 128.0)));
    }
    const double root = std::sqrt(x * x + 1.0);
    return (2.0 + (x * x - 2.0) * root) / (x * x * x * root);
}

double lindblad_lz_P(double v, double delta, double gamma) {
    require_positive(v, "v");
    require_positive(delta, "delta");
    return 0.5 * (1.0 - std::exp(-(M_PI * v / (2.0 * delta * delta)) * lindblad_r(gamma / delta)));
}

double lindblad_lz_P_small_v(double v, double delta, double gamma) {
    require_positive(v, "v");
    require_positive(delta, "delta");
    return (M_PI * v / (4.0 * delta * delta)) * lindblad_r(gamma / delta);
}

double lindblad_lz_P_quadrature(double v, double delta, double gamma) {
    require_positive(v, "v");
    require_positive(delta, "delta");
    require_non_negative(gamma, "gamma");
    if (gamma == 0.0) return 0.0;
    const double scale = delta / v;
    auto f = [&](double u) {
        const double e2 = sq(delta * std::cosh(u));
        return v * v * delta * delta / (e2 * e2) / (gamma * gamma + e2) * scale * std::cosh(u);
    };
    const double exponent = 2.0 * gamma * integrate(f, 0.0, kUMax).value;
    return 0.5 * (1.0 - std::exp(-exponent));
}

double IntegralPair::rel_diff() const {
    if (quadrature == 0.0) return closed == 0.0 ? 0.0 : kInf;
    return std::abs(closed - quadrature) / std::abs(quadrature);
}

double bessel_k0_integral(double x) {
    require_positive(x, "x");
    return integrate([x](double u) { return std::exp(-x * std::cosh(u)); }, 0.0, kUMax, 1e-13).value;
}

CrossingIntegrals crossing_integrals(double alpha, double v, double delta, double temperature,
                                     std::optional<double> e_cutoff) {
    require_non_negative(alpha, "alpha");
    require_positive(v, "v");
    require_positive(delta, "delta");
    require_non_negative(temperature, "temperature");
    CrossingIntegrals out;
    const double pre = M_PI * alpha * delta * delta / v;
    const double temp = temperature;
    const bool hot = temp > 0.0;
    // s = Delta cosh u removes the 1/sqrt(s - Delta) endpoint singularity
    auto s_of = [delta](double u) { return delta * std::cosh(u); };
    auto cut = [&](double s) { return e_cutoff ? std::exp(-s / *e_cutoff) : 1.0; };

    if (e_cutoff) {
        const double k_cut = modified_bessel_k0(delta / *e_cutoff);
        const double k_t = hot ? modified_bessel_k0(delta / temp) : 0.0;
        const double q = pre * integrate([&](double u) {
                                   const double s = s_of(u);
                                   const double coth = hot ? 1.0 / std::tanh(s / (2.0 * temp)) : 1.0;
                                   return coth * cut(s);
                               }, 0.0, kUMax).value;
        out.i1_zero_k0 = {pre * (2.0 * k_t + k_cut), q};
        const double thermal = hot ? std::sqrt(2.0 * M_PI * temp / delta) * std::exp(-delta / temp) : 0.0;
        out.i1_zero_asym = {pre * (thermal + std::log(2.0 * *e_cutoff / delta) - kEulerGamma), q};
    } else {
        out.warnings.push_back("infinite cutoff: I1(0) diverges and is not evaluated");
    }

    if (hot) {
        const double q2 = 2.0 * pre * integrate([&](double u) {
                                          const double s = s_of(u);
                                          return cut(s) * planck_occupation(s, temp);
                                      }, 0.0, kUMax).value;
        out.i2_low_t = {2.0 * pre * modified_bessel_k0(delta / temp), q2};
        out.i2_low_t_asym = {2.0 * pre * std::sqrt(M_PI * temp / (2.0 * delta)) * std::exp(-delta / temp), q2};
        out.i2_high_t = {M_PI * M_PI * alpha * temp * delta / v, q2};
    }

    const double qd = pre * 2.0 * temp * integrate([&](double u) { return 1.0 / s_of(u); }, 0.0, kUMax).value;
    out.delta_i1 = {M_PI * M_PI * alpha * delta * temp / v, qd};
    if (out.delta_i1.closed >= 1.0)
        out.warnings.push_back(fmt("delta I1 >= 1, thermal-activation approximation not justified",
                                   out.delta_i1.closed));

    const LZParams p{delta, v};
    const double scale = delta / v;
    const double q3 = 2.0 * 2.0 * M_PI * alpha * temp * integrate([&](double u) {
                                                         const double t = scale * std::sinh(u);
                                                         const FrameAngles f = lz_frame(t, p);
                                                         const double e2 = f.e_gap * f.e_gap;
                                                         return v * v * delta * delta / (sq(f.w_gap) * e2 * e2) *
                                                                scale * std::cosh(u);
                                                     }, 0.0, kUMax).value;
    out.i3 = {0.75 * M_PI * M_PI * alpha * temp * v / (delta * delta * delta), q3};

    const double ql = M_PI * alpha * integrate([&](double u) {
                                           const double t = scale * std::sinh(u);
                                           const FrameAngles f = lz_frame(t, p);
                                           return f.w_gap * sq(std::sin(f.eta)) * scale * std::cosh(u);
                                       }, 0.0, kUMax).value;
    out.i1_longitudinal = {2.0 * M_PI * alpha * v / (3.0 * delta * delta), ql};
    return out;
}

} // namespace adiabr

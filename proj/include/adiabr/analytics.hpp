// analytics.hpp: Closed-form solutions, asymptotics and their quadrature oracles

#pragma once

#include "adiabr/frames.hpp"
#include "adiabr/qubit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adiabr {

// An asymptotic value with the regime checks made while computing it.
struct AsymptoticResult {
    double value{0.0};
    bool valid{true};
    std::vector<std::string> warnings;
};

// Lab m_y of the instantaneous ground state for a field turning at theta_dot.
double ground_state_my(double theta_dot, double delta);

double berry_curvature(double delta);
// Flux of the curvature through a half sphere of radius delta.
double berry_phase_half_sphere(double delta);

// Rotating field, perp-y coupling, thermal initial state (requires j0 = 0):
// m_y(t) = -m0 sin(eta) (1 - 2 sin^2(eta/2) e^{-G t} - cos(eta) e^{-G t/2} cos(W t)).
double closed_form_my(double t, const RotatingFieldParams& p, const BathSpec& bath);

// Stationary value -(Omega/W) tanh(W/2T).
double steady_state_my(const RotatingFieldParams& p, double temperature);

// exp(-pi Delta^2 / 2v).
double lz_ideal_probability(double v, double delta);

struct Suppression {
    double exponent{0.0};  // pi alpha Delta^2 / v
    double pi_factor{1.0}; // exp(-exponent ln(2 E_c / (e^gamma Delta)))
};

// With an infinite cutoff pi_factor is 0 for alpha > 0.
Suppression lz_zero_T_suppression(double alpha, double v, double delta,
                                  std::optional<double> e_cutoff);

// P_inf(T = 0) = C Pi with C = exp(-pi Delta^2/2v) unless given.
double lz_zero_T_probability(double alpha, double v, double delta, std::optional<double> e_cutoff,
                             std::optional<double> c = std::nullopt);

// C (v t / Delta)^(-pi alpha Delta^2 / v)
double power_law_asymptote(double t, double alpha, double v, double delta, double c);

// Least-squares C for the power law over the given samples (t > 0, pe > 0).
double fit_power_law_constant(const std::vector<double>& t, const std::vector<double>& pe,
                              double alpha, double v, double delta);

// Least-squares slope of ln pe against ln t.
double log_log_slope(const std::vector<double>& t, const std::vector<double>& pe);

// Delta_r = Delta (Delta / E_c)^{alpha / (1 - alpha)}, 0 <= alpha < 1, finite cutoff.
double renormalized_gap(double alpha, double delta, double e_cutoff);

// rho_11(t) = C' exp(-pi Delta_r^2 / (4 alpha Gamma(2 alpha) v) (v t / Delta_r)^{2 alpha}).
double strong_coupling_decay(double t, double alpha, double v, double delta, double e_cutoff,
                             double c_prime = 1.0);

enum class AsymptoticMethod { quadrature, low_t, high_t, linear };

std::string_view to_string(AsymptoticMethod m);

// Which approximations enter the quadrature of the finite-temperature integral.
enum class QuadratureModel {
    derivation,  // W ~ E, G ~ Delta^2 / E^2 (the ingredients of the closed forms)
    exact        // W, G from the transformed frame
};

// Transverse coupling at T > 0 (linear is not available here).
AsymptoticResult lz_finite_T_P(double alpha, double v, double delta, double temperature,
                               std::optional<double> e_cutoff, AsymptoticMethod method,
                               QuadratureModel model = QuadratureModel::derivation);

// Longitudinal coupling; the cutoff only enters the quadrature.
AsymptoticResult lz_longitudinal_P(double alpha, double v, double delta, double temperature,
                                   AsymptoticMethod method,
                                   std::optional<double> e_cutoff = std::nullopt);

struct LindbladRotationForms {
    double quasistationary_my{0.0};  // -(Omega/2) Delta / (Delta^2 + gamma^2)
    double decay_rate{0.0};          // 2 Omega^2 gamma / (Omega^2 + Delta^2)
    double amplitude{0.0};           // -Omega / W

    double envelope(double t) const;
};

LindbladRotationForms lindblad_rotation_forms(double delta, double omega, double gamma);

// R(x) = (2 + (x^2 - 2) sqrt(x^2 + 1)) / (x^3 sqrt(x^2 + 1)); series near 0.
double lindblad_r(double x);

// P = (1 - exp(-(pi v / 2 Delta^2) R(gamma / Delta))) / 2
double lindblad_lz_P(double v, double delta, double gamma);
// First order in v: (pi v / 4 Delta^2) R(gamma / Delta).
double lindblad_lz_P_small_v(double v, double delta, double gamma);
// The same exponent by direct quadrature over time.
double lindblad_lz_P_quadrature(double v, double delta, double gamma);

struct IntegralPair {
    double closed{0.0};
    double quadrature{0.0};

    double rel_diff() const;
};

struct CrossingIntegrals {
    IntegralPair i1_zero_k0;      // (pi alpha Delta^2 / v)[2 K0(Delta/T) + K0(Delta/E_c)]
    IntegralPair i1_zero_asym;    // with the small/large-argument forms of K0
    IntegralPair i2_low_t;        // (2 pi alpha Delta^2 / v) K0(Delta/T)
    IntegralPair i2_low_t_asym;   // (2 pi alpha Delta^2 / v) sqrt(pi T / 2 Delta) e^{-Delta/T}
    IntegralPair i2_high_t;       // pi^2 alpha T Delta / v
    IntegralPair delta_i1;        // pi^2 alpha Delta T / v
    IntegralPair i3;              // (3 pi^2 / 4) alpha T v / Delta^3
    IntegralPair i1_longitudinal; // 2 pi alpha v / (3 Delta^2)
    std::vector<std::string> warnings;
};

// Every entry is evaluated at the given point; the caller picks the entries whose
// regime the point belongs to. Integrals needing a cutoff use e_cutoff (infinite
// cutoff leaves those entries at zero with a warning).
CrossingIntegrals crossing_integrals(double alpha, double v, double delta, double temperature,
                                     std::optional<double> e_cutoff);

// K0 via its integral representation: int_0^inf exp(-x cosh u) du.
double bessel_k0_integral(double x);

} // namespace adiabr

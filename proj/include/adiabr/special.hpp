// special.hpp: Special functions and adaptive quadrature helpers

#pragma once

#include <functional>

namespace adiabr {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Modified Bessel function of the second kind, order 0 (x > 0).
double modified_bessel_k0(double x);

struct QuadratureResult {
    double value{0.0};
    double error{0.0};
};

// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10);

} // namespace adiabr

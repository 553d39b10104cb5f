// special.cpp: Special functions and adaptive quadrature helpers

#include "adiabr/special.hpp"

#include "adiabr/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

namespace adiabr {

double modified_bessel_k0(double x) {
    if (!(x > 0.0)) throw DomainError("modified_bessel_k0: x must be > 0");
    return boost::math::cyl_bessel_k(0, x);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
    if (!(b > a)) throw DomainError("integrate: empty interval");
    QuadratureResult r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol,
                                                                             &r.error);
    if (!std::isfinite(r.value)) throw DomainError("integrate: non-finite result");
    return r;
}

} // namespace adiabr

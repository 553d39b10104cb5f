// integrator.cpp: Solver configuration helpers

#include "adiabr/integrator.hpp"

#include <string>

namespace adiabr {

std::string_view to_string(Method m) {
    return m == Method::adaptive_rk ? "adaptive_rk" : "fixed_rk4";
}

Method method_from_string(std::string_view name) {
    if (name == "adaptive_rk" || name == "adaptive") return Method::adaptive_rk;
    if (name == "fixed_rk4" || name == "rk4") return Method::fixed_rk4;
    throw ConfigError("unknown solver method '" + std::string(name) +
                      "' (expected adaptive_rk or fixed_rk4)");
}

void SolverConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ConfigError("solver tolerances must be > 0");
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start))
        throw ConfigError("solver window requires finite t_start < t_end");
    if (!(max_step > 0.0))
        throw ConfigError("max_step must be > 0");
    if (initial_step < 0.0 || !std::isfinite(initial_step))
        throw ConfigError("initial_step must be finite and >= 0");
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
    std::vector<double> grid;
    if (n == 0) return grid;
    if (n == 1) return {t1};
    grid.reserve(n);
    const double dt = (t1 - t0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) grid.push_back(t0 + dt * static_cast<double>(i));
    grid.push_back(t1);
    return grid;
}

} // namespace adiabr

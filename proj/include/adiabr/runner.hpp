// runner.hpp: Executes configured runs and sweeps and writes CSV or JSON tables

#pragma once

#include "adiabr/config.hpp"
#include "adiabr/dynamics.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace adiabr {

struct RunResult {
    RunConfig config;       // resolved
    Trajectory trajectory;  // in config.basis
    std::optional<double> p_inf;
};

// Validates, propagates and re-expresses the trajectory in the requested basis.
RunResult run_scenario(const RunConfig& cfg);

struct SweepPoint {
    double value{0.0};
    bool ok{false};
    std::string error;
    Trajectory trajectory;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepPoint> points;  // ascending in the swept value
};

// Points run on a pool of worker threads; each failure is kept in its row.
SweepResult run_sweep(const SweepConfig& cfg);

nlohmann::json versions();

// CSV columns t,mx,my,mz,pe,gamma_r,gamma_e,gamma_2 with 15 significant digits.
void write_run(std::ostream& os, const RunResult& r, OutputFormat format);
void write_sweep(std::ostream& os, const SweepResult& r, OutputFormat format);

// Formats x with 15 significant digits ("nan" for NaN).
std::string format_number(double x);

} // namespace adiabr

// checks.hpp: Catalog of numerics-versus-analytics acceptance checks

#pragma once

#include "adiabr/dynamics.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace adiabr {

struct Measurement {
    std::string label;
    double observed{0.0};
    double expected{0.0};
    double tolerance{0.0};
    bool relative{false};
    bool pass{false};
    bool informational{false};  // reported but not part of the verdict
};

struct CheckReport {
    std::string id;
    int criterion{0};
    std::string title;
    std::vector<Measurement> measurements;
    StepDiagnostics diagnostics;  // merged over every propagation of the check
    std::vector<std::string> notes;

    bool passed() const;
};

struct CheckInfo {
    std::string id;
    int criterion{0};
    std::string title;
    std::function<CheckReport()> run;
};

// Thresholds applied to every accepted step by the invariants check.
inline constexpr double kTraceLimit = 1e-9;
inline constexpr double kHermitianLimit = 1e-12;
inline constexpr double kDetailedBalanceLimit = 1e-12;

const std::vector<CheckInfo>& check_catalog();

// Throws ConfigError listing the available ids.
const CheckInfo& find_check(std::string_view id);

// Criterion built from the step diagnostics of the given reports.
CheckReport invariants_report(const std::vector<CheckReport>& reports);

// Runs the named checks in catalog order; "invariants" runs every propagating
// check it needs.
std::vector<CheckReport> run_checks(const std::vector<std::string>& ids);

nlohmann::json to_json(const CheckReport& r);

// Six significant digits, for labels and notes.
std::string format_double(double x);

} // namespace adiabr

// acceptance.cpp: Runs the acceptance checks and prints one verdict line per criterion
//
// Usage: adiabr_acceptance [criterion ...]   (default: all)
// Exit status is 0 only when every requested criterion passes.

#include "adiabr/checks.hpp"
#include "adiabr/runner.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

using namespace adiabr;

namespace {

std::string describe(const Measurement& m) {
    std::string s = m.label + ": " + format_number(m.observed);
    if (m.expected == 0.0 && !m.relative)
        s += " < " + format_number(m.tolerance);
    else
        s += " vs " + format_number(m.expected) + (m.relative ? " (rel tol " : " (abs tol ") +
             format_number(m.tolerance) + ")";
    if (m.informational) s += " [info]";
    else if (!m.pass) s += " [FAIL]";
    return s;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        bool found = false;
        for (const CheckInfo& c : check_catalog()) {
            if (c.criterion == n || c.id == argv[i]) {
                ids.push_back(c.id);
                found = true;
            }
        }
        if (!found) {
            std::cerr << "unknown criterion '" << argv[i] << "'\n";
            return 2;
        }
    }
    if (ids.empty())
        for (const CheckInfo& c : check_catalog()) ids.push_back(c.id);

    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckReport> reports;
    try {
        reports = run_checks(ids);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    int failed = 0;
    for (const CheckReport& r : reports) {
        const bool ok = r.passed();
        failed += ok ? 0 : 1;
        std::printf("criterion %2d %-22s %s  %s\n", r.criterion, r.id.c_str(), ok ? "PASS" : "FAIL",
                    r.title.c_str());
        for (const Measurement& m : r.measurements) std::printf("    %s\n", describe(m).c_str());
        for (const auto& n : r.notes) std::printf("    note: %s\n", n.c_str());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu criteria, %d failed, %.1f s\n", reports.size(), failed, secs);
    return failed == 0 ? 0 : 1;
}

// adiabr_cli.cpp: Command-line front end: runs, sweeps and oracle checks
//
// Configuration precedence, lowest first: built-in defaults, --preset, --config,
// command-line flags. Output goes to --output, else to $ADIABR_OUTPUT_DIR/<name>.<ext>,
// else to stdout. Exit codes: 0 success, 1 configuration error, 2 solver error.

#include "adiabr/checks.hpp"
#include "adiabr/config.hpp"
#include "adiabr/errors.hpp"
#include "adiabr/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace adiabr;
using json = nlohmann::json;

namespace {

constexpr int kConfigError = 1;
constexpr int kSolverError = 2;

// Physics and solver flags shared by the run and sweep subcommands; unset flags
// leave the file or preset value alone.
struct RunFlags {
    std::optional<double> omega, v, alpha, temp, j0, gamma, lambda, kappa, omega0;
    std::optional<std::string> ec, coupling, basis, model, format;
    std::optional<double> t_start, t_final, rel_tol, abs_tol, max_step;
    std::optional<std::size_t> samples, n_fock, max_steps;
    std::optional<std::string> output, config, preset;

    void attach(CLI::App* app) {
        app->add_option("--omega", omega, "rotation frequency");
        app->add_option("--v", v, "level velocity");
        app->add_option("--alpha", alpha, "dimensionless coupling");
        app->add_option("--temp", temp, "bath temperature");
        app->add_option("--ec", ec, "bath cutoff energy (number or inf)");
        app->add_option("--j0", j0, "low-frequency dephasing weight");
        app->add_option("--gamma", gamma, "Lindblad dephasing rate");
        app->add_option("--lambda", lambda, "qubit-oscillator coupling");
        app->add_option("--kappa", kappa, "oscillator damping");
        app->add_option("--omega0", omega0, "oscillator frequency");
        app->add_option("--n-fock", n_fock, "initial Fock truncation");
        app->add_option("--coupling", coupling, "perp-y | inplane-z | longitudinal");
        app->add_option("--basis", basis, "diabatic | adiabatic | eigen");
        app->add_option("--model", model, "Landau-Zener model: br | rate");
        app->add_option("--t-start", t_start, "start time");
        app->add_option("--t-final", t_final, "final time");
        app->add_option("--samples", samples, "number of output samples");
        app->add_option("--rel-tol", rel_tol, "relative tolerance");
        app->add_option("--abs-tol", abs_tol, "absolute tolerance");
        app->add_option("--max-step", max_step, "largest step (0 = unlimited)");
        app->add_option("--max-steps", max_steps, "step budget");
        app->add_option("--output", output, "output file");
        app->add_option("--format", format, "csv | json");
        app->add_option("--config", config, "JSON config file");
        app->add_option("--preset", preset, "named preset (fig1 ... fig14)");
    }

    json as_json() const {
        json j = json::object();
        const auto put = [&](const char* key, const auto& opt) {
            if (opt) j[key] = *opt;
        };
        put("omega", omega);
        put("v", v);
        put("alpha", alpha);
        put("temp", temp);
        put("ec", ec);
        put("j0", j0);
        put("gamma", gamma);
        put("lambda", lambda);
        put("kappa", kappa);
        put("omega0", omega0);
        put("n_fock", n_fock);
        put("coupling", coupling);
        put("basis", basis);
        put("model", model);
        put("t_start", t_start);
        put("t_final", t_final);
        put("samples", samples);
        put("rel_tol", rel_tol);
        put("abs_tol", abs_tol);
        put("max_step", max_step);
        put("max_steps", max_steps);
        put("output", output);
        put("format", format);
        if (j.contains("ec")) {
            const std::string s = j["ec"];
            if (s != "inf" && s != "infinity") {
                try {
                    std::size_t used = 0;
                    const double x = std::stod(s, &used);
                    if (used != s.size()) throw std::invalid_argument(s);
                    j["ec"] = x;
                } catch (const std::exception&) {
                    throw ConfigError("--ec: expected a number or inf, got '" + s + "'");
                }
            }
        }
        return j;
    }
};

// Layers preset, file and flags; a scenario fixed by the subcommand must agree
// with the files.
void layer(RunConfig& cfg, SweepConfig* sweep, const RunFlags& f, std::optional<ScenarioKind> fixed) {
    std::vector<std::pair<std::string, json>> layers;
    if (f.preset) layers.emplace_back("preset " + *f.preset, read_config_file(preset_path(*f.preset)));
    if (f.config) layers.emplace_back(*f.config, read_config_file(*f.config));
    for (const auto& [origin, j] : layers) {
        try {
            apply_json(cfg, j, sweep);
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ": " + e.what());
        }
        if (fixed && j.contains("scenario") && cfg.scenario != *fixed)
            throw ConfigError(origin + ": scenario '" + std::string(to_string(cfg.scenario)) +
                              "' conflicts with subcommand '" + std::string(to_string(*fixed)) + "'");
    }
    if (fixed) cfg.scenario = *fixed;
    apply_json(cfg, f.as_json());
}

// Opens the destination or returns nullptr for stdout.
std::unique_ptr<std::ofstream> open_output(const std::string& explicit_path, const std::string& name,
                                           OutputFormat format) {
    std::filesystem::path path = explicit_path;
    if (path.empty()) {
        const char* dir = std::getenv("ADIABR_OUTPUT_DIR");
        if (!dir || !*dir) return nullptr;
        path = std::filesystem::path(dir) / (name + "." + std::string(to_string(format)));
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto out = std::make_unique<std::ofstream>(path);
    if (!*out) throw ConfigError("cannot open output file '" + path.string() + "'");
    return out;
}

template <class Write>
void emit(const std::string& explicit_path, const std::string& name, OutputFormat format, Write&& write) {
    const auto file = open_output(explicit_path, name, format);
    write(file ? static_cast<std::ostream&>(*file) : std::cout);
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int run_command(const RunFlags& f, ScenarioKind scenario) {
    RunConfig cfg;
    layer(cfg, nullptr, f, scenario);
    const RunResult r = run_scenario(cfg);
    print_warnings(r.trajectory.warnings);
    emit(cfg.output, std::string(to_string(scenario)), cfg.format,
         [&](std::ostream& os) { write_run(os, r, cfg.format); });
    return 0;
}

struct SweepFlags {
    std::optional<std::string> scenario, param, values, reduction;
    std::optional<std::size_t> threads;

    void attach(CLI::App* app) {
        app->add_option("--scenario", scenario, "scenario to sweep");
        app->add_option("--param", param, "swept parameter");
        app->add_option("--values", values, "a,b,c | a..b:step | a..b (empty = no points)");
        app->add_option("--reduction", reduction, "final_pe | final_my | full_trajectory");
        app->add_option("--threads", threads, "worker threads (0 = all cores)");
    }
};

int sweep_command(const RunFlags& f, const SweepFlags& s) {
    SweepConfig sweep;
    std::optional<ScenarioKind> fixed;
    if (s.scenario) fixed = scenario_kind_from_string(*s.scenario);
    layer(sweep.base, &sweep, f, fixed);
    if (s.param) sweep.param = *s.param;
    if (s.values) sweep.values = parse_value_list(*s.values);
    if (s.reduction) sweep.reduction = reduction_from_string(*s.reduction);
    if (s.threads) sweep.threads = *s.threads;
    if (sweep.param.empty()) throw ConfigError("sweep: --param is required");
    const SweepResult r = run_sweep(sweep);
    for (const SweepPoint& p : r.points)
        if (!p.ok) std::cerr << "error: " << sweep.param << '=' << format_number(p.value) << ": " << p.error << '\n';
    const std::string name = "sweep-" + std::string(to_string(sweep.base.scenario)) + "-" + sweep.param;
    emit(sweep.base.output, name, sweep.base.format,
         [&](std::ostream& os) { write_sweep(os, r, sweep.base.format); });
    return 0;
}

int oracle_command(std::vector<std::string> ids, const std::string& output, const std::string& format_name) {
    const OutputFormat format = output_format_from_string(format_name);
    if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) {
        ids.clear();
        for (const CheckInfo& c : check_catalog()) ids.push_back(c.id);
    }
    for (const auto& id : ids) find_check(id);
    const std::vector<CheckReport> reports = run_checks(ids);
    emit(output, "oracle-check", format, [&](std::ostream& os) {
        if (format == OutputFormat::json) {
            json j{{"checks", json::array()}, {"versions", versions()}};
            for (const CheckReport& r : reports) j["checks"].push_back(to_json(r));
            os << j.dump(2) << '\n';
            return;
        }
        os << "check,criterion,label,observed,expected,tolerance,relative,informational,verdict\n";
        for (const CheckReport& r : reports)
            for (const Measurement& m : r.measurements)
                os << r.id << ',' << r.criterion << ",\"" << m.label << "\"," << format_number(m.observed) << ','
                   << format_number(m.expected) << ',' << format_number(m.tolerance) << ','
                   << (m.relative ? "true" : "false") << ',' << (m.informational ? "true" : "false") << ','
                   << (m.pass ? "pass" : "fail") << '\n';
    });
    for (const CheckReport& r : reports)
        std::cerr << r.id << ": " << (r.passed() ? "pass" : "fail") << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open two-level system dynamics under time-dependent control fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ADIABR_VERSION));

    const std::vector<ScenarioKind> scenarios{ScenarioKind::rotate, ScenarioKind::lz, ScenarioKind::oscillator,
                                              ScenarioKind::lindblad_rotate, ScenarioKind::lindblad_lz};
    const std::vector<std::string> descriptions{
        "rotating control field, Bloch-Redfield", "Landau-Zener sweep (BR or rate equation)",
        "rotating field coupled to a damped oscillator", "rotating field, Lindblad dephasing",
        "Landau-Zener sweep, Lindblad dephasing"};
    std::vector<RunFlags> run_flags(scenarios.size());
    std::vector<CLI::App*> run_apps;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        CLI::App* sub = app.add_subcommand(std::string(to_string(scenarios[i])), descriptions[i]);
        run_flags[i].attach(sub);
        run_apps.push_back(sub);
    }

    RunFlags sweep_run;
    SweepFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over one scenario");
    sweep_run.attach(sweep);
    sweep_flags.attach(sweep);

    std::vector<std::string> check_ids;
    std::string check_output;
    std::string check_format = "json";
    CLI::App* oracle = app.add_subcommand("oracle-check", "run named acceptance checks (or all)");
    oracle->add_option("checks", check_ids, "check ids");
    oracle->add_option("--output", check_output, "report file");
    oracle->add_option("--format", check_format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        for (std::size_t i = 0; i < scenarios.size(); ++i)
            if (run_apps[i]->parsed()) return run_command(run_flags[i], scenarios[i]);
        if (sweep->parsed()) return sweep_command(sweep_run, sweep_flags);
        if (oracle->parsed()) return oracle_command(check_ids, check_output, check_format);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverError;
    } catch (const TruncationError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    return 0;
}

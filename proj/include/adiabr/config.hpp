// config.hpp: Run and sweep configuration: JSON files, presets and validation
//
// Precedence, lowest first: built-in defaults, preset, config file, command-line
// flags. Keys left unset are resolved per scenario by RunConfig::resolved().

#pragma once

#include "adiabr/integrator.hpp"
#include "adiabr/qubit.hpp"
#include "adiabr/frames.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adiabr {

enum class ScenarioKind { rotate, lz, oscillator, lindblad_rotate, lindblad_lz };

std::string_view to_string(ScenarioKind s);
ScenarioKind scenario_kind_from_string(std::string_view name);

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat f);
OutputFormat output_format_from_string(std::string_view name);

// Landau-Zener propagation model.
enum class LZModel { br, rate };

std::string_view to_string(LZModel m);
LZModel lz_model_from_string(std::string_view name);

struct RunConfig {
    ScenarioKind scenario{ScenarioKind::rotate};
    double omega{0.1};
    double v{0.5};
    double alpha{0.05};
    double temp{0.0};
    std::optional<double> ec{10.0};  // empty = infinite cutoff
    double j0{0.0};
    double gamma{0.0};
    double lambda{0.1};
    double kappa{0.2};
    double omega0{1.0};
    std::size_t n_fock{10};
    std::optional<CouplingMode> coupling;
    std::optional<Basis> basis;
    LZModel model{LZModel::br};
    std::optional<double> t_start;
    std::optional<double> t_final;
    std::size_t samples{401};
    double rel_tol{1e-8};
    double abs_tol{1e-10};
    double max_step{0.0};  // 0 = unlimited
    std::size_t max_steps{20'000'000};
    std::string output;    // empty = default location
    OutputFormat format{OutputFormat::csv};

    // Fills coupling, basis and the time window from the scenario defaults.
    RunConfig resolved() const;
    void validate() const;
    SolverConfig solver() const;
    std::vector<double> sample_grid() const;
    BathSpec bath() const;
};

enum class Reduction { final_pe, final_my, full_trajectory };

std::string_view to_string(Reduction r);
Reduction reduction_from_string(std::string_view name);

struct SweepConfig {
    RunConfig base;
    std::string param;
    std::vector<double> values;
    Reduction reduction{Reduction::final_pe};
    std::size_t threads{0};  // 0 = hardware concurrency

    void validate() const;
};

// Names of the parameters a sweep may vary in the given scenario.
std::vector<std::string> sweepable_parameters(ScenarioKind s);
void set_parameter(RunConfig& cfg, std::string_view name, double value);

// "0,0.5,1" or "a..b:step" (inclusive) or "a..b" (11 points).
std::vector<double> parse_value_list(std::string_view text);

// Applies the keys of a JSON object onto cfg; unknown keys and bad values raise
// ConfigError naming the field. A "sweep" object is applied to sweep when given
// and rejected otherwise.
void apply_json(RunConfig& cfg, const nlohmann::json& j, SweepConfig* sweep = nullptr);

// Reads a JSON config file; parse errors report the line.
nlohmann::json read_config_file(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const SweepConfig& cfg);

// Directory holding fig1.json ... fig14.json (ADIABR_PRESET_DIR overrides).
std::filesystem::path preset_directory();
std::filesystem::path preset_path(std::string_view name);

} // namespace adiabr

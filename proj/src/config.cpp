// config.cpp: Run and sweep configuration: JSON files, presets and validation

#include "adiabr/config.hpp"

#include "adiabr/dynamics.hpp"
#include "adiabr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#ifndef ADIABR_PRESET_DIR_DEFAULT
#define ADIABR_PRESET_DIR_DEFAULT "presets"
#endif

namespace adiabr {

namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(std::string_view key, const std::string& what) {
    throw ConfigError("field '" + std::string(key) + "': " + what);
}

double number(std::string_view key, const json& v) {
    if (!v.is_number()) field_error(key, "expected a number, got " + v.dump());
    const double x = v.get<double>();
    if (!std::isfinite(x)) field_error(key, "must be finite");
    return x;
}

std::size_t count(std::string_view key, const json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        field_error(key, "expected a non-negative integer, got " + v.dump());
    return v.get<std::size_t>();
}

std::string text(std::string_view key, const json& v) {
    if (!v.is_string()) field_error(key, "expected a string, got " + v.dump());
    return v.get<std::string>();
}

template <class F>
auto parsed(std::string_view key, const json& v, F&& from_string) {
    try {
        return from_string(text(key, v));
    } catch (const ConfigError& e) {
        field_error(key, e.what());
    }
}

std::optional<double> cutoff(std::string_view key, const json& v) {
    if (v.is_null()) return std::nullopt;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::nullopt;
        field_error(key, "expected a number or \"inf\", got " + v.dump());
    }
    return number(key, v);
}

void require(bool ok, std::string_view key, const std::string& what) {
    if (!ok) field_error(key, what);
}

bool is_rotation(ScenarioKind s) {
    return s == ScenarioKind::rotate || s == ScenarioKind::oscillator ||
           s == ScenarioKind::lindblad_rotate;
}

} // namespace

std::string_view to_string(ScenarioKind s) {
    switch (s) {
    case ScenarioKind::rotate: return "rotate";
    case ScenarioKind::lz: return "lz";
    case ScenarioKind::oscillator: return "oscillator";
    case ScenarioKind::lindblad_rotate: return "lindblad-rotate";
    case ScenarioKind::lindblad_lz: return "lindblad-lz";
    }
    return "?";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
    for (ScenarioKind s : {ScenarioKind::rotate, ScenarioKind::lz, ScenarioKind::oscillator,
                           ScenarioKind::lindblad_rotate, ScenarioKind::lindblad_lz})
        if (name == to_string(s)) return s;
    throw ConfigError("unknown scenario '" + std::string(name) +
                      "' (expected rotate, lz, oscillator, lindblad-rotate or lindblad-lz)");
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view to_string(LZModel m) { return m == LZModel::br ? "br" : "rate"; }

LZModel lz_model_from_string(std::string_view name) {
    if (name == "br") return LZModel::br;
    if (name == "rate") return LZModel::rate;
    throw ConfigError("unknown model '" + std::string(name) + "' (expected br or rate)");
}

std::string_view to_string(Reduction r) {
    switch (r) {
    case Reduction::final_pe: return "final_pe";
    case Reduction::final_my: return "final_my";
    case Reduction::full_trajectory: return "full_trajectory";
    }
    return "?";
}

Reduction reduction_from_string(std::string_view name) {
    if (name == "final_pe" || name == "final_Pe") return Reduction::final_pe;
    if (name == "final_my") return Reduction::final_my;
    if (name == "full_trajectory") return Reduction::full_trajectory;
    throw ConfigError("unknown reduction '" + std::string(name) +
                      "' (expected final_pe, final_my or full_trajectory)");
}

BathSpec RunConfig::bath() const { return BathSpec{alpha, ec, temp, j0}; }

RunConfig RunConfig::resolved() const {
    RunConfig r = *this;
    if (!r.coupling) {
        r.coupling = scenario == ScenarioKind::lz ? CouplingMode::inplane_z : CouplingMode::perp_y;
    }
    if (!r.basis) {
        switch (scenario) {
        case ScenarioKind::lz: r.basis = Basis::eigen; break;
        case ScenarioKind::lindblad_lz: r.basis = Basis::adiabatic; break;
        default: r.basis = Basis::diabatic; break;
        }
    }
    std::pair<double, double> window{0.0, 100.0};
    switch (scenario) {
    case ScenarioKind::rotate: break;
    case ScenarioKind::oscillator: window = {0.0, 1000.0}; break;
    case ScenarioKind::lindblad_rotate: window = {0.0, 200.0}; break;
    case ScenarioKind::lindblad_lz: window = {-200.0, 200.0}; break;
    case ScenarioKind::lz:
        if (v > 0.0 && (!ec || *ec > 0.0)) window = default_lz_window(LZParams{1.0, v}, bath());
        break;
    }
    if (!r.t_start) r.t_start = window.first;
    if (!r.t_final) r.t_final = window.second;
    return r;
}

void RunConfig::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(omega) && omega >= 0.0, "omega", "must be >= 0");
    require(finite(v) && v > 0.0, "v", "must be > 0");
    require(finite(alpha) && alpha >= 0.0, "alpha", "must be >= 0");
    require(finite(temp) && temp >= 0.0, "temp", "must be >= 0");
    require(!ec || (finite(*ec) && *ec > 0.0), "ec", "must be > 0 (or \"inf\")");
    require(finite(j0) && j0 >= 0.0, "j0", "must be >= 0");
    require(finite(gamma) && gamma >= 0.0, "gamma", "must be >= 0");
    require(finite(lambda), "lambda", "must be finite");
    require(finite(kappa) && kappa >= 0.0, "kappa", "must be >= 0");
    require(finite(omega0) && omega0 > 0.0, "omega0", "must be > 0");
    require(n_fock >= 2, "n_fock", "must be >= 2");
    require(samples >= 1, "samples", "must be >= 1");
    require(finite(rel_tol) && rel_tol >= 1e-14, "rel_tol", "must be >= 1e-14");
    require(finite(abs_tol) && abs_tol > 0.0, "abs_tol", "must be > 0");
    require(finite(max_step) && max_step >= 0.0, "max_step", "must be >= 0 (0 = unlimited)");
    require(max_steps >= 1, "max_steps", "must be >= 1");

    const RunConfig r = resolved();
    require(std::isfinite(*r.t_start) && std::isfinite(*r.t_final) && *r.t_final > *r.t_start,
            "t_final", "must be finite and greater than t_start");
    if (is_rotation(scenario))
        require(*r.t_start >= 0.0, "t_start", "rotation starts at t = 0; t_start must be >= 0");
    const CouplingMode mode = *r.coupling;
    if (scenario == ScenarioKind::lz)
        require(mode != CouplingMode::perp_y, "coupling",
                "the Landau-Zener scenario supports inplane-z and longitudinal");
    if (scenario == ScenarioKind::oscillator)
        require(mode != CouplingMode::longitudinal, "coupling",
                "the oscillator scenario supports perp-y and inplane-z");
    if (scenario == ScenarioKind::lz && model == LZModel::rate)
        require(temp > 0.0, "temp", "the rate equation needs T > 0");
}

SolverConfig RunConfig::solver() const {
    const RunConfig r = resolved();
    SolverConfig s;
    s.rel_tol = rel_tol;
    s.abs_tol = abs_tol;
    if (max_step > 0.0) s.max_step = max_step;
    s.max_steps = max_steps;
    s.t_start = *r.t_start;
    s.t_end = *r.t_final;
    return s;
}

std::vector<double> RunConfig::sample_grid() const {
    const RunConfig r = resolved();
    return uniform_grid(*r.t_start, *r.t_final, samples);
}

std::vector<std::string> sweepable_parameters(ScenarioKind s) {
    switch (s) {
    case ScenarioKind::rotate: return {"omega", "alpha", "temp", "ec", "j0"};
    case ScenarioKind::lz: return {"v", "alpha", "temp", "ec"};
    case ScenarioKind::oscillator: return {"omega", "lambda", "kappa", "omega0", "temp"};
    case ScenarioKind::lindblad_rotate: return {"omega", "gamma"};
    case ScenarioKind::lindblad_lz: return {"v", "gamma"};
    }
    return {};
}

void set_parameter(RunConfig& cfg, std::string_view name, double value) {
    static const std::map<std::string, std::function<void(RunConfig&, double)>, std::less<>> setters{
        {"omega", [](RunConfig& c, double x) { c.omega = x; }},
        {"v", [](RunConfig& c, double x) { c.v = x; }},
        {"alpha", [](RunConfig& c, double x) { c.alpha = x; }},
        {"temp", [](RunConfig& c, double x) { c.temp = x; }},
        {"ec", [](RunConfig& c, double x) { c.ec = x; }},
        {"j0", [](RunConfig& c, double x) { c.j0 = x; }},
        {"gamma", [](RunConfig& c, double x) { c.gamma = x; }},
        {"lambda", [](RunConfig& c, double x) { c.lambda = x; }},
        {"kappa", [](RunConfig& c, double x) { c.kappa = x; }},
        {"omega0", [](RunConfig& c, double x) { c.omega0 = x; }},
    };
    const auto it = setters.find(name);
    if (it == setters.end()) throw ConfigError("unknown parameter '" + std::string(name) + "'");
    it->second(cfg, value);
}

void SweepConfig::validate() const {
    base.validate();
    const auto names = sweepable_parameters(base.scenario);
    if (std::find(names.begin(), names.end(), param) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw ConfigError("field 'param': '" + param + "' cannot be swept in scenario " +
                          std::string(to_string(base.scenario)) + " (available: " + list + ")");
    }
    for (double x : values)
        if (!std::isfinite(x)) throw ConfigError("field 'values': values must be finite");
}

std::vector<double> parse_value_list(std::string_view text) {
    auto to_double = [&](std::string_view s) {
        const std::string str(s);
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(str, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != str.size() || !std::isfinite(x))
            throw ConfigError("values: cannot parse '" + str + "' as a number");
        return x;
    };
    std::vector<double> out;
    if (text.empty()) return out;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const double a = to_double(text.substr(0, dots));
        std::string_view rest = text.substr(dots + 2);
        const auto colon = rest.find(':');
        const double b = to_double(rest.substr(0, colon));
        if (colon == std::string_view::npos) {
            for (std::size_t i = 0; i <= 10; ++i) out.push_back(a + (b - a) * double(i) / 10.0);
            return out;
        }
        const double step = to_double(rest.substr(colon + 1));
        if (!(step > 0.0) || b < a) throw ConfigError("values: range needs a <= b and step > 0");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) out.push_back(a + step * double(i));
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
        out.push_back(to_double(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

void apply_json(RunConfig& cfg, const json& j, SweepConfig* sweep) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    using Setter = std::function<void(RunConfig&, std::string_view, const json&)>;
    static const std::map<std::string, Setter, std::less<>> keys{
        {"scenario", [](RunConfig& c, std::string_view k, const json& v) { c.scenario = parsed(k, v, scenario_kind_from_string); }},
        {"omega", [](RunConfig& c, std::string_view k, const json& v) { c.omega = number(k, v); }},
        {"v", [](RunConfig& c, std::string_view k, const json& v) { c.v = number(k, v); }},
        {"alpha", [](RunConfig& c, std::string_view k, const json& v) { c.alpha = number(k, v); }},
        {"temp", [](RunConfig& c, std::string_view k, const json& v) { c.temp = number(k, v); }},
        {"ec", [](RunConfig& c, std::string_view k, const json& v) { c.ec = cutoff(k, v); }},
        {"j0", [](RunConfig& c, std::string_view k, const json& v) { c.j0 = number(k, v); }},
        {"gamma", [](RunConfig& c, std::string_view k, const json& v) { c.gamma = number(k, v); }},
        {"lambda", [](RunConfig& c, std::string_view k, const json& v) { c.lambda = number(k, v); }},
        {"kappa", [](RunConfig& c, std::string_view k, const json& v) { c.kappa = number(k, v); }},
        {"omega0", [](RunConfig& c, std::string_view k, const json& v) { c.omega0 = number(k, v); }},
        {"n_fock", [](RunConfig& c, std::string_view k, const json& v) { c.n_fock = count(k, v); }},
        {"coupling", [](RunConfig& c, std::string_view k, const json& v) { c.coupling = parsed(k, v, coupling_mode_from_string); }},
        {"basis", [](RunConfig& c, std::string_view k, const json& v) { c.basis = parsed(k, v, basis_from_string); }},
        {"model", [](RunConfig& c, std::string_view k, const json& v) { c.model = parsed(k, v, lz_model_from_string); }},
        {"t_start", [](RunConfig& c, std::string_view k, const json& v) { c.t_start = number(k, v); }},
        {"t_final", [](RunConfig& c, std::string_view k, const json& v) { c.t_final = number(k, v); }},
        {"samples", [](RunConfig& c, std::string_view k, const json& v) { c.samples = count(k, v); }},
        {"rel_tol", [](RunConfig& c, std::string_view k, const json& v) { c.rel_tol = number(k, v); }},
        {"abs_tol", [](RunConfig& c, std::string_view k, const json& v) { c.abs_tol = number(k, v); }},
        {"max_step", [](RunConfig& c, std::string_view k, const json& v) { c.max_step = number(k, v); }},
        {"max_steps", [](RunConfig& c, std::string_view k, const json& v) { c.max_steps = count(k, v); }},
        {"output", [](RunConfig& c, std::string_view k, const json& v) { c.output = text(k, v); }},
        {"format", [](RunConfig& c, std::string_view k, const json& v) { c.format = parsed(k, v, output_format_from_string); }},
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "sweep") {
            if (!sweep) throw ConfigError("field 'sweep': only the sweep subcommand accepts a sweep section");
            if (!value.is_object()) field_error("sweep", "expected an object");
            for (const auto& [sk, sv] : value.items()) {
                if (sk == "param") sweep->param = text("sweep.param", sv);
                else if (sk == "values") {
                    if (sv.is_string()) {
                        sweep->values = parse_value_list(sv.get<std::string>());
                    } else {
                        if (!sv.is_array()) field_error("sweep.values", "expected an array or a range string");
                        sweep->values.clear();
                        for (const auto& x : sv) sweep->values.push_back(number("sweep.values", x));
                    }
                } else if (sk == "reduction") sweep->reduction = parsed("sweep.reduction", sv, reduction_from_string);
                else if (sk == "threads") sweep->threads = count("sweep.threads", sv);
                else throw ConfigError("unknown key 'sweep." + sk + "'");
            }
            continue;
        }
        const auto it = keys.find(key);
        if (it == keys.end()) throw ConfigError("unknown key '" + key + "'");
        it->second(cfg, key, value);
    }
}

json read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();
    try {
        json j = json::parse(content);
        if (!j.is_object()) throw ConfigError(path.string() + ": top level must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        const std::size_t end = std::min<std::size_t>(e.byte, content.size());
        const auto line = 1 + std::count(content.begin(), content.begin() + static_cast<long>(end), '\n');
        throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
}

json to_json(const RunConfig& c) {
    json j;
    j["scenario"] = to_string(c.scenario);
    j["omega"] = c.omega;
    j["v"] = c.v;
    j["alpha"] = c.alpha;
    j["temp"] = c.temp;
    j["ec"] = c.ec ? json(*c.ec) : json("inf");
    j["j0"] = c.j0;
    j["gamma"] = c.gamma;
    j["lambda"] = c.lambda;
    j["kappa"] = c.kappa;
    j["omega0"] = c.omega0;
    j["n_fock"] = c.n_fock;
    if (c.coupling) j["coupling"] = to_string(*c.coupling);
    if (c.basis) j["basis"] = to_string(*c.basis);
    j["model"] = to_string(c.model);
    if (c.t_start) j["t_start"] = *c.t_start;
    if (c.t_final) j["t_final"] = *c.t_final;
    j["samples"] = c.samples;
    j["rel_tol"] = c.rel_tol;
    j["abs_tol"] = c.abs_tol;
    j["max_step"] = c.max_step;
    j["max_steps"] = c.max_steps;
    if (!c.output.empty()) j["output"] = c.output;
    j["format"] = to_string(c.format);
    return j;
}

json to_json(const SweepConfig& s) {
    json j = to_json(s.base);
    j["sweep"] = {{"param", s.param},
                  {"values", s.values},
                  {"reduction", to_string(s.reduction)}};
    return j;
}

std::filesystem::path preset_directory() {
    if (const char* env = std::getenv("ADIABR_PRESET_DIR"); env && *env) return env;
    return ADIABR_PRESET_DIR_DEFAULT;
}

std::filesystem::path preset_path(std::string_view name) {
    const std::filesystem::path p = preset_directory() / (std::string(name) + ".json");
    if (!std::filesystem::exists(p)) {
        std::string list;
        if (std::filesystem::is_directory(preset_directory())) {
            std::vector<std::string> names;
            for (const auto& e : std::filesystem::directory_iterator(preset_directory()))
                if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
            std::sort(names.begin(), names.end());
            for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        }
        throw ConfigError("unknown preset '" + std::string(name) + "' (available: " + list + ")");
    }
    return p;
}

} // namespace adiabr

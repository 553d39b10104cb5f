// runner.cpp: Executes configured runs and sweeps and writes CSV or JSON tables

#include "adiabr/runner.hpp"

#include "adiabr/errors.hpp"
#include "adiabr/oscillator.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace adiabr {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kColumns{"t", "mx", "my", "mz", "pe", "gamma_r", "gamma_e", "gamma_2"};

std::array<double, 8> row_of(const Trajectory& tr, std::size_t i) {
    const Observables& o = tr.observables[i];
    const RateSet& r = tr.rates[i];
    return {tr.times[i], o.mx, o.my, o.mz, o.pe, r.gamma_r, r.gamma_e, r.gamma_2};
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json diagnostics_json(const StepDiagnostics& d) {
    return {{"accepted_steps", d.accepted},
            {"rejected_steps", d.rejected},
            {"max_trace_deviation", d.max_trace_dev},
            {"max_hermitian_deviation", d.max_hermitian_dev},
            {"max_detailed_balance_relative", d.max_detailed_balance_rel}};
}

std::vector<std::string> reduction_columns(Reduction r) {
    switch (r) {
    case Reduction::final_pe: return {"t", "pe"};
    case Reduction::final_my: return {"t", "my"};
    case Reduction::full_trajectory: return kColumns;
    }
    return {};
}

std::vector<std::vector<double>> reduced_rows(const SweepPoint& p, Reduction r) {
    const std::size_t width = reduction_columns(r).size();
    if (!p.ok || p.trajectory.size() == 0)
        return {std::vector<double>(width, std::nan(""))};
    std::vector<std::vector<double>> rows;
    const Trajectory& tr = p.trajectory;
    const std::size_t last = tr.size() - 1;
    switch (r) {
    case Reduction::final_pe: rows.push_back({tr.times[last], tr.observables[last].pe}); break;
    case Reduction::final_my: rows.push_back({tr.times[last], tr.observables[last].my}); break;
    case Reduction::full_trajectory:
        for (std::size_t i = 0; i < tr.size(); ++i) {
            const auto row = row_of(tr, i);
            rows.emplace_back(row.begin(), row.end());
        }
        break;
    }
    return rows;
}

} // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

json versions() {
    return {{"adiabr", ADIABR_VERSION},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                          "." + std::to_string(EIGEN_MINOR_VERSION)},
            {"boost", std::to_string(BOOST_VERSION / 100000) + "." +
                          std::to_string(BOOST_VERSION / 100 % 1000) + "." +
                          std::to_string(BOOST_VERSION % 100)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

RunResult run_scenario(const RunConfig& in) {
    in.validate();
    RunResult out;
    out.config = in.resolved();
    const RunConfig& c = out.config;
    const SolverConfig solver = c.solver();
    const std::vector<double> grid = c.sample_grid();
    const BathSpec bath = c.bath();
    const RotatingFieldParams rot{1.0, c.omega};
    const LZParams lz{1.0, c.v};
    const bool rotation = c.scenario == ScenarioKind::rotate || c.scenario == ScenarioKind::oscillator ||
                          c.scenario == ScenarioKind::lindblad_rotate;
    const FrameFn frames = rotation ? frame_provider(rot) : frame_provider(lz);

    Trajectory native;
    switch (c.scenario) {
    case ScenarioKind::rotate:
        native = evolve_br_rotating(rot, *c.coupling, bath, solver, grid);
        break;
    case ScenarioKind::lz: {
        const LZKind kind =
            *c.coupling == CouplingMode::longitudinal ? LZKind::longitudinal : LZKind::transverse;
        if (c.model == LZModel::br) {
            native = evolve_br_lz(lz, kind, bath, solver, grid);
        } else {
            RateEquationResult r = evolve_rate_equation(lz, kind, bath, solver, grid);
            native = std::move(r.trajectory);
            out.p_inf = r.p_inf;
        }
        break;
    }
    case ScenarioKind::oscillator: {
        OscillatorModel m;
        m.omega0 = c.omega0;
        m.lambda = c.lambda;
        m.kappa = c.kappa;
        m.n_fock = c.n_fock;
        m.temperature = c.temp;
        native = evolve_joint(m, rot, *c.coupling, solver, grid).trajectory;
        break;
    }
    case ScenarioKind::lindblad_rotate:
    case ScenarioKind::lindblad_lz: {
        LindbladScenario sc;
        sc.scenario = rotation ? Scenario::rotation : Scenario::landau_zener;
        sc.rotation = rot;
        sc.lz = lz;
        native = evolve_lindblad_dephasing(sc, c.gamma, solver, grid);
        break;
    }
    }
    out.trajectory = *c.basis == Basis::diabatic ? lab_frame_observables(native, frames)
                                                 : change_basis(native, frames, *c.basis);
    return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult result;
    result.config = cfg;
    std::vector<double> values = cfg.values;
    std::stable_sort(values.begin(), values.end());
    result.config.values = values;
    result.points.resize(values.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            SweepPoint& p = result.points[i];
            p.value = values[i];
            try {
                RunConfig point = cfg.base;
                set_parameter(point, cfg.param, values[i]);
                p.trajectory = run_scenario(point).trajectory;
                p.ok = true;
            } catch (const std::exception& e) {
                p.ok = false;
                p.error = e.what();
            }
        }
    };
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, values.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    if (threads > 0) worker();
    for (auto& t : pool) t.join();
    return result;
}

void write_run(std::ostream& os, const RunResult& r, OutputFormat format) {
    const Trajectory& tr = r.trajectory;
    if (format == OutputFormat::csv) {
        for (std::size_t k = 0; k < kColumns.size(); ++k) os << (k ? "," : "") << kColumns[k];
        os << '\n';
        for (std::size_t i = 0; i < tr.size(); ++i) {
            const auto row = row_of(tr, i);
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_number(row[k]);
            os << '\n';
        }
        return;
    }
    json data = json::array();
    for (std::size_t i = 0; i < tr.size(); ++i) data.push_back(row_of(tr, i));
    json j{{"columns", kColumns},
           {"data", data},
           {"basis", to_string(tr.basis_tag)},
           {"config", to_json(r.config)},
           {"versions", versions()},
           {"warnings", tr.warnings},
           {"diagnostics", diagnostics_json(tr.diagnostics)}};
    if (r.p_inf) j["p_inf"] = *r.p_inf;
    if (!tr.pe_by_basis.empty()) j["pe_by_basis"] = {{"columns", {"diabatic", "adiabatic", "eigen"}},
                                                     {"data", tr.pe_by_basis}};
    os << j.dump(2) << '\n';
}

void write_sweep(std::ostream& os, const SweepResult& r, OutputFormat format) {
    const Reduction red = r.config.reduction;
    const std::vector<std::string> cols = reduction_columns(red);
    if (format == OutputFormat::csv) {
        os << r.config.param;
        for (const auto& c : cols) os << ',' << c;
        os << ",status,error\n";
        for (const SweepPoint& p : r.points) {
            for (const auto& row : reduced_rows(p, red)) {
                os << format_number(p.value);
                for (double x : row) os << ',' << format_number(x);
                os << ',' << (p.ok ? "ok" : "error") << ',' << (p.ok ? "" : csv_quote(p.error)) << '\n';
            }
        }
        return;
    }
    json rows = json::array();
    for (const SweepPoint& p : r.points) {
        json row{{"value", p.value}, {"status", p.ok ? "ok" : "error"}, {"data", reduced_rows(p, red)}};
        if (!p.ok) row["error"] = p.error;
        if (p.ok) row["warnings"] = p.trajectory.warnings;
        rows.push_back(row);
    }
    json j{{"param", r.config.param},
           {"reduction", to_string(red)},
           {"columns", cols},
           {"rows", rows},
           {"config", to_json(r.config)},
           {"versions", versions()}};
    os << j.dump(2) << '\n';
}

} // namespace adiabr

#include "adiabr/checks.hpp"
#include "adiabr/config.hpp"
#include "adiabr/errors.hpp"
#include "adiabr/runner.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace adiabr;
using json = nlohmann::json;

TEST_CASE("scenario defaults") {
    RunConfig c;
    c.scenario = ScenarioKind::lz;
    c.ec = 5.0;
    const RunConfig r = c.resolved();
    CHECK(*r.coupling == CouplingMode::inplane_z);
    CHECK(*r.basis == Basis::eigen);
    CHECK(*r.t_start == -40.0);
    CHECK(*r.t_final == 40.0);

    c.scenario = ScenarioKind::lindblad_lz;
    CHECK(*c.resolved().basis == Basis::adiabatic);
    c.scenario = ScenarioKind::oscillator;
    CHECK(*c.resolved().t_final == 1000.0);
    CHECK(*c.resolved().coupling == CouplingMode::perp_y);
}

TEST_CASE("validation names the field") {
    RunConfig c;
    c.alpha = -1.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("alpha"), ConfigError);
    c = {};
    c.scenario = ScenarioKind::lz;
    c.coupling = CouplingMode::perp_y;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("coupling"), ConfigError);
    c = {};
    c.t_start = -1.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("t_start"), ConfigError);
    c = {};
    c.scenario = ScenarioKind::lz;
    c.model = LZModel::rate;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("temp"), ConfigError);
}

TEST_CASE("json keys") {
    RunConfig c;
    apply_json(c, json{{"omega", 0.2}, {"ec", "inf"}, {"coupling", "inplane-z"}, {"samples", 11}});
    CHECK(c.omega == 0.2);
    CHECK_FALSE(c.ec.has_value());
    CHECK(*c.coupling == CouplingMode::inplane_z);
    CHECK(c.samples == 11);
    CHECK_THROWS_WITH_AS(apply_json(c, json{{"omgea", 1.0}}), doctest::Contains("omgea"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_json(c, json{{"alpha", "x"}}), doctest::Contains("alpha"), ConfigError);
    CHECK_THROWS_AS(apply_json(c, json{{"sweep", json::object()}}), ConfigError);
    CHECK_THROWS_AS(apply_json(c, json{{"coupling", "diagonal"}}), ConfigError);

    SweepConfig s;
    apply_json(s.base, json{{"sweep", {{"param", "alpha"}, {"values", "0..1:0.5"}, {"reduction", "final_my"}}}}, &s);
    CHECK(s.param == "alpha");
    CHECK(s.values == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(s.reduction == Reduction::final_my);
}

TEST_CASE("value lists") {
    CHECK(parse_value_list("1,2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
    CHECK(parse_value_list("").empty());
    CHECK(parse_value_list("0..1").size() == 11);
    const auto r = parse_value_list("0..3:0.25");
    REQUIRE(r.size() == 13);
    CHECK(r.back() == doctest::Approx(3.0));
    CHECK_THROWS_AS(parse_value_list("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_value_list("3..1:1"), ConfigError);
}

TEST_CASE("config echo round-trips") {
    RunConfig c;
    c.scenario = ScenarioKind::lz;
    c.ec = std::nullopt;
    c.temp = 0.5;
    c.samples = 5;
    const json echo = to_json(c.resolved());
    RunConfig back;
    apply_json(back, echo);
    CHECK(to_json(back) == echo);

    std::ostringstream a, b;
    write_run(a, run_scenario(c), OutputFormat::json);
    write_run(b, run_scenario(back), OutputFormat::json);
    CHECK(a.str() == b.str());
}

TEST_CASE("csv output") {
    RunConfig c;
    c.t_final = 10.0;
    c.samples = 3;
    c.alpha = 0.05;
    std::ostringstream os;
    write_run(os, run_scenario(c), OutputFormat::csv);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,mx,my,mz,pe,gamma_r,gamma_e,gamma_2");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("sweep ordering, determinism and failures") {
    SweepConfig s;
    s.base.scenario = ScenarioKind::lz;
    s.base.t_start = -20.0;
    s.base.t_final = 20.0;
    s.base.samples = 2;
    s.param = "alpha";
    s.values = {0.1, -0.5, 0.0, 0.05};
    s.threads = 4;
    const SweepResult r = run_sweep(s);
    REQUIRE(r.points.size() == 4);
    CHECK(r.points[0].value == -0.5);
    CHECK_FALSE(r.points[0].ok);
    CHECK(r.points[0].error.find("alpha") != std::string::npos);
    for (std::size_t i = 1; i < 4; ++i) CHECK(r.points[i].ok);
    CHECK(r.points[1].value == 0.0);

    std::ostringstream a, b;
    write_sweep(a, r, OutputFormat::csv);
    s.threads = 1;
    write_sweep(b, run_sweep(s), OutputFormat::csv);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("-0.5,nan,nan,error,") != std::string::npos);

    s.values.clear();
    std::ostringstream empty;
    write_sweep(empty, run_sweep(s), OutputFormat::csv);
    CHECK(empty.str() == "alpha,t,pe,status,error\n");

    s.param = "gamma";
    CHECK_THROWS_WITH_AS(run_sweep(s), doctest::Contains("gamma"), ConfigError);
}

TEST_CASE("presets") {
    for (int i = 1; i <= 14; ++i) {
        const std::string name = "fig" + std::to_string(i);
        CAPTURE(name);
        const json j = read_config_file(preset_path(name));
        SweepConfig s;
        apply_json(s.base, j, &s);
        if (j.contains("sweep")) CHECK_NOTHROW(s.validate());
        else CHECK_NOTHROW(s.base.validate());
    }
    CHECK_THROWS_WITH_AS(preset_path("fig99"), doctest::Contains("fig14"), ConfigError);
}

TEST_CASE("check catalog") {
    CHECK(check_catalog().size() == 13);
    CHECK(find_check("lz-ideal").criterion == 1);
    CHECK_THROWS_WITH_AS(find_check("bogus"), doctest::Contains("my-universal"), ConfigError);
    const auto reports = run_checks({"lz-ideal"});
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].passed());
    CHECK(to_json(reports[0])["verdict"] == "pass");
}

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
    int code{-1};
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("adiabr_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content) { std::ofstream(p) << content; }

Result run(const std::string& args, const std::string& env = "") {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = env + " " ADIABR_CLI " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

} // namespace

TEST_CASE("run writes the csv table") {
    const Result r = run("rotate --omega 0.1 --alpha 0.05 --coupling perp-y --temp 0 --t-final 10 --samples 3");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,mx,my,mz,pe,gamma_r,gamma_e,gamma_2\n", 0) == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.rfind("0,", 0) == 0);
    CHECK(row.find(",0.141355637927882,") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("rotate --alpha -1").code == 1);
    CHECK(run("lz --coupling perp-y").code == 1);
    CHECK(run("rotate --no-such-flag").code == 1);
    CHECK(run("rotate --coupling sideways").code == 1);
    CHECK(run("").code == 1);
    const Result solver = run("rotate --t-final 50 --max-steps 5");
    CHECK(solver.code == 2);
    CHECK(solver.err.find("t=") != std::string::npos);
}

TEST_CASE("oracle-check") {
    const Result bogus = run("oracle-check bogus");
    CHECK(bogus.code == 1);
    CHECK(bogus.err.find("lz-ideal") != std::string::npos);
    CHECK(bogus.err.find("my-universal") != std::string::npos);

    const Result ok = run("oracle-check lz-ideal");
    REQUIRE(ok.code == 0);
    const json j = json::parse(ok.out);
    CHECK(j["checks"][0]["id"] == "lz-ideal");
    CHECK(j["checks"][0]["verdict"] == "pass");
    CHECK(j["checks"][0]["measurements"][1]["expected"].get<double>() == doctest::Approx(0.0432139));
}

TEST_CASE("config file, flag precedence and echo") {
    const fs::path cfg = scratch() / "cfg.json";
    write_file(cfg, R"({"scenario": "rotate", "omega": 0.2, "alpha": 0.02, "t_final": 5, "samples": 2})");
    const Result r = run("rotate --config " + cfg.string() + " --omega 0.3 --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["config"]["omega"] == 0.3);
    CHECK(j["config"]["alpha"] == 0.02);
    CHECK(j["columns"].size() == 8);
    CHECK(j["versions"].contains("adiabr"));

    const fs::path echo = scratch() / "echo.json";
    write_file(echo, j["config"].dump());
    const Result again = run("rotate --config " + echo.string() + " --format json");
    CHECK(again.out == r.out);

    write_file(cfg, R"({"omgea": 0.2})");
    const Result unknown = run("rotate --config " + cfg.string());
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("omgea") != std::string::npos);

    write_file(cfg, "{\n  \"omega\": 0.2,\n  \"alpha\": \n}\n");
    const Result broken = run("rotate --config " + cfg.string());
    CHECK(broken.code == 1);
    CHECK(broken.err.find(":4:") != std::string::npos);

    write_file(cfg, R"({"scenario": "lz"})");
    CHECK(run("rotate --config " + cfg.string()).code == 1);
}

TEST_CASE("sweep") {
    const Result empty = run("sweep --scenario lz --param alpha --values ''");
    CHECK(empty.code == 0);
    CHECK(empty.out == "alpha,t,pe,status,error\n");

    const std::string args = "sweep --scenario lz --param temp --values 0.5,0,1 --t-start -20 --t-final 20 --samples 2";
    const Result a = run(args + " --threads 3");
    const Result b = run(args + " --threads 1");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\n0,") < a.out.find("\n0.5,"));

    const Result failing = run("sweep --scenario lz --param v --values -1,0.5 --t-start -20 --t-final 20 --samples 2");
    CHECK(failing.code == 0);
    CHECK(failing.out.find("-1,nan,nan,error,") != std::string::npos);

    CHECK(run("sweep --scenario lz --param gamma --values 1").code == 1);
}

TEST_CASE("presets and the output directory") {
    const fs::path dir = scratch() / "out";
    const Result r = run("lindblad-rotate --preset fig13 --t-final 20 --samples 5", "ADIABR_OUTPUT_DIR=" + dir.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(dir / "lindblad-rotate.csv"));

    const Result unknown = run("rotate --preset fig99");
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("fig14") != std::string::npos);
}

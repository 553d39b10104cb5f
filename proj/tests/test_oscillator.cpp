#include "adiabr/errors.hpp"
#include "adiabr/oscillator.hpp"

#include <doctest.h>

#include <cmath>

using namespace adiabr;

namespace {

Eigen::MatrixXcd fock(std::size_t n, std::size_t k) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m(k, k) = 1.0;
    return m;
}

} // namespace

TEST_CASE("model validation") {
    OscillatorModel m;
    CHECK_NOTHROW(m.validate());
    m.n_fock = 1;
    CHECK_THROWS_AS(m.validate(), ConfigError);
    m = {};
    m.kappa = -0.1;
    CHECK_THROWS_AS(m.validate(), ConfigError);
    m = {};
    m.temperature = 0.5;
    CHECK(m.occupation() == doctest::Approx(1.0 / (std::exp(2.0) - 1.0)));
}

TEST_CASE("partial trace") {
    const QubitState q = density_of_bloch({0.3, -0.2, 0.5});
    const auto osc = JointState::thermal_oscillator(6, 1.0, 0.7);
    const JointState js = JointState::product(q, osc);
    CHECK((reduce_to_qubit(js).rho() - q.rho()).norm() < 1e-14);
    CHECK((reduce_to_oscillator(js) - osc).norm() < 1e-14);

    JointState mixed;
    mixed.n_fock = 4;
    mixed.rho = Eigen::MatrixXcd::Identity(8, 8) / 8.0;
    CHECK((reduce_to_qubit(mixed).rho() - QubitState::mixed().rho()).norm() < 1e-14);

    // (|0,0> + |1,1>)/sqrt 2
    JointState bell;
    bell.n_fock = 3;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(6);
    psi(0) = psi(3 + 1) = 1.0 / std::sqrt(2.0);
    bell.rho = psi * psi.adjoint();
    CHECK_NOTHROW(bell.validate());
    CHECK((reduce_to_qubit(bell).rho() - QubitState::mixed().rho()).norm() < 1e-14);

    JointState bad = bell;
    bad.rho(0, 0) = 2.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("decoupled qubit follows the unitary rotating-frame evolution") {
    OscillatorModel m;
    m.lambda = 0.0;
    const RotatingFieldParams p{1.0, 0.1};
    SolverConfig cfg;
    cfg.t_end = 30.0;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    const auto grid = uniform_grid(0.0, 30.0, 61);
    const JointRun run = evolve_joint(m, p, CouplingMode::perp_y, cfg, grid);
    const Trajectory br = evolve_br_rotating(p, CouplingMode::perp_y, BathSpec{}, cfg, grid);
    REQUIRE(run.trajectory.size() == br.size());
    double err = 0.0;
    for (std::size_t i = 0; i < br.size(); ++i)
        err = std::max(err, (run.trajectory.states[i].bloch() - br.states[i].bloch()).cwiseAbs().maxCoeff());
    CHECK(err < 1e-8);
    CHECK(run.trajectory.diagnostics.max_trace_dev < 1e-8);
}

TEST_CASE("decoupled oscillator relaxes at 2 kappa") {
    OscillatorModel m;
    m.lambda = 0.0;
    m.kappa = 0.2;
    const RotatingFieldParams p{1.0, 0.1};
    SolverConfig cfg;
    cfg.t_end = 5.0;
    const JointState start = JointState::product(QubitState::ground(), fock(m.n_fock, 1));
    const JointRun run = evolve_joint(m, p, CouplingMode::perp_y, cfg, {5.0}, start);
    const auto osc = reduce_to_oscillator(run.final_state);
    CHECK(osc(1, 1).real() == doctest::Approx(std::exp(-2.0 * 0.2 * 5.0)).epsilon(1e-6));

    m.temperature = 0.5;
    cfg.t_end = 60.0;
    const JointRun hot = evolve_joint(m, p, CouplingMode::perp_y, cfg, {60.0}, start);
    const auto thermal = JointState::thermal_oscillator(m.n_fock, m.omega0, m.temperature);
    CHECK((reduce_to_oscillator(hot.final_state) - thermal).cwiseAbs().maxCoeff() < 1e-6);
    CHECK_FALSE(hot.trajectory.warnings.empty());
}

TEST_CASE("universal steady response") {
    const RotatingFieldParams p{1.0, 0.1};
    const double target = -0.1 / std::hypot(1.0, 0.1);
    SolverConfig cfg;
    cfg.t_end = 1000.0;
    const auto grid = uniform_grid(0.0, cfg.t_end, 1001);
    for (CouplingMode mode : {CouplingMode::perp_y, CouplingMode::inplane_z}) {
        OscillatorModel m;
        m.kappa = 0.2;
        m.lambda = 0.1;
        const JointRun run = evolve_joint(m, p, mode, cfg, grid);
        const Trajectory lab = lab_frame_observables(run.trajectory, frame_provider(p));
        CHECK(std::abs(tail_mean_my(lab, cfg.t_end - 2.0 * M_PI / 0.1) - target) < 2e-2);
        CHECK(run.trajectory.diagnostics.max_trace_dev < 1e-8);
    }
}

TEST_CASE("truncation leak") {
    OscillatorModel m;
    m.n_fock = 2;
    m.lambda = 1.0;
    m.kappa = 0.01;
    m.auto_grow = false;
    const RotatingFieldParams p{1.0, 0.1};
    SolverConfig cfg;
    cfg.t_end = 50.0;
    CHECK_THROWS_AS(evolve_joint(m, p, CouplingMode::perp_y, cfg), TruncationError);

    m.auto_grow = true;
    m.n_fock = 4;
    m.lambda = 0.3;
    const JointRun run = evolve_joint(m, p, CouplingMode::perp_y, cfg, {50.0});
    CHECK(run.n_fock_used > 4);
    CHECK(run.final_state.top_level_population() <= 1e-6);
    CHECK_THROWS_AS(evolve_joint(m, p, CouplingMode::longitudinal, cfg), ConfigError);
}

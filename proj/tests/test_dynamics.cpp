#include "adiabr/dynamics.hpp"
#include "adiabr/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace adiabr;

namespace {

SolverConfig window(double t0, double t1) {
    SolverConfig cfg;
    cfg.t_start = t0;
    cfg.t_end = t1;
    return cfg;
}

} // namespace

TEST_CASE("free precession") {
    const Trajectory tr = evolve_br_secular(
        density_of_bloch(Vec3(1, 0, 0)), [](double) { return 1.3; }, [](double) { return RateSet{}; },
        window(0.0, 10.0), uniform_grid(0.0, 10.0, 51));
    REQUIRE(tr.size() == 51);
    for (std::size_t i = 0; i < tr.size(); ++i)
        CHECK(tr.observables[i].mx == doctest::Approx(std::cos(1.3 * tr.times[i])).epsilon(1e-7));
}

TEST_CASE("relaxation to the ground state at zero temperature") {
    RateSet r;
    r.gamma_r = 0.4;
    r.gamma_2 = 0.2;
    const Trajectory tr = evolve_br_secular(QubitState::excited(), [](double) { return 1.0; },
                                            [r](double) { return r; }, window(0.0, 80.0));
    CHECK(tr.observables.back().mz == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(tr.diagnostics.accepted > 0);
    for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
}

TEST_CASE("rotating field follows the thermal closed form") {
    const RotatingFieldParams p{1.0, 0.1};
    const BathSpec bath{0.05, 10.0, 0.5, 0.0};
    SolverConfig cfg = window(0.0, 100.0);
    const Trajectory eig = evolve_br_rotating(p, CouplingMode::perp_y, bath, cfg, uniform_grid(0, 100, 201));
    const Trajectory lab = lab_frame_observables(eig, frame_provider(p));
    const FrameAngles f = rotating_frame(0.0, p);
    const RateSet r = rotating_rates(CouplingMode::perp_y, f, bath);
    const double m0 = std::tanh(f.w_gap / (2 * bath.temperature));
    const double g = r.total();
    double worst = 0.0;
    for (std::size_t i = 0; i < lab.size(); ++i) {
        const double t = lab.times[i];
        const double expected = -m0 * std::sin(f.eta) *
                                (1 - 2 * std::pow(std::sin(f.eta / 2), 2) * std::exp(-g * t) -
                                 std::cos(f.eta) * std::exp(-g * t / 2) * std::cos(f.w_gap * t));
        worst = std::max(worst, std::abs(lab.observables[i].my - expected));
    }
    CHECK(worst < 1e-6);
    CHECK(lab.basis_tag == Basis::diabatic);
    CHECK(eig.diagnostics.max_detailed_balance_rel < 1e-12);
}

TEST_CASE("rotation ground state has lab my = -Omega/W") {
    const RotatingFieldParams p{1.0, 0.1};
    const FrameAngles f = rotating_frame(7.0, p);
    Trajectory tr;
    tr.basis_tag = Basis::eigen;
    tr.scenario = Scenario::rotation;
    tr.push(7.0, QubitState::ground(), RateSet{});
    const Trajectory lab = lab_frame_observables(tr, frame_provider(p));
    CHECK(lab.observables[0].my == doctest::Approx(-0.1 / f.w_gap).epsilon(1e-12));
    CHECK(change_basis(tr, frame_provider(p), Basis::eigen).observables[0].mz == 1.0);
    CHECK_THROWS_AS(lab_frame_observables(tr, frame_provider(LZParams{})), ConfigError);
}

TEST_CASE("unitary landau-zener sweep") {
    const LZParams p{1.0, 0.5};
    const BathSpec bath{0.0, std::nullopt, 0.0, 0.0};
    const Trajectory tr = evolve_br_lz(p, LZKind::transverse, bath, window(-200.0, 200.0),
                                       uniform_grid(-200, 200, 401));
    CHECK(tr.observables.back().pe == doctest::Approx(std::exp(-M_PI)).epsilon(1e-3));
    CHECK(tr.diagnostics.max_trace_dev < 1e-12);
    CHECK(tr.diagnostics.max_hermitian_dev == 0.0);
    double purity_drift = 0.0;
    for (const QubitState& s : tr.states) purity_drift = std::max(purity_drift, std::abs(s.purity() - 1.0));
    CHECK(purity_drift < 1e-5);

    SUBCASE("all three bases agree after the sweep") {
        const Trajectory lab = lab_frame_observables(tr, frame_provider(p));
        const auto& last = lab.pe_by_basis.back();
        CHECK(last[0] == doctest::Approx(std::exp(-M_PI)).epsilon(2e-2));
        CHECK(last[1] == doctest::Approx(std::exp(-M_PI)).epsilon(2e-2));
        CHECK(last[2] == doctest::Approx(std::exp(-M_PI)).epsilon(1e-3));
    }
}

TEST_CASE("landau-zener sweep warnings and level check") {
    const BathSpec bath{0.05, 5.0, 0.0, 0.0};
    const Trajectory tr = evolve_br_lz(LZParams{1.0, 2.0}, LZKind::transverse, bath, window(-5.0, 5.0));
    CHECK(tr.warnings.size() == 2);
    CHECK_THROWS_AS(evolve_br_lz(LZParams{}, LZKind::transverse, bath, window(-10, 10), {}, Basis::diabatic),
                    ConfigError);
}

TEST_CASE("rate equation") {
    const LZParams p{1.0, 0.5};
    SolverConfig cfg = window(-80.0, 80.0);
    const RateEquationResult off = evolve_rate_equation(p, LZKind::transverse, BathSpec{0.0, 10.0, 1.0, 0.0}, cfg);
    CHECK(off.p_inf == 0.0);
    CHECK_THROWS_AS(evolve_rate_equation(p, LZKind::transverse, BathSpec{0.05, 10.0, 0.0, 0.0}, cfg),
                    ConfigError);

    const BathSpec hot{0.05, 10.0, 2.0, 0.0};
    const RateEquationResult re = evolve_rate_equation(p, LZKind::transverse, hot, cfg);
    const Trajectory br = evolve_br_lz(p, LZKind::transverse, hot, cfg);
    CHECK(std::abs(re.p_inf - br.observables.back().pe) < 0.02);
    CHECK(re.trajectory.diagnostics.max_detailed_balance_rel < 1e-12);
    CHECK(br.diagnostics.max_detailed_balance_rel < 1e-12);
}

TEST_CASE("lindblad dephasing") {
    LindbladScenario rot;
    rot.rotation = {1.0, 0.1};
    SolverConfig tight = window(0.0, 50.0);
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    const Trajectory pure = evolve_lindblad_dephasing(rot, 0.0, tight);
    double drift = 0.0;
    for (const QubitState& s : pure.states) drift = std::max(drift, std::abs(s.bloch().norm() - 1.0));
    CHECK(drift < 1e-9);

    LindbladScenario lz;
    lz.scenario = Scenario::landau_zener;
    lz.lz = {1.0, 0.5};
    const auto final_pe = [](const LindbladScenario& sc) {
        return evolve_lindblad_dephasing(sc, 3.0, window(-200.0, 200.0)).observables.back().pe;
    };
    const double pe = final_pe(lz);
    lz.theta_dot_sign = -1.0;
    CHECK(final_pe(lz) == doctest::Approx(pe).epsilon(1e-6));
    const double x = 3.0;
    const double rx = (2 + (x * x - 2) * std::sqrt(x * x + 1)) / (x * x * x * std::sqrt(x * x + 1));
    CHECK(pe == doctest::Approx(0.5 * (1 - std::exp(-M_PI * 0.5 / 2 * rx))).epsilon(0.02));
    CHECK_THROWS_AS(evolve_lindblad_dephasing(lz, -1.0, window(0, 1)), ConfigError);
}

TEST_CASE("tail mean") {
    Trajectory tr;
    tr.push(0.0, density_of_bloch(Vec3(0, 0.2, 0)), {});
    tr.push(1.0, density_of_bloch(Vec3(0, 0.4, 0)), {});
    tr.push(2.0, density_of_bloch(Vec3(0, 0.6, 0)), {});
    CHECK(tail_mean_my(tr, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(tail_mean_my(tr, 5.0), ConfigError);
    CHECK(default_lz_window(LZParams{1.0, 0.5}, BathSpec{0.05, 5.0, 0, 0}).second == 40.0);
    CHECK(default_lz_window(LZParams{1.0, 0.5}, BathSpec{0.05, std::nullopt, 0, 0}).first == -200.0);
}

#include "adiabr/errors.hpp"
#include "adiabr/qubit.hpp"

#include <doctest.h>

#include <cmath>

using namespace adiabr;

namespace {
BathSpec bath(double alpha, std::optional<double> ec, double temp, double j0 = 0.0) {
    return BathSpec{alpha, ec, temp, j0};
}
} // namespace

TEST_CASE("planck occupation") {
    CHECK(planck_occupation(1.0, 0.0) == 0.0);
    CHECK(planck_occupation(1.0, 1.0) == doctest::Approx(0.58198).epsilon(1e-5));
    CHECK(planck_occupation(10.0, 1.0) == doctest::Approx(4.54e-5).epsilon(1e-3));
    CHECK_THROWS_AS(planck_occupation(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(planck_occupation(-1.0, 0.5), DomainError);
}

TEST_CASE("ohmic spectral density") {
    CHECK(ohmic_spectral_density(0.0, bath(0.05, 10.0, 0.0)) == 0.0);
    CHECK(ohmic_spectral_density(1.0, bath(0.05, 10.0, 0.0)) == doctest::Approx(0.28427).epsilon(1e-5));
    CHECK(ohmic_spectral_density(3.0, bath(0.0, 10.0, 0.0)) == 0.0);
    CHECK(ohmic_spectral_density(2.0, bath(0.05, std::nullopt, 0.0)) == doctest::Approx(2.0 * M_PI * 0.1));
    CHECK_THROWS_AS(ohmic_spectral_density(-1.0, bath(0.05, 10.0, 0.0)), DomainError);

    SUBCASE("maximum at the cutoff") {
        const BathSpec b = bath(0.05, 4.0, 0.0);
        const double peak = ohmic_spectral_density(4.0, b);
        for (double e : {0.5, 2.0, 3.9, 4.1, 8.0, 40.0}) CHECK(ohmic_spectral_density(e, b) < peak);
        CHECK(ohmic_spectral_density(400.0, b) < 1e-30);
    }
}

TEST_CASE("bath validation") {
    CHECK_NOTHROW(bath(0.05, std::nullopt, 0.0).validate());
    CHECK_THROWS_AS(bath(-0.1, 10.0, 0.0).validate(), ValidationError);
    CHECK_THROWS_AS(bath(0.1, 0.0, 0.0).validate(), ValidationError);
    CHECK_THROWS_AS(bath(0.1, 10.0, -1.0).validate(), ValidationError);
    CHECK_THROWS_AS(bath(0.1, 10.0, 0.0, -1.0).validate(), ValidationError);
}

TEST_CASE("bloch and density round trip") {
    CHECK((QubitState::ground().bloch() - Vec3(0, 0, 1)).norm() == 0.0);
    CHECK((density_of_bloch(Vec3::Zero()).rho() - 0.5 * Mat2::Identity()).norm() < 1e-15);
    const QubitState sx = density_of_bloch(Vec3(1, 0, 0));
    CHECK(sx.rho()(0, 1).real() == doctest::Approx(0.5));
    CHECK(sx.rho()(1, 0).real() == doctest::Approx(0.5));

    for (const Vec3& m : {Vec3(0.3, -0.2, 0.5), Vec3(0, 0.6, -0.8), Vec3(-0.1, 0.1, 0.1)}) {
        const Vec3 back = bloch_of_density(density_of_bloch(m));
        CHECK((back - m).norm() < 1e-14);
    }
}

TEST_CASE("state validation") {
    Mat2 bad = Mat2::Identity();
    CHECK_THROWS_AS(QubitState{bad}, ValidationError);
    Mat2 nonherm = 0.5 * Mat2::Identity();
    nonherm(0, 1) = 0.1;
    CHECK_THROWS_AS(QubitState{nonherm}, ValidationError);
    CHECK_THROWS_AS(density_of_bloch(Vec3(1, 1, 0)), ValidationError);
    CHECK(QubitState::mixed().purity() == doctest::Approx(0.5));
    CHECK(QubitState::excited().population(1) == 1.0);
}

TEST_CASE("static rates") {
    const CouplingSpec z = CouplingSpec::from_mode(CouplingMode::inplane_z);
    RateSet r = static_rates(z, 1.0, bath(0.05, 10.0, 1.0));
    CHECK(r.gamma_r == 0.0);
    CHECK(r.gamma_e == 0.0);
    CHECK(r.gamma_2 == 0.0);

    const CouplingSpec y = CouplingSpec::from_mode(CouplingMode::perp_y);
    r = static_rates(y, 1.0, bath(0.05, 10.0, 0.0));
    CHECK(r.gamma_e == 0.0);
    CHECK(r.gamma_r == doctest::Approx(0.14214).epsilon(1e-4));
    r = static_rates(y, 1.0, bath(0.05, 10.0, 1.0));
    CHECK(r.gamma_e == doctest::Approx(0.08272).epsilon(1e-4));
    CHECK(r.gamma_2 == doctest::Approx(0.5 * (r.gamma_r + r.gamma_e)));
    CHECK_NOTHROW(r.validate());
    CHECK_THROWS_AS(static_rates(y, 0.0, bath(0.05, 10.0, 1.0)), DomainError);

    SUBCASE("pure dephasing from the parallel component") {
        r = static_rates(z, 1.0, bath(0.05, 10.0, 0.0, 0.3));
        CHECK(r.gamma_phi == doctest::Approx(0.3));
        CHECK(r.gamma_2 == doctest::Approx(0.3));
    }
}

TEST_CASE("static rates properties") {
    for (double t : {0.1, 0.5, 1.0, 3.0}) {
        for (double eps : {0.2, 1.0, 5.0}) {
            const RateSet r = static_rates(CouplingSpec::from_mode(CouplingMode::perp_y), eps,
                                           bath(0.07, 10.0, t));
            const double ratio = r.gamma_e / r.gamma_r;
            CHECK(std::abs(ratio - std::exp(-eps / t)) / std::exp(-eps / t) < 1e-12);
        }
    }
    // rotating n about z leaves the rates unchanged
    const BathSpec b = bath(0.05, 10.0, 0.7, 0.2);
    const double s = 0.6, c = 0.8;
    for (double phi : {0.0, 0.4, 1.3, 2.9}) {
        CouplingSpec n{CouplingMode::perp_y, Vec3(s * std::cos(phi), s * std::sin(phi), c)};
        const RateSet r = static_rates(n, 1.2, b);
        const RateSet r0 = static_rates(CouplingSpec{CouplingMode::perp_y, Vec3(s, 0, c)}, 1.2, b);
        CHECK(r.gamma_r == doctest::Approx(r0.gamma_r).epsilon(1e-14));
        CHECK(r.gamma_phi == doctest::Approx(r0.gamma_phi).epsilon(1e-14));
    }
    CHECK_THROWS_AS(static_rates(CouplingSpec{CouplingMode::perp_y, Vec3(1, 1, 0)}, 1.0, b),
                    ValidationError);
}

TEST_CASE("coupling mode names") {
    for (auto m : {CouplingMode::perp_y, CouplingMode::inplane_z, CouplingMode::longitudinal})
        CHECK(coupling_mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(coupling_mode_from_string("sideways"), ConfigError);
}

#include "adiabr/errors.hpp"
#include "adiabr/frames.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace adiabr;

namespace {

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

// U H U^dag + i dU/dt U^dag by central differences
Mat2 transformed_hamiltonian(double t, const LZParams& p, Basis level) {
    const double h = 1e-5;
    const FrameAngles f = lz_frame(t, p);
    const Mat2 u = frame_unitary(f, level);
    const Mat2 du = (frame_unitary(lz_frame(t + h, p), level) -
                     frame_unitary(lz_frame(t - h, p), level)) / (2 * h);
    return u * effective_hamiltonian(f, Basis::diabatic) * u.adjoint() +
           std::complex<double>(0, 1) * du * u.adjoint();
}

} // namespace

TEST_CASE("rotating frame") {
    RotatingFieldParams p{1.0, 0.0};
    FrameAngles f = rotating_frame(3.0, p);
    CHECK(f.eta == 0.0);
    CHECK(f.w_gap == doctest::Approx(1.0));

    p.omega = 0.1;
    f = rotating_frame(5.0, p);
    CHECK(f.eta == doctest::Approx(0.09967).epsilon(1e-4));
    CHECK(f.w_gap == doctest::Approx(1.00499).epsilon(1e-5));
    CHECK(f.theta == doctest::Approx(0.5));
    CHECK(f.eta_dot == 0.0);
    CHECK(rotating_frame(M_PI / 0.1, p).theta == doctest::Approx(M_PI));
    CHECK(rotating_frame(-2.0, p).theta == 0.0);
    CHECK_THROWS_AS(RotatingFieldParams({0.0, 0.1}).validate(), ValidationError);
}

TEST_CASE("landau-zener frame") {
    const LZParams p{1.0, 0.5};
    const FrameAngles f = lz_frame(0.0, p);
    CHECK(f.theta == doctest::Approx(M_PI / 2));
    CHECK(f.eta == doctest::Approx(0.46365).epsilon(1e-5));
    CHECK(f.w_gap == doctest::Approx(1.11803).epsilon(1e-5));
    CHECK(f.eta_dot == 0.0);

    const FrameAngles far = lz_frame(-1e4, p);
    CHECK(far.theta < 1e-3);
    CHECK(far.eta < 1e-9);
    CHECK(far.w_gap == doctest::Approx(5e3).epsilon(1e-6));

    const FrameAngles slow = lz_frame(3.0, LZParams{1.0, 1e-6});
    CHECK(slow.eta < 1e-6);
    CHECK(slow.w_gap == doctest::Approx(slow.e_gap).epsilon(1e-12));

    CHECK(LZParams{1.0, 2.0}.beyond_truncation_accuracy());
    CHECK_FALSE(p.beyond_truncation_accuracy());
    CHECK_THROWS_AS(LZParams({1.0, 0.0}).validate(), ValidationError);
}

TEST_CASE("landau-zener frame symmetry and bounds") {
    const LZParams p{1.0, 0.7};
    const double eta0 = lz_frame(0.0, p).eta;
    for (double t : {0.1, 0.8, 2.5, 17.0, 300.0}) {
        const FrameAngles a = lz_frame(t, p), b = lz_frame(-t, p);
        CHECK(b.theta == doctest::Approx(M_PI - a.theta).epsilon(1e-14));
        CHECK(b.eta == doctest::Approx(a.eta).epsilon(1e-14));
        CHECK(b.eta_dot == doctest::Approx(-a.eta_dot).epsilon(1e-14));
        CHECK(a.eta <= eta0);
        CHECK(a.eta <= p.v);
        CHECK(a.w_gap >= a.e_gap);
        CHECK(a.e_gap >= p.delta);
    }
}

TEST_CASE("eta_dot and theta_dot are the time derivatives") {
    const LZParams p{1.0, 0.5};
    const double h = 1e-6;
    for (double t : {-3.0, -0.4, 0.7, 2.0}) {
        const FrameAngles f = lz_frame(t, p);
        const double deta = (lz_frame(t + h, p).eta - lz_frame(t - h, p).eta) / (2 * h);
        const double dtheta = (lz_frame(t + h, p).theta - lz_frame(t - h, p).theta) / (2 * h);
        CHECK(f.eta_dot == doctest::Approx(deta).epsilon(1e-7));
        CHECK(f.theta_dot == doctest::Approx(dtheta).epsilon(1e-7));
    }
}

TEST_CASE("effective hamiltonians") {
    const FrameAngles still = rotating_frame(1.0, RotatingFieldParams{1.0, 0.0});
    CHECK(max_abs(effective_hamiltonian(still, Basis::adiabatic) + 0.5 * pauli::z()) < 1e-15);

    const FrameAngles rot = rotating_frame(2.0, RotatingFieldParams{1.0, 0.1});
    Eigen::SelfAdjointEigenSolver<Mat2> es(effective_hamiltonian(rot, Basis::eigen));
    CHECK(es.eigenvalues()(0) == doctest::Approx(-rot.w_gap / 2).epsilon(1e-14));
    CHECK(es.eigenvalues()(1) == doctest::Approx(rot.w_gap / 2).epsilon(1e-14));

    const Mat2 h1 = effective_hamiltonian(lz_frame(0.0, LZParams{1.0, 0.5}), Basis::adiabatic);
    // sigma_y coefficient magnitude v / (2 Delta)
    CHECK(std::abs(h1(1, 0).imag()) == doctest::Approx(0.25));

    SUBCASE("gauge terms match the transformation") {
        const LZParams p{1.0, 0.5};
        for (double t : {-2.0, 0.0, 0.9}) {
            for (Basis lv : {Basis::adiabatic, Basis::eigen}) {
                const Mat2 expected = effective_hamiltonian(lz_frame(t, p), lv);
                CHECK(max_abs(transformed_hamiltonian(t, p, lv) - expected) < 1e-8);
            }
        }
    }
}

TEST_CASE("ground state of the adiabatic hamiltonian has my = -theta_dot / W") {
    const FrameAngles f = rotating_frame(4.0, RotatingFieldParams{1.0, 0.1});
    Eigen::SelfAdjointEigenSolver<Mat2> es(effective_hamiltonian(f, Basis::adiabatic));
    const Eigen::Vector2cd g = es.eigenvectors().col(0);
    const Mat2 rho1 = g * g.adjoint();
    const Mat2 u = frame_unitary(f, Basis::adiabatic);
    const Mat2 lab = u.adjoint() * rho1 * u;
    const double my = (pauli::y() * lab).trace().real();
    CHECK(my == doctest::Approx(-0.1 / f.w_gap).epsilon(1e-12));
}

TEST_CASE("transformed coupling") {
    const FrameAngles still = rotating_frame(1.0, RotatingFieldParams{1.0, 0.0});
    const EffectiveCoupling y0 = transformed_coupling(CouplingMode::perp_y, still);
    CHECK(std::abs(y0.c.y()) == doctest::Approx(1.0));
    CHECK(y0.flip_weight == doctest::Approx(1.0));

    const FrameAngles f0 = rotating_frame(0.0, RotatingFieldParams{1.0, 0.1});
    const EffectiveCoupling z0 = transformed_coupling(CouplingMode::inplane_z, f0);
    CHECK(z0.c.x() == doctest::Approx(0.0));
    CHECK(std::abs(z0.c.y()) == doctest::Approx(0.0995037).epsilon(1e-6));
    CHECK(z0.c.z() == doctest::Approx(-0.99504).epsilon(1e-5));

    const EffectiveCoupling py = transformed_coupling(CouplingMode::perp_y, f0);
    CHECK(py.c.y() == doctest::Approx(std::cos(f0.eta)));
    CHECK(py.c.z() == doctest::Approx(-std::sin(f0.eta)));

    const EffectiveCoupling lz0 = transformed_coupling(CouplingMode::inplane_z, lz_frame(0.0, LZParams{}));
    CHECK(lz0.flip_weight == doctest::Approx(1.0));

    CHECK_THROWS_AS(transformed_coupling(CouplingMode::perp_y, lz_frame(0.0, LZParams{})),
                    ConfigError);
}

TEST_CASE("transformed coupling is a unit vector") {
    for (double t : {0.0, 3.0, 17.0, 40.0}) {
        const FrameAngles f = rotating_frame(t, RotatingFieldParams{1.0, 0.3});
        for (auto m : {CouplingMode::perp_y, CouplingMode::inplane_z, CouplingMode::longitudinal}) {
            const EffectiveCoupling c = transformed_coupling(m, f);
            CHECK(std::abs(c.c.squaredNorm() - 1.0) < 1e-12);
            CHECK(c.flip_weight + c.dephasing_weight == doctest::Approx(1.0).epsilon(1e-12));
        }
        const EffectiveCoupling lon = transformed_coupling(CouplingMode::longitudinal, f);
        CHECK(lon.flip_weight == doctest::Approx(std::pow(std::sin(f.eta), 2)).epsilon(1e-12));
    }
    for (double t : {-5.0, -0.3, 0.0, 2.0}) {
        const FrameAngles f = lz_frame(t, LZParams{1.0, 0.5});
        const EffectiveCoupling tr = transformed_coupling(CouplingMode::inplane_z, f);
        const double g = std::pow(std::sin(f.eta), 2) +
                         std::pow(std::sin(f.theta) * std::cos(f.eta), 2);
        CHECK(tr.flip_weight == doctest::Approx(g).epsilon(1e-12));
        CHECK(tr.dephasing_weight ==
              doctest::Approx(std::pow(std::cos(f.eta) * std::cos(f.theta), 2)).epsilon(1e-12));
    }
}

TEST_CASE("basis names") {
    for (auto b : {Basis::diabatic, Basis::adiabatic, Basis::eigen})
        CHECK(basis_from_string(to_string(b)) == b);
    CHECK_THROWS_AS(basis_from_string("polar"), ConfigError);
}

#include <cmath>

#include "doctest.h"
#include "qslit/free_propagators.hpp"
#include "qslit/numerics.hpp"
#include "test_util.hpp"

using namespace qslit;
using testutil::rel_err;
using testutil::uniform;

TEST_SUITE("free_propagators") {

TEST_CASE("particle and boundary condition basics") {
    CHECK_THROWS_AS((Particle{0.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((Particle{1.0, -1.0}.validate()), DomainError);
    const auto d = BoundaryCondition::dirichlet();
    CHECK(d.eta1() == cplx(0.0));
    CHECK(d.eta2() == cplx(1.0));
    const auto n = BoundaryCondition::neumann();
    CHECK(n.eta1() == cplx(1.0));
    CHECK(n.eta2() == cplx(0.0));
    const auto f = BoundaryCondition::free();
    CHECK(f.eta1() == cplx(0.5));
    CHECK(f.eta2() == cplx(0.5));
    const auto e = BoundaryCondition::from_eta(0.3, 0.7);
    CHECK(std::abs(e.eta1() - 0.3) < 1e-16);
    CHECK(std::abs(e.eta2() - 0.7) < 1e-16);
}

TEST_CASE("free propagators: causality, singular time and reference values") {
    const Particle p{};
    CHECK(g0_free({0.3, 0.1, 0.0}, -1.0, p) == cplx(0.0));
    CHECK(g0_free_1d(0.3, -1.0, p) == cplx(0.0));
    CHECK_THROWS_AS(g0_free({0.0, 0.0, 0.0}, 0.0, p), SingularTimeError);
    CHECK_THROWS_AS(g0_free_1d(0.0, 0.0, p), SingularTimeError);
    // (1/(2 i pi))^{3/2} with 1/(2i) = e^{-i pi/2}/2 on the principal root.
    const cplx ref3 = std::pow(1.0 / (2.0 * pi), 1.5) * std::polar(1.0, -0.75 * pi);
    CHECK(rel_err(g0_free({0.0, 0.0, 0.0}, 1.0, p), ref3) < 1e-15);
    const cplx ref1 = std::sqrt(1.0 / (2.0 * pi)) * std::polar(1.0, -0.25 * pi);
    CHECK(rel_err(g0_free_1d(0.0, 1.0, p), ref1) < 1e-15);
    const cplx prod = g0_free_1d(1.0, 0.5, p) * g0_free_1d(0.0, 0.5, p) * g0_free_1d(0.0, 0.5, p);
    CHECK(rel_err(g0_free({1.0, 0.0, 0.0}, 0.5, p), prod) < 1e-14);
}

TEST_CASE("semigroup property of the 1D kernel") {
    // Checked at complex times t(1 - i/2), where the Gaussians decay and the
    // real-line convolution converges absolutely; the identity is analytic in t.
    const Particle p{1.3, 0.8};
    QuadratureSpec s;
    s.relative_tolerance = 1e-11;
    for (int k = 0; k < 10; ++k) {
        const double x = uniform(-2, 2), x0 = uniform(-2, 2), t = uniform(0.2, 2.0), sfrac = uniform(0.1, 0.9);
        const cplx tt = t * cplx(1.0, -0.5);
        const cplx ts = sfrac * tt;
        auto f = [&](double y) { return g0_free_1d(x - y, tt - ts, p) * g0_free_1d(y - x0, ts, p); };
        const cplx lhs = integrate_1d(f, -60.0, 60.0, s).value;
        CHECK(rel_err(lhs, g0_free_1d(x - x0, tt, p)) < 1e-6);
    }
}

TEST_CASE("gravity propagator: zero field, on-axis phase and PDE residual") {
    const Particle p{};
    const SpacetimePoint a{{0.3, -0.2, 0.5}, 1.2}, b{{-0.1, 0.4, 0.2}, 0.3};
    CHECK(g_gravity(a, b, p, 0.0) == g0_free(a.r - b.r, 0.9, p));
    const double dt = 0.9;
    const SpacetimePoint a0{{0.3, -0.2, 0.0}, 1.2}, b0{{-0.1, 0.4, 0.0}, 0.3};
    const double g = 1.7;
    const cplx expect = g0_free(a0.r - b0.r, dt, p) * std::exp(-I * (p.mass * g * g * dt * dt * dt / (24.0 * p.hbar)));
    CHECK(rel_err(g_gravity(a0, b0, p, g), expect) < 1e-14);
    CHECK_THROWS_AS(g_gravity(b, a, p, g), CausalityError);
    CHECK_THROWS_AS(g_gravity(a, a, p, g), SingularTimeError);

    // i hbar dG/dt = -hbar^2/(2m) lap G - m g z G, by finite differences.
    const Particle q{1.0, 1.0};
    for (int k = 0; k < 10; ++k) {
        const Vec3 ra{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
        const Vec3 rb{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
        const double tb = 0.0, ta = uniform(0.6, 1.5), gg = uniform(0.0, 3.0);
        auto G = [&](const Vec3& r, double t) { return g_gravity(SpacetimePoint{r, t}, SpacetimePoint{rb, tb}, q, gg); };
        const double h = 1e-3;
        const cplx g0 = G(ra, ta);
        // Fourth-order five-point stencils.
        const cplx dtg = (-G(ra, ta + 2 * h) + 8.0 * G(ra, ta + h) - 8.0 * G(ra, ta - h) + G(ra, ta - 2 * h)) / (12.0 * h);
        cplx lap = 0.0;
        for (int i = 0; i < 3; ++i) {
            auto at = [&](double d) {
                Vec3 s = ra;
                s[i] += d;
                return G(s, ta);
            };
            lap += (-at(2 * h) + 16.0 * at(h) - 30.0 * g0 + 16.0 * at(-h) - at(-2 * h)) / (12.0 * h * h);
        }
        const cplx residual = I * q.hbar * dtg + q.hbar * q.hbar / (2.0 * q.mass) * lap + q.mass * gg * ra[2] * g0;
        const double scale = std::abs(q.hbar * dtg) + std::abs(lap) / (2.0 * q.mass) + std::abs(q.mass * gg * ra[2] * g0);
        CHECK(std::abs(residual) / scale < 1e-6);
    }
}

TEST_CASE("gravity propagator tends to the free one as g -> 0") {
    const Particle p{};
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const SpacetimePoint a{{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)}, uniform(0.1, 3)};
        const SpacetimePoint b{{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)}, 0.0};
        worst = std::max(worst, rel_err(g_gravity(a, b, p, 1e-12), g0_free(a.r - b.r, a.t, p)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("boundary-condition Green combinations over random geometries") {
    const Particle p{0.7, 1.1};
    for (int k = 0; k < 100; ++k) {
        const double x1 = uniform(-1.0, 1.0);
        const Vec3 r1{x1, uniform(-1, 1), uniform(-1, 1)};
        const double tau = uniform(0.0, 1.0), t = tau + uniform(0.1, 2.0);
        // Dirichlet vanishes on the screen plane x = 0 (the slit plane).
        const Vec3 on_plane{0.0, uniform(-1, 1), uniform(-1, 1)};
        const cplx d = green_general(on_plane, t, r1, tau, BoundaryCondition::dirichlet(), p);
        CHECK(std::abs(d) <= 1e-14 * std::abs(g0_free(on_plane - r1, t - tau, p)));
        // Neumann: the derivative in x1 vanishes at x1 = 0.
        const Vec3 r{uniform(0.1, 2), uniform(-1, 1), uniform(-1, 1)};
        const double h = 1e-5;
        auto gn = [&](double xs) {
            return green_general(r, t, Vec3{xs, r1[1], r1[2]}, tau, BoundaryCondition::neumann(), p);
        };
        const cplx deriv = (gn(h) - gn(-h)) / (2.0 * h);
        CHECK(std::abs(deriv) * h / std::abs(gn(0.0)) < 1e-7);
        // Free: the bare propagator.
        const cplx f = green_general(r, t, r1, tau, BoundaryCondition::free(), p);
        CHECK(rel_err(f, g0_free(r - r1, t - tau, p)) < 1e-15);
    }
    CHECK_THROWS_AS(green_general({1, 0, 0}, 1.0, {0, 0, 0}, 1.0, BoundaryCondition::free(), p), CausalityError);
}

TEST_CASE("gaussian packet: peak, normalisation, momentum phase") {
    const double sigma = 0.3;
    const Vec3 r0{0.1, -0.2, 0.3};
    CHECK(std::abs(gaussian_packet(r0, r0, sigma, {0, 0, 0}) - std::pow(2.0 * pi * sigma * sigma, -0.75)) < 1e-14);
    CHECK_THROWS_AS(gaussian_packet(r0, r0, 0.0, {0, 0, 0}), DomainError);
    // |phi|^2 factorises into three 1D Gaussians; integrate one axis over 6 sigma.
    QuadratureSpec s;
    s.relative_tolerance = 1e-12;
    const QuadratureResult axis = integrate_1d(
        [&](double u) {
            const cplx v = gaussian_packet({r0[0] + u, r0[1], r0[2]}, r0, sigma, {0, 0, 0});
            return cplx(std::norm(v) / std::norm(gaussian_packet(r0, r0, sigma, {0, 0, 0})));
        },
        -6.0 * sigma, 6.0 * sigma, s);
    const double peak = std::norm(gaussian_packet(r0, r0, sigma, {0, 0, 0}));
    const double one_d = axis.value.real();
    CHECK(std::fabs(peak * one_d * one_d * one_d - 1.0) < 1e-6);
    const Vec3 R{0.4, 0.1, -0.2};
    CHECK(std::abs(gaussian_packet(R, r0, sigma, {3, -2, 5})) ==
          doctest::Approx(std::abs(gaussian_packet(R, r0, sigma, {0, 0, 0}))).epsilon(1e-14));
}

}  // TEST_SUITE

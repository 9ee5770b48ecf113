#include <cmath>
#include <vector>

#include "doctest.h"
#include "qslit/analysis.hpp"
#include "qslit/approx.hpp"
#include "qslit/point_source.hpp"
#include "test_util.hpp"

using namespace qslit;
using testutil::rel_err;
using testutil::uniform;

namespace {

TruncationScenario long_distance(double t) {
    TruncationScenario sc;
    sc.x0 = -50.0;
    sc.x = 50.0;
    sc.t = t;
    return sc;
}

// Direct quadrature of the slit integral with Gaussian transverse kernels.
cplx truncation_by_quadrature(const TruncationScenario& sc, double y, double z) {
    const Particle& p = sc.particle;
    const double tc = classical_time(sc.x0, sc.x1, sc.x, sc.t);
    const SlitRect& s = sc.slits.front();
    auto f = [&](double z1, double y1) {
        return g0_free_1d(z - z1, sc.t - tc, p) * g0_free_1d(z1 - sc.z0, tc, p) * g0_free_1d(y - y1, sc.t - tc, p) *
               g0_free_1d(y1 - sc.y0, tc, p);
    };
    const Rect r{s.center_z - s.half_z, s.center_z + s.half_z, s.center_y - s.half_y, s.center_y + s.half_y};
    return g0_free_1d(sc.x - sc.x0, sc.t, p) * integrate_2d(f, r, QuadratureSpec{1e-12, 0.0, 4000, pi}).value;
}

}  // namespace

TEST_SUITE("approx") {

TEST_CASE("classical passage time") {
    CHECK(classical_time(-1.0, 0.0, 1.0, 0.005) == doctest::Approx(0.0025).epsilon(1e-15));
    CHECK(classical_time(-2.0, 0.0, 2.0, 3.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(classical_time(1.0, 0.0, 2.0, 1.0), GeometryError);
    CHECK_THROWS_AS(classical_time(-1.0, 0.0, 2.0, 0.0), DomainError);
    // Far from the axis the stationary time tends to the classical one.
    for (double z : {0.5, 1.0, 2.0}) {
        PointSourceGeometry g;
        g.r0 = {-50.0, 0.0, 0.0};
        g.r1 = {0.0, 0.0, 0.01};
        g.r = {50.0, 0.0, z};
        const double tc = classical_time(-50.0, 0.0, 50.0, 1.0);
        CHECK(std::fabs(tau_semiclassical(g) - tc) / tc < (z / 50.0) * (z / 50.0));
    }
}

TEST_CASE("Fresnel factor limits and symmetry") {
    const Particle p{};
    const cplx open = fresnel_factor(0.0, 1e4, 1.0, 0.5, p);
    CHECK(std::abs(open - cplx(1.0, 1.0)) < 1e-4);
    CHECK(std::abs(fresnel_factor(0.3, 0.2, 1.0, 0.4, p) - fresnel_factor(-0.3, 0.2, 1.0, 0.4, p)) < 1e-15);
    CHECK(std::abs(fresnel_window(0.3, 0.0, -0.2, 0.2, 1.0, 0.4, p) - fresnel_factor(0.3, 0.2, 1.0, 0.4, p)) < 1e-14);
    CHECK_THROWS_AS(fresnel_factor(0.0, 0.1, 1.0, 1.0, p), DomainError);
}

TEST_CASE("truncation closed form equals the slit quadrature") {
    for (int k = 0; k < 10; ++k) {
        TruncationScenario sc;
        sc.x0 = uniform(-2.0, -0.5);
        sc.x = uniform(0.5, 2.0);
        sc.t = uniform(0.5, 2.0);
        sc.slits = {SlitRect{0.0, 0.0, uniform(0.01, 0.3), uniform(0.01, 0.3)}};
        const double y = uniform(-0.5, 0.5), z = uniform(-0.5, 0.5);
        CHECK(rel_err(k_truncation(sc, y, z), truncation_by_quadrature(sc, y, z)) < 1e-8);
    }
}

TEST_CASE("Fraunhofer fringe spacing") {
    TruncationScenario sc = long_distance(0.005);
    const RegimeReport rep = regime_report(sc, 5.0);
    CHECK(rep.regime == Regime::fraunhofer);
    std::vector<double> z, v;
    for (int i = 0; i <= 2000; ++i) {
        z.push_back(5.0 * i / 2000.0);
        v.push_back(intensity_truncation(sc, 0.0, z.back()));
    }
    const FringeSet f = find_minima(z, v);
    REQUIRE(f.spacings.size() >= 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(f.spacings[i] == doctest::Approx(rep.fringe_spacing).epsilon(0.02));
}

TEST_CASE("several slits add linearly") {
    TruncationScenario two;
    two.slits = {SlitRect{0.05, 0.0, 0.01, 0.1}, SlitRect{-0.05, 0.02, 0.02, 0.1}};
    TruncationScenario a = two, b = two;
    a.slits = {two.slits[0]};
    b.slits = {two.slits[1]};
    for (double z : {0.0, 0.3, -1.2}) {
        CHECK(rel_err(k_truncation(two, 0.1, z), k_truncation(a, 0.1, z) + k_truncation(b, 0.1, z)) < 1e-14);
    }
}

TEST_CASE("screen probability integrates to one") {
    TruncationScenario sc;
    sc.slits = {SlitRect{0.0, 0.0, 0.3, 0.2}};
    const Particle& p = sc.particle;
    const double tc = classical_time(sc.x0, sc.x1, sc.x, sc.t);
    const double gamma = 2.0;
    const double kappa = std::sqrt(p.mass * sc.t / (pi * p.hbar * tc * (sc.t - tc)));
    // One transverse axis: int |W|^2 dz = 4 a gamma; the far tail averages
    // 8 / (pi kappa z)^2 on each side and is added analytically.
    const double a = sc.slits[0].half_z;
    const double Z = 200.0;
    auto f = [&](double z) -> cplx { return std::norm(fresnel_window(z, 0.0, -a, a, sc.t, tc, p)); };
    auto rate = [&](double) { return pi * kappa * kappa * a * tc / sc.t * 2.0; };
    const double core = integrate_1d(f, -Z, Z, QuadratureSpec{1e-10, 0.0, 4000, pi}, rate).value.real();
    const double tail = 16.0 / (pi * pi * kappa * kappa * Z);
    CHECK((core + tail) / (4.0 * a * gamma) == doctest::Approx(1.0).epsilon(1e-3));

    for (double y : {0.0, 0.4}) {
        for (double z : {0.1, -0.7}) {
            const double b = sc.slits[0].half_y;
            const double wz = std::norm(fresnel_window(z, 0.0, -a, a, sc.t, tc, p));
            const double wy = std::norm(fresnel_window(y, 0.0, -b, b, sc.t, tc, p));
            CHECK(probability_truncation(sc, y, z) == doctest::Approx(wz * wy / (16.0 * a * b * gamma * gamma)));
        }
    }
}

TEST_CASE("fourth-order correction reduces to truncation on axis") {
    TruncationScenario sc = long_distance(0.05);
    for (double y : {0.0, 0.05}) {
        CHECK(std::abs(k_fourth_order(sc, y, 0.0, false) - k_truncation(sc, y, 0.0)) == 0.0);
    }
    const double d1 = std::abs(k_fourth_order(sc, 0.0, 0.1, false) - k_truncation(sc, 0.0, 0.1));
    const double d2 = std::abs(k_fourth_order(sc, 0.0, 0.2, false) - k_truncation(sc, 0.0, 0.2));
    CHECK(std::log(d2 / d1) / std::log(2.0) == doctest::Approx(2.0).epsilon(0.1));
    const cplx with = k_fourth_order(sc, 0.0, 1.0, true);
    CHECK(rel_err(with, sigma_axial(sc) * k_fourth_order(sc, 0.0, 1.0, false)) < 1e-15);
}

TEST_CASE("primed quantities") {
    const double L = 10.0, gamma = 2.0;
    const double z = std::sqrt(0.1 * gamma * L * L);
    CHECK(primed_fresnel_number(3.0, z, gamma, L) == doctest::Approx(2.7));
    CHECK(primed_half_width(0.01, 0.5, 1.0, 0.0, L) == 0.01);
    CHECK(primed_classical_time(0.5, 1.0, 0.0, L) == 0.5);
    CHECK(primed_classical_time(0.5, 1.0, 1.0, L) == doctest::Approx(0.5 * (1.0 - 0.005)));
}

TEST_CASE("regime report for the long-distance figure") {
    const double t_values[3] = {1.0, 0.05, 0.005};
    const double q_expect[3] = {1.11, 0.0555, 0.00555};
    const double mu_expect[3] = {2500.0, 5e4, 5e5};
    const double nfa_printed[3] = {3e-5, 6e-4, 6e-3};
    for (int i = 0; i < 3; ++i) {
        const RegimeReport r = regime_report(long_distance(t_values[i]), 5.0);
        CHECK(r.q == doctest::Approx(q_expect[i]).epsilon(0.01));
        CHECK(r.mu == doctest::Approx(mu_expect[i]).epsilon(1e-12));
        CHECK(r.N_F_a / nfa_printed[i] < 3.0);
        CHECK(nfa_printed[i] / r.N_F_a < 3.0);
        CHECK(r.lambda == doctest::Approx(r.lambda0 * r.lambda0 / 100.0).epsilon(1e-15));
        CHECK(r.t_c == doctest::Approx(t_values[i] / 2.0));
        CHECK(r.regime == Regime::fraunhofer);
    }
    const RegimeReport left = regime_report(long_distance(1.0), 5.0);
    CHECK(left.N_F_b / 3e-3 < 3.0);
    const RegimeReport right = regime_report(long_distance(0.005), 5.0);
    CHECK(right.N_F_b / 6e-1 < 3.0);

    TruncationScenario wide;
    wide.slits = {SlitRect{0.0, 0.0, 5.0, 5.0}};
    CHECK(regime_report(wide, 1.0).regime == Regime::fresnel);
    RegimeThresholds th{1e-9, 1e9};
    CHECK(regime_report(wide, 1.0, th).regime == Regime::intermediate);
}

TEST_CASE("fringe shift law") {
    CHECK(fringe_shift_prediction(0.0, 2.0, 50.0) == 0.0);
    CHECK(fringe_shift_prediction(3.0, 0.5, 3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(fringe_shift_prediction(1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("scenario validation") {
    TruncationScenario sc;
    sc.x1 = 2.0;
    CHECK_THROWS_AS(k_truncation(sc, 0.0, 0.0), GeometryError);
    sc = TruncationScenario{};
    sc.slits.clear();
    CHECK_THROWS_AS(k_truncation(sc, 0.0, 0.0), GeometryError);
    sc = TruncationScenario{};
    sc.slits[0].half_z = 0.0;
    CHECK_THROWS_AS(k_truncation(sc, 0.0, 0.0), GeometryError);
    sc = TruncationScenario{};
    sc.t = -1.0;
    CHECK_THROWS_AS(k_truncation(sc, 0.0, 0.0), DomainError);
}

}  // TEST_SUITE

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "qslit/numerics.hpp"
#include "test_util.hpp"

using namespace qslit;
using testutil::uniform;

namespace {

QuadratureSpec tight(double rel = 1e-13) {
    QuadratureSpec s;
    s.relative_tolerance = rel;
    s.absolute_tolerance = 1e-15;
    s.max_subdivisions = 20000;
    return s;
}

// Fresnel integrals by direct adaptive quadrature of their definitions.
cplx fresnel_by_quadrature(double u) {
    if (u == 0.0) return 0.0;
    const double lo = std::min(0.0, u), hi = std::max(0.0, u);
    const QuadratureResult r = integrate_1d([](double w) { return std::exp(I * (0.5 * pi * w * w)); }, lo, hi,
                                            tight(), [](double w) { return pi * std::fabs(w); });
    return u > 0 ? r.value : -r.value;
}

// erfc from the Maclaurin series of erf in 50-digit complex arithmetic.
cplx erfc_series_oracle(cplx z) {
    using boost::multiprecision::cpp_complex_50;
    using Real = cpp_complex_50::value_type;
    const cpp_complex_50 zz(z.real(), z.imag());
    const cpp_complex_50 z2 = zz * zz;
    cpp_complex_50 term = zz;  // z^{2n+1} (-1)^n / n!
    cpp_complex_50 sum = zz;
    for (int n = 1; n < 400; ++n) {
        term *= -z2 / Real(n);
        const cpp_complex_50 add = term / Real(2 * n + 1);
        sum += add;
        if (abs(add) < Real("1e-45") * abs(sum)) break;
    }
    const Real two_over_sqrt_pi = Real(2) / sqrt(boost::math::constants::pi<Real>());
    const cpp_complex_50 erfc = cpp_complex_50(1) - two_over_sqrt_pi * sum;
    return {static_cast<double>(erfc.real()), static_cast<double>(erfc.imag())};
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("fresnel integrals: zero, odd symmetry and quadrature values") {
    CHECK(fresnel_c(0.0) == 0.0);
    CHECK(fresnel_s(0.0) == 0.0);
    CHECK(fresnel_c(-1.3) == doctest::Approx(-fresnel_c(1.3)).epsilon(1e-15));
    CHECK(fresnel_s(-0.7) == doctest::Approx(-fresnel_s(0.7)).epsilon(1e-15));
    const cplx q = fresnel_by_quadrature(1.0);
    CHECK(std::fabs(fresnel_c(1.0) - q.real()) < 1e-12);
    CHECK(std::fabs(fresnel_s(1.0) - q.imag()) < 1e-12);
    CHECK_THROWS_AS(fresnel_c(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(fresnel_s(std::nan("")), DomainError);
}

TEST_CASE("fresnel integrals agree with quadrature on 1000 random arguments") {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double u = uniform(-10.0, 10.0);
        const cplx q = fresnel_by_quadrature(u);
        worst = std::max({worst, std::fabs(fresnel_c(u) - q.real()), std::fabs(fresnel_s(u) - q.imag())});
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("fresnel integrals at large argument follow the asymptotic expansion") {
    for (double u : {50.0, 300.0, 1000.0}) {
        const double ph = 0.5 * pi * u * u;
        // C ~ 1/2 + sin(ph)/(pi u) - cos(ph)/(pi^2 u^3), S ~ 1/2 - cos(ph)/(pi u) - sin(ph)/(pi^2 u^3)
        const double s = std::sin(ph), c = std::cos(ph);
        const double tol = 5.0 / std::pow(u, 5) + 1e-13;
        CHECK(std::fabs(fresnel_c(u) - (0.5 + s / (pi * u) - c / (pi * pi * u * u * u))) < tol);
        CHECK(std::fabs(fresnel_s(u) - (0.5 - c / (pi * u) - s / (pi * pi * u * u * u))) < tol);
    }
}

TEST_CASE("complex erfc: identities and high-precision oracle") {
    CHECK(std::abs(erfc_complex(0.0) - cplx(1.0, 0.0)) < 1e-16);
    const cplx z{0.5, 0.5};
    CHECK(std::abs(erfc_complex(z) + erfc_complex(-z) - 2.0) < 1e-15);
    CHECK(testutil::rel_err(erfc_complex({1.0, 1.0}), erfc_series_oracle({1.0, 1.0})) < 1e-12);
    CHECK_THROWS_AS(erfc_complex({std::nan(""), 0.0}), DomainError);

    double worst = 0.0, worst_conj = 0.0;
    for (int k = 0; k < 300; ++k) {
        cplx w;
        if (k % 2 == 0) {
            // The strip used by the shutter closed form: arg = -pi/4 or 3 pi/4.
            w = uniform(-6.0, 6.0) * std::polar(1.0, -0.25 * pi);
        } else {
            w = {uniform(-4.0, 4.0), uniform(-4.0, 4.0)};
        }
        const cplx oracle = erfc_series_oracle(w);
        if (std::abs(oracle) > 1e-280) worst = std::max(worst, testutil::rel_err(erfc_complex(w), oracle));
        worst_conj = std::max(worst_conj, std::abs(erfc_complex(std::conj(w)) - std::conj(erfc_complex(w))) /
                                              std::max(1e-300, std::abs(erfc_complex(w))));
    }
    CHECK(worst < 1e-10);
    CHECK(worst_conj < 1e-14);
}

TEST_CASE("integrate_1d: basic values and error contract") {
    const QuadratureSpec s = tight(1e-12);
    CHECK(std::abs(integrate_1d([](double) { return cplx(1.0); }, 0.0, 1.0, s).value - 1.0) < 1e-15);
    QuadratureSpec osc = tight(1e-12);
    osc.absolute_tolerance = 1e-12;
    const QuadratureResult r = integrate_1d([](double w) { return std::exp(I * (50.0 * w)); }, 0.0, 2.0 * pi, osc);
    CHECK(std::abs(r.value) < 1e-10);
    const QuadratureResult f =
        integrate_1d([](double w) { return cplx(std::cos(0.5 * pi * w * w)); }, 0.0, 1.0, tight(1e-14));
    CHECK(std::fabs(f.value.real() - fresnel_c(1.0)) < 1e-13);
    CHECK(f.error <= std::max(s.absolute_tolerance, 1e-14 * std::abs(f.value)) * 10.0);
    CHECK_THROWS_AS(integrate_1d([](double) { return cplx(1.0); }, 1.0, 1.0, s), DomainError);
}

TEST_CASE("integrate_1d is exact on polynomials up to degree 10") {
    for (int deg = 0; deg <= 10; ++deg) {
        std::vector<double> c(std::size_t(deg) + 1);
        for (auto& ck : c) ck = uniform(-1.0, 1.0);
        const double a = uniform(-2.0, 0.0), b = uniform(0.5, 2.0);
        double exact = 0.0;
        for (int k = 0; k <= deg; ++k) exact += c[std::size_t(k)] * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
        const QuadratureResult r =
            integrate_1d([&](double w) { return cplx(polynomial_value(c, w)); }, a, b, tight(1e-13));
        CHECK(std::fabs(r.value.real() - exact) <= 1e-12 * std::max(1.0, std::fabs(exact)));
    }
}

TEST_CASE("integrate_1d reports convergence failure with the best estimate") {
    QuadratureSpec s = tight(1e-15);
    s.max_subdivisions = 3;
    try {
        integrate_1d([](double w) { return cplx(1.0 / std::sqrt(w)); }, 0.0, 1.0, s);
        FAIL("expected a ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::fabs(e.estimate().real() - 2.0) < 0.2);
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("integrate_1d with a phase-rate hint handles fast chirps") {
    // int_0^3 exp(i k w^2) dw = sqrt(pi/(2k)) (C + iS)(3 sqrt(2k/pi))
    const double k = 1000.0;
    const double scale = std::sqrt(2.0 * k / pi);
    const cplx exact = (fresnel_c(3.0 * scale) + I * fresnel_s(3.0 * scale)) / scale;
    QuadratureSpec s = tight(1e-11);
    const QuadratureResult r = integrate_1d([&](double w) { return std::exp(I * (k * w * w)); }, 0.0, 3.0, s,
                                            [&](double w) { return 2.0 * k * w; });
    CHECK(testutil::rel_err(r.value, exact) < 1e-9);
}

TEST_CASE("integrate_2d: unit square and separable integrands") {
    const QuadratureSpec s = tight(1e-12);
    CHECK(std::abs(integrate_2d([](double, double) { return cplx(1.0); }, Rect{0, 1, 0, 1}, s).value - 1.0) < 1e-14);
    auto g = [](double w) { return std::exp(I * (3.0 * w)); };
    const cplx gy = integrate_1d(g, -0.4, 1.1, s).value;
    const cplx gz = integrate_1d(g, 0.2, 0.9, s).value;
    const cplx both = integrate_2d([&](double u, double v) { return g(u) * g(v); }, Rect{0.2, 0.9, -0.4, 1.1}, s).value;
    CHECK(std::abs(both - gy * gz) < 1e-9);
}

TEST_CASE("real_roots_in_interval: simple polynomials and errors") {
    auto r1 = real_roots_in_interval({-0.5, 1.0}, 0.0, 1.0);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == doctest::Approx(0.5).epsilon(1e-14));
    // (t - 0.25)(t - 0.75) = t^2 - t + 0.1875
    auto r2 = real_roots_in_interval({0.1875, -1.0, 1.0}, 0.0, 1.0);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r2[1] == doctest::Approx(0.75).epsilon(1e-14));
    // Double root reported once.
    auto r3 = real_roots_in_interval({0.25, -1.0, 1.0}, 0.0, 1.0);
    REQUIRE(r3.size() == 1);
    CHECK(r3[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(real_roots_in_interval({0.0, 0.0, 0.0}, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(real_roots_in_interval({1.0, 1.0}, 1.0, 0.0), DomainError);
}

TEST_CASE("real_roots_in_interval finds every sign change of a dense scan") {
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(6);
        // Build from random roots so several fall inside (0, 1).
        std::vector<double> roots;
        for (int k = 0; k < 5; ++k) roots.push_back(uniform(-0.3, 1.3));
        c = {1.0};
        for (double r : roots) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i] -= r * c[i];
                next[i + 1] += c[i];
            }
            c = next;
        }
        const double lead = uniform(0.5, 2.0) * (trial % 2 ? -1.0 : 1.0);
        for (auto& ck : c) ck *= lead;
        const auto found = real_roots_in_interval(c, 0.0, 1.0);
        std::vector<double> scan;
        const int n = 1000000;
        double prev = polynomial_value(c, 0.0);
        for (int i = 1; i <= n; ++i) {
            const double x = double(i) / n;
            const double v = polynomial_value(c, x);
            if ((prev < 0.0) != (v < 0.0) && i < n) scan.push_back(x);
            prev = v;
        }
        for (double s : scan) {
            bool matched = false;
            for (double f : found) matched = matched || std::fabs(f - s) < 2e-6;
            CHECK(matched);
        }
        for (double f : found) CHECK(std::fabs(polynomial_value(c, f)) <= 1e-10);
    }
}

TEST_CASE("neville extrapolation is exact on polynomial data") {
    const std::vector<double> x{0.3, 0.2, 0.1};
    std::vector<cplx> y;
    for (double xi : x) y.push_back(cplx(2.0, -1.0) + 3.0 * xi - cplx(0.5, 2.0) * xi * xi);
    CHECK(std::abs(neville_at_zero(x, y) - cplx(2.0, -1.0)) < 1e-13);
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec s;
    s.relative_tolerance = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = QuadratureSpec{};
    s.max_subdivisions = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = QuadratureSpec{};
    s.panel_oscillation_budget = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

}  // TEST_SUITE

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "qslit/analysis.hpp"
#include "qslit/vec3.hpp"
#include "test_util.hpp"

using namespace qslit;
using testutil::uniform;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = lo + (hi - lo) * i / (n - 1);
    return z;
}

// sin^2(pi z / D) has minima at multiples of D.
std::vector<double> fringes(const std::vector<double>& z, double D, double offset = 0.0) {
    std::vector<double> v;
    for (double x : z) {
        const double s = std::sin(pi * (x - offset) / D);
        v.push_back(s * s + 0.05);
    }
    return v;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("minima of a periodic profile") {
    const double D = 0.7;
    const auto z = grid(0.1, 4.0, 397);
    const FringeSet f = find_minima(z, fringes(z, D));
    REQUIRE(f.minima_z.size() == 5);
    for (std::size_t i = 0; i < f.minima_z.size(); ++i) CHECK(std::fabs(f.minima_z[i] - D * (i + 1)) < 1e-3 * D);
    REQUIRE(f.spacings.size() == 4);
    for (double s : f.spacings) CHECK(s == doctest::Approx(D).epsilon(1e-3));
    CHECK(f.peak_amplitudes.size() == 4);

    const FringeSet w = find_minima(z, fringes(z, D), std::make_pair(1.0, 3.0));
    CHECK(w.minima_z.size() == 3);
}

TEST_CASE("constant or single-dip profiles have too few features") {
    const auto z = grid(0.0, 1.0, 50);
    CHECK_THROWS_AS(find_minima(z, std::vector<double>(50, 1.0)), InsufficientFeaturesError);
    std::vector<double> dip;
    for (double x : z) dip.push_back((x - 0.5) * (x - 0.5));
    CHECK_THROWS_AS(find_minima(z, dip), InsufficientFeaturesError);
    CHECK_THROWS_AS(find_minima({0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(find_minima({0.0, 2.0, 1.0, 3.0, 4.0}, {1.0, 0.0, 1.0, 0.0, 1.0}), ValidationError);
}

TEST_CASE("shallow ripples are not fringes") {
    const auto z = grid(0.0, 4.0, 401);
    std::vector<double> v = fringes(z, 1.0, 0.5);
    for (std::size_t i = 0; i < z.size(); ++i) v[i] += 1e-4 * std::sin(40.0 * pi * z[i]);
    const FringeSet f = find_minima(z, v);
    CHECK(f.minima_z.size() == 4);
}

TEST_CASE("minima are invariant under scaling and follow translations") {
    const double D = 0.9;
    const auto z = grid(0.0, 5.0, 1001);
    const FringeSet base = find_minima(z, fringes(z, D, 0.3));
    for (int k = 0; k < 20; ++k) {
        const double s = std::exp(uniform(-5.0, 5.0));
        std::vector<double> v = fringes(z, D, 0.3);
        for (double& x : v) x *= s;
        const FringeSet scaled = find_minima(z, v);
        REQUIRE(scaled.minima_z.size() == base.minima_z.size());
        for (std::size_t i = 0; i < base.minima_z.size(); ++i) {
            CHECK(std::fabs(scaled.minima_z[i] - base.minima_z[i]) < 1e-12);
        }
        const double c = uniform(-3.0, 3.0);
        std::vector<double> zc = z;
        for (double& x : zc) x += c;
        const FringeSet shifted = find_minima(zc, fringes(z, D, 0.3));
        REQUIRE(shifted.minima_z.size() == base.minima_z.size());
        for (std::size_t i = 0; i < base.minima_z.size(); ++i) {
            CHECK(std::fabs(shifted.minima_z[i] - base.minima_z[i] - c) < 1e-6 * D);
        }
    }
}

TEST_CASE("fringe comparison") {
    FringeSet ref;
    ref.minima_z = {1.0, 2.0, 3.0, 4.0};
    ref.spacings = {1.0, 1.0, 1.0};
    ShiftReport same = compare_fringes(ref, ref);
    CHECK(same.pairs == 4);
    for (double d : same.position_shifts) CHECK(d == 0.0);
    for (double d : same.spacing_shifts) CHECK(d == 0.0);
    CHECK(same.warnings.empty());

    FringeSet stretched = ref;
    for (double& z : stretched.minima_z) z *= 1.1;
    for (double& s : stretched.spacings) s *= 1.1;
    const ShiftReport r = compare_fringes(stretched, ref);
    for (double d : r.position_shifts) CHECK(d == doctest::Approx(0.1));
    for (double d : r.spacing_shifts) CHECK(d == doctest::Approx(0.1));
    CHECK(r.test.shifts_vs_reference == r.spacing_shifts);

    FringeSet shorter;
    shorter.minima_z = {1.0, 2.05};
    shorter.spacings = {1.05};
    const ShiftReport m = compare_fringes(shorter, ref);
    CHECK(m.pairs == 2);
    CHECK(m.warnings.size() == 1);
    CHECK(m.position_shifts[1] == doctest::Approx(0.025));

    FringeSet at_zero = ref;
    at_zero.minima_z[0] = 0.0;
    const ShiftReport zr = compare_fringes(ref, at_zero);
    CHECK(std::isnan(zr.position_shifts[0]));
}

TEST_CASE("envelope of a modulated profile") {
    const auto z = grid(-6.0, 6.0, 2401);
    std::vector<double> v, gauss;
    for (double x : z) {
        const double g = std::exp(-x * x / 8.0);
        const double c = std::cos(4.0 * pi * x);
        gauss.push_back(g);
        v.push_back(g * c * c);
    }
    const Envelope e = envelope(z, v);
    CHECK(e.peak_z.size() >= 40);
    double sq = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < e.z.size(); ++i) {
        const double g = std::exp(-e.z[i] * e.z[i] / 8.0);
        sq += (e.values[i] - g) * (e.values[i] - g);
        ref += g * g;
    }
    CHECK(std::sqrt(sq / ref) < 0.05);

    std::vector<double> mono;
    for (double x : z) mono.push_back(x);
    CHECK_THROWS_AS(envelope(z, mono), InsufficientFeaturesError);
}

TEST_CASE("interpolation, correlation and central width") {
    const std::vector<double> x{0.0, 1.0, 3.0};
    const std::vector<double> y{0.0, 2.0, 4.0};
    CHECK(interpolate_linear(x, y, 0.5) == doctest::Approx(1.0));
    CHECK(interpolate_linear(x, y, 2.0) == doctest::Approx(3.0));
    CHECK(interpolate_linear(x, y, -1.0) == 0.0);
    CHECK(interpolate_linear(x, y, 9.0) == 4.0);

    const std::vector<double> a{1.0, 2.0, 3.0, 5.0};
    std::vector<double> b;
    for (double v : a) b.push_back(3.0 * v - 1.0);
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
    for (double& v : b) v = -v;
    CHECK(pearson_correlation(a, b) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(pearson_correlation(a, {1.0, 1.0, 1.0, 1.0}), DegeneracyError);

    const auto z = grid(0.0, 5.0, 501);
    std::vector<double> peak, rising;
    for (double v : z) {
        peak.push_back(std::exp(-v * v));
        rising.push_back(v * v);
    }
    CHECK(central_peak_half_width(z, peak) == doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-3));
    CHECK(central_peak_half_width(z, rising) == std::numeric_limits<double>::infinity());
}

}  // TEST_SUITE

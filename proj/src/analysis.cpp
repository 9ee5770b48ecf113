#include "qslit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qslit {

namespace {

void check_profile(const std::vector<double>& z, const std::vector<double>& v, std::size_t min_samples) {
    if (z.size() != v.size()) throw ValidationError("profile: z and intensity lengths differ");
    if (z.size() < min_samples) {
        throw ValidationError("profile: need at least " + std::to_string(min_samples) + " samples");
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!std::isfinite(z[i]) || !std::isfinite(v[i])) throw ValidationError("profile: non-finite sample");
        if (i > 0 && !(z[i] > z[i - 1])) throw ValidationError("profile: z must increase strictly");
    }
}

// Vertex of the parabola through three points; falls back to the middle
// point if the three are collinear.
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double c2 = (d12 - d01) / (x2 - x0);
    if (c2 == 0.0) return {x1, y1};
    const double c1 = d01 - c2 * (x0 + x1);
    double xv = -c1 / (2.0 * c2);
    xv = std::clamp(xv, x0, x2);
    const double yv = y1 + (xv - x1) * (d01 + c2 * (xv - x0));
    return {xv, yv};
}

}  // namespace

FringeSet find_minima(const std::vector<double>& z_all, const std::vector<double>& v_all,
                      std::optional<std::pair<double, double>> window, const MinimaOptions& opts) {
    check_profile(z_all, v_all, 5);
    std::vector<double> z, v;
    for (std::size_t i = 0; i < z_all.size(); ++i) {
        if (!window || (z_all[i] >= window->first && z_all[i] <= window->second)) {
            z.push_back(z_all[i]);
            v.push_back(v_all[i]);
        }
    }
    if (z.size() < 5) throw ValidationError("find_minima: fewer than 5 samples inside the window");

    const std::size_t n = z.size();
    std::vector<std::size_t> accepted;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(v[i] < v[i - 1] && v[i] <= v[i + 1])) continue;
        double left = v[i];
        for (std::size_t j = i; j-- > 0;) {
            if (v[j] < v[i]) break;
            left = std::max(left, v[j]);
        }
        double right = v[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (v[j] < v[i]) break;
            right = std::max(right, v[j]);
        }
        if (v[i] < opts.depth_ratio * left && v[i] < opts.depth_ratio * right) accepted.push_back(i);
    }
    if (accepted.size() < 2) {
        throw InsufficientFeaturesError("find_minima: fewer than two fringe minima in the profile");
    }

    FringeSet fs;
    for (std::size_t i : accepted) {
        fs.minima_z.push_back(parabola_vertex(z[i - 1], v[i - 1], z[i], v[i], z[i + 1], v[i + 1]).first);
    }
    for (std::size_t k = 1; k < accepted.size(); ++k) {
        fs.spacings.push_back(fs.minima_z[k] - fs.minima_z[k - 1]);
        fs.peak_amplitudes.push_back(
            *std::max_element(v.begin() + std::ptrdiff_t(accepted[k - 1]), v.begin() + std::ptrdiff_t(accepted[k])));
    }
    return fs;
}

ShiftReport compare_fringes(const FringeSet& test, const FringeSet& reference) {
    if (test.minima_z.size() < 2 || reference.minima_z.size() < 2) {
        throw InsufficientFeaturesError("compare_fringes: each set needs at least two minima");
    }
    ShiftReport rep;
    rep.test = test;
    const std::size_t nm = std::min(test.minima_z.size(), reference.minima_z.size());
    if (test.minima_z.size() != reference.minima_z.size()) {
        rep.warnings.push_back("minima counts differ (" + std::to_string(test.minima_z.size()) + " vs " +
                               std::to_string(reference.minima_z.size()) + "); paired the first " +
                               std::to_string(nm));
    }
    rep.pairs = nm;
    for (std::size_t k = 0; k < nm; ++k) {
        const double zr = reference.minima_z[k];
        rep.position_shifts.push_back(zr != 0.0 ? test.minima_z[k] / zr - 1.0
                                                : std::numeric_limits<double>::quiet_NaN());
    }
    const std::size_t ns = std::min(test.spacings.size(), reference.spacings.size());
    for (std::size_t k = 0; k < ns; ++k) {
        rep.spacing_shifts.push_back((test.spacings[k] - reference.spacings[k]) / reference.spacings[k]);
    }
    rep.test.shifts_vs_reference = rep.spacing_shifts;
    return rep;
}

Envelope envelope(const std::vector<double>& z, const std::vector<double>& v) {
    check_profile(z, v, 3);
    Envelope env;
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
            const auto [zp, vp] = parabola_vertex(z[i - 1], v[i - 1], z[i], v[i], z[i + 1], v[i + 1]);
            env.peak_z.push_back(zp);
            env.peak_values.push_back(std::max(vp, v[i]));
        }
    }
    if (env.peak_z.size() < 3) throw InsufficientFeaturesError("envelope: fewer than three peaks");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] < env.peak_z.front() || z[i] > env.peak_z.back()) continue;
        env.z.push_back(z[i]);
        env.values.push_back(interpolate_linear(env.peak_z, env.peak_values, z[i]));
    }
    return env;
}

double interpolate_linear(const std::vector<double>& x, const std::vector<double>& y, double xq) {
    if (x.empty() || x.size() != y.size()) throw ValidationError("interpolate_linear: bad samples");
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t k = std::size_t(it - x.begin());
    const double w = (xq - x[k - 1]) / (x[k] - x[k - 1]);
    return (1.0 - w) * y[k - 1] + w * y[k];
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) throw ValidationError("pearson_correlation: bad lengths");
    const double n = double(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) throw DegeneracyError("pearson_correlation: constant input");
    return sab / std::sqrt(saa * sbb);
}

double central_peak_half_width(const std::vector<double>& z, const std::vector<double>& v) {
    check_profile(z, v, 2);
    const double inf = std::numeric_limits<double>::infinity();
    if (!(v[0] > v[1])) return inf;
    const double half = 0.5 * v[0];
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (v[i] > v[i - 1]) return inf;  // rose again before reaching half height
        if (v[i] <= half) {
            const double w = (v[i - 1] - half) / (v[i - 1] - v[i]);
            return (z[i - 1] - z[0]) + w * (z[i] - z[i - 1]);
        }
    }
    return inf;
}

}  // namespace qslit

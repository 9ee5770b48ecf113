#include "qslit/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qslit/approx.hpp"
#include "qslit/parallel.hpp"

namespace qslit {

std::array<RectAperture, 2> DoubleSlitAperture::rects() const {
    return {RectAperture{half_width_y, half_height_z, 0.0, -center_offset_z},
            RectAperture{half_width_y, half_height_z, 0.0, center_offset_z}};
}

const char* to_string(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::semiclassical: return "semiclassical";
        case Method::truncation: return "truncation";
        case Method::fourth_order: return "fourth_order";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "exact") return Method::exact;
    if (s == "semiclassical") return Method::semiclassical;
    if (s == "truncation") return Method::truncation;
    if (s == "fourth_order" || s == "fourth-order") return Method::fourth_order;
    throw ValidationError("unknown method '" + s + "'");
}

std::string describe(const Aperture& a) {
    std::ostringstream os;
    if (const auto* r = std::get_if<RectAperture>(&a)) {
        os << "rect(b=" << r->half_width_y << ", a=" << r->half_height_z << ", centre=(" << r->center_y << ", "
           << r->center_z << "))";
    } else if (const auto* d = std::get_if<DoubleSlitAperture>(&a)) {
        os << "double(offset=" << d->center_offset_z << ", a=" << d->half_height_z << ", b=" << d->half_width_y
           << ")";
    } else {
        const auto& m = std::get<MaskAperture>(a);
        os << "mask(y=[" << m.y_lo << ", " << m.y_hi << "], z=[" << m.z_lo << ", " << m.z_hi << "])";
    }
    return os.str();
}

void ScreenGrid::validate() const {
    auto check_axis = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) throw ValidationError(std::string("screen grid: empty ") + name + " axis");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!std::isfinite(v[i])) throw ValidationError(std::string("screen grid: non-finite ") + name);
            if (i > 0 && !(v[i] > v[i - 1])) {
                throw ValidationError(std::string("screen grid: ") + name + " values must increase strictly");
            }
        }
    };
    check_axis(y_values, "y");
    check_axis(z_values, "z");
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("screen grid: t must be positive");
    if (!(x_screen > 0.0) || !std::isfinite(x_screen)) throw ValidationError("screen grid: x must be positive");
}

std::size_t PatternResult::unconverged_count() const {
    return static_cast<std::size_t>(std::count(unconverged.begin(), unconverged.end(), true));
}

QuadratureSpec default_aperture_spec() {
    QuadratureSpec s;
    s.relative_tolerance = 1e-8;
    return s;
}

namespace {

void validate_rect(const RectAperture& ap) {
    if (!(ap.half_width_y > 0.0) || !(ap.half_height_z > 0.0) || !std::isfinite(ap.half_width_y) ||
        !std::isfinite(ap.half_height_z) || !std::isfinite(ap.center_y) || !std::isfinite(ap.center_z)) {
        throw GeometryError("rectangular aperture: sizes must be positive and finite");
    }
}

cplx kernel(const PointSourceGeometry& base, double y1, double z1, Method method) {
    PointSourceGeometry g = base;
    g.r1 = {0.0, y1, z1};
    switch (method) {
        case Method::exact: return k_point_exact(g);
        case Method::semiclassical: return k_point_semiclassical(g);
        default: throw ValidationError("aperture quadrature: method must be exact or semiclassical");
    }
}

// Tolerance floor relative to the natural size area * |K(centre)| so that
// points where the aperture integral nearly cancels do not stall.
QuadratureSpec scaled_spec(const PointSourceGeometry& geo, double y1, double z1, double area, Method method,
                           const QuadratureSpec& spec) {
    QuadratureSpec s = spec;
    const double scale = area * std::abs(kernel(geo, y1, z1, method));
    s.absolute_tolerance = std::max(spec.absolute_tolerance, spec.relative_tolerance * scale);
    return s;
}

QuadratureResult integrate_rect(const PointSourceGeometry& geo, const RectAperture& ap, Method method,
                                const QuadratureSpec& spec) {
    const double area = 4.0 * ap.half_width_y * ap.half_height_z;
    const QuadratureSpec s = scaled_spec(geo, ap.center_y, ap.center_z, area, method, spec);
    const Rect rect{ap.center_z - ap.half_height_z, ap.center_z + ap.half_height_z, ap.center_y - ap.half_width_y,
                    ap.center_y + ap.half_width_y};
    auto f = [&](double z1, double y1) { return kernel(geo, y1, z1, method); };
    auto rate = [&](double z1, double y1) -> std::array<double, 2> {
        PointSourceGeometry g = geo;
        g.r1 = {0.0, y1, z1};
        const auto grad = phase_gradient_aperture(g);
        return {std::fabs(grad[1]), std::fabs(grad[0])};
    };
    return integrate_2d(f, rect, s, rate);
}

TruncationScenario truncation_scenario(const PointSourceGeometry& geo, const Aperture& ap) {
    TruncationScenario sc;
    sc.x0 = geo.r0[0];
    sc.x1 = 0.0;
    sc.x = geo.r[0];
    sc.y0 = geo.r0[1];
    sc.z0 = geo.r0[2];
    sc.t = geo.t;
    sc.particle = geo.particle;
    sc.bc = geo.bc;
    sc.slits.clear();
    auto add = [&](const RectAperture& r) {
        validate_rect(r);
        sc.slits.push_back(SlitRect{r.center_z, r.center_y, r.half_height_z, r.half_width_y});
    };
    if (const auto* r = std::get_if<RectAperture>(&ap)) {
        add(*r);
    } else if (const auto* d = std::get_if<DoubleSlitAperture>(&ap)) {
        for (const auto& r : d->rects()) add(r);
    } else {
        throw ValidationError("truncation methods need rectangular openings; masks are not supported");
    }
    return sc;
}

// Sorted y-intervals of the mask on the line z = const.
std::vector<std::pair<double, double>> mask_intervals(const MaskAperture& m, double z) {
    const int n = std::max(2, m.boundary_samples);
    const double h = (m.y_hi - m.y_lo) / n;
    std::vector<std::pair<double, double>> out;
    auto locate = [&](double lo, double hi, bool lo_inside) {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (m.indicator(mid, z) == lo_inside) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    bool prev = m.indicator(m.y_lo, z);
    double start = m.y_lo;
    for (int k = 1; k <= n; ++k) {
        const double y = (k == n) ? m.y_hi : m.y_lo + k * h;
        const bool cur = m.indicator(y, z);
        if (cur != prev) {
            const double edge = locate(y - h, y, prev);
            if (prev) out.emplace_back(start, edge); else start = edge;
            prev = cur;
        }
    }
    if (prev) out.emplace_back(start, m.y_hi);
    return out;
}

}  // namespace

QuadratureResult k_slit(const PointSourceGeometry& geo, const RectAperture& ap, Method method,
                        const QuadratureSpec& spec) {
    geo.validate();
    validate_rect(ap);
    return integrate_rect(geo, ap, method, spec);
}

QuadratureResult k_double_slit(const PointSourceGeometry& geo, const DoubleSlitAperture& ap, Method method,
                               const QuadratureSpec& spec) {
    geo.validate();
    QuadratureResult total{};
    for (const auto& r : ap.rects()) {
        validate_rect(r);
        const QuadratureResult part = integrate_rect(geo, r, method, spec);
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;
        total.panels += part.panels;
    }
    return total;
}

QuadratureResult k_mask(const PointSourceGeometry& geo, const MaskAperture& m, Method method,
                        const QuadratureSpec& spec) {
    geo.validate();
    if (!m.indicator) throw GeometryError("mask aperture: missing indicator");
    if (!(m.y_lo < m.y_hi) || !(m.z_lo < m.z_hi)) throw GeometryError("mask aperture: empty bounding box");

    // Area estimate on a coarse grid; also rejects empty masks.
    const int n = std::max(2, m.boundary_samples);
    int inside = 0;
    double yc = 0.0, zc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double y = m.y_lo + (i + 0.5) * (m.y_hi - m.y_lo) / n;
            const double z = m.z_lo + (j + 0.5) * (m.z_hi - m.z_lo) / n;
            if (m.indicator(y, z)) {
                ++inside;
                yc += y;
                zc += z;
            }
        }
    }
    if (inside == 0) throw GeometryError("mask aperture: indicator has no interior in its bounding box");
    const double area = (m.y_hi - m.y_lo) * (m.z_hi - m.z_lo) * inside / double(n * n);
    const QuadratureSpec s = scaled_spec(geo, yc / inside, zc / inside, area, method, spec);

    QuadratureSpec inner = s;
    inner.relative_tolerance = 0.25 * s.relative_tolerance;
    inner.absolute_tolerance = 0.25 * s.absolute_tolerance / (m.z_hi - m.z_lo);
    QuadratureSpec outer_spec = s;
    outer_spec.relative_tolerance = 0.5 * s.relative_tolerance;
    outer_spec.absolute_tolerance = 0.5 * s.absolute_tolerance;

    double worst_inner = 0.0;
    int evaluations = 0;
    auto line = [&](double z1) -> cplx {
        cplx sum = 0.0;
        for (const auto& [lo, hi] : mask_intervals(m, z1)) {
            if (!(hi > lo)) continue;
            auto rate = [&](double y1) {
                PointSourceGeometry g = geo;
                g.r1 = {0.0, y1, z1};
                return std::fabs(phase_gradient_aperture(g)[0]);
            };
            const QuadratureResult r =
                integrate_1d([&](double y1) { return kernel(geo, y1, z1, method); }, lo, hi, inner, rate);
            worst_inner = std::max(worst_inner, r.error);
            evaluations += r.evaluations;
            sum += r.value;
        }
        return sum;
    };
    auto outer_rate = [&](double z1) {
        PointSourceGeometry g = geo;
        g.r1 = {0.0, 0.5 * (m.y_lo + m.y_hi), z1};
        return std::fabs(phase_gradient_aperture(g)[1]);
    };
    QuadratureResult r = integrate_1d(line, m.z_lo, m.z_hi, outer_spec, outer_rate);
    r.error += worst_inner * (m.z_hi - m.z_lo);
    r.evaluations = evaluations;
    return r;
}

QuadratureResult k_aperture(const PointSourceGeometry& geo, const Aperture& ap, Method method,
                            const QuadratureSpec& spec) {
    if (method == Method::truncation || method == Method::fourth_order) {
        geo.validate();
        const TruncationScenario sc = truncation_scenario(geo, ap);
        QuadratureResult r{};
        r.value = method == Method::truncation ? k_truncation(sc, geo.r[1], geo.r[2])
                                               : k_fourth_order(sc, geo.r[1], geo.r[2]);
        return r;
    }
    return std::visit(
        [&](const auto& a) -> QuadratureResult {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, RectAperture>) return k_slit(geo, a, method, spec);
            else if constexpr (std::is_same_v<T, DoubleSlitAperture>) return k_double_slit(geo, a, method, spec);
            else return k_mask(geo, a, method, spec);
        },
        ap);
}

std::vector<double> trapezoid_weights(const std::vector<double>& x) {
    std::vector<double> w(x.size(), 0.0);
    if (x.size() == 1) {
        w[0] = 1.0;
        return w;
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = 0.5 * (x[i + 1] - x[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

namespace {

// Mean of the outermost tenth of a profile (at least one sample) beyond the
// given edge, used for a 1/s^2 tail estimate int_{|s_e|}^inf I_e s_e^2/s^2 ds.
double tail_mass(const std::vector<double>& coords, const std::vector<double>& profile, bool upper) {
    const std::size_t n = coords.size();
    if (n < 3) return 0.0;
    const double edge = upper ? coords.back() : coords.front();
    if ((upper && !(edge > 0.0)) || (!upper && !(edge < 0.0))) return 0.0;
    const std::size_t k = std::max<std::size_t>(1, n / 10);
    double mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) mean += profile[upper ? n - 1 - i : i];
    mean /= double(k);
    return mean * std::fabs(edge);
}

}  // namespace

void normalize_pattern(PatternResult& res, const std::vector<double>& y_values, const std::vector<double>& z_values) {
    const std::size_t total = res.ny * res.nz;
    if (y_values.size() != res.ny || z_values.size() != res.nz || res.amplitudes.size() != total) {
        throw ValidationError("normalize_pattern: grid and amplitude sizes disagree");
    }
    res.intensities.resize(total);
    for (std::size_t i = 0; i < total; ++i) res.intensities[i] = std::norm(res.amplitudes[i]);

    const auto wy = trapezoid_weights(y_values);
    const auto wz = trapezoid_weights(z_values);
    double omega = 0.0;
    for (std::size_t iy = 0; iy < res.ny; ++iy) {
        for (std::size_t iz = 0; iz < res.nz; ++iz) omega += wy[iy] * wz[iz] * res.intensities[res.index(iy, iz)];
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw NormalizationError("pattern: screen integral is zero or not finite");
    }
    res.omega = omega;
    res.probability_density.resize(total);
    for (std::size_t i = 0; i < total; ++i) res.probability_density[i] = res.intensities[i] / omega;

    // Tails beyond the window along each axis, integrated over the other axis.
    double tails = 0.0;
    {
        std::vector<double> pz(res.nz, 0.0), py(res.ny, 0.0);
        for (std::size_t iy = 0; iy < res.ny; ++iy) {
            for (std::size_t iz = 0; iz < res.nz; ++iz) {
                const double v = res.intensities[res.index(iy, iz)];
                pz[iz] += wy[iy] * v;
                py[iy] += wz[iz] * v;
            }
        }
        tails += tail_mass(z_values, pz, true) + tail_mass(z_values, pz, false);
        tails += tail_mass(y_values, py, true) + tail_mass(y_values, py, false);
    }
    res.captured_fraction = omega / (omega + tails);
}

PatternResult evaluate_pattern(const SlitScenario& sc, const ScreenGrid& grid, Method method,
                               const QuadratureSpec& spec, int threads) {
    grid.validate();
    spec.validate();
    sc.particle.validate();

    PatternResult res;
    res.ny = grid.y_values.size();
    res.nz = grid.z_values.size();
    res.method = method;
    res.bc = sc.bc;
    res.aperture = describe(sc.aperture);
    const std::size_t total = res.ny * res.nz;
    res.amplitudes.assign(total, cplx{});
    res.unconverged.assign(total, false);

    if (const auto* d = std::get_if<DoubleSlitAperture>(&sc.aperture); d && d->overlaps()) {
        res.warnings.push_back("double slit rectangles overlap; the overlap is counted twice");
    }

    auto geometry_at = [&](double y, double z) {
        PointSourceGeometry g;
        g.r0 = sc.r0;
        g.r1 = {0.0, 0.0, 0.0};
        g.r = {grid.x_screen, y, z};
        g.t = grid.t;
        g.bc = sc.bc;
        g.particle = sc.particle;
        return g;
    };
    geometry_at(grid.y_values.front(), grid.z_values.front()).validate();

    std::vector<char> flags(total, 0);  // vector<bool> is not safe for concurrent writes
    parallel_for(total, threads, [&](std::size_t idx) {
        const std::size_t iy = idx / res.nz;
        const std::size_t iz = idx % res.nz;
        const PointSourceGeometry g = geometry_at(grid.y_values[iy], grid.z_values[iz]);
        try {
            res.amplitudes[idx] = k_aperture(g, sc.aperture, method, spec).value;
        } catch (const ConvergenceError& e) {
            res.amplitudes[idx] = e.estimate();
            flags[idx] = 1;
        }
    });
    for (std::size_t i = 0; i < total; ++i) res.unconverged[i] = flags[i] != 0;
    if (res.unconverged_count() > 0) {
        res.warnings.push_back(std::to_string(res.unconverged_count()) +
                               " grid points did not reach the requested tolerance");
    }

    normalize_pattern(res, grid.y_values, grid.z_values);

    for (double y : {grid.y_values.front(), grid.y_values.back()}) {
        for (double z : {grid.z_values.front(), grid.z_values.back()}) {
            res.corner_diagnostics.push_back(diagnostics(geometry_at(y, z)));
        }
    }
    return res;
}

}  // namespace qslit

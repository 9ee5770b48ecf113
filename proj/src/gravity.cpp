#include "qslit/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qslit/parallel.hpp"

namespace qslit {

void GravityScenario::validate() const {
    particle.validate();
    if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("gravity scenario: g must be non-negative");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("gravity scenario: t must be positive");
    if (!(slit_z > 0.0)) throw GeometryError("gravity scenario: slit plane must lie at z > 0");
    if (!(half_x > 0.0) || !(half_y > 0.0)) throw GeometryError("gravity scenario: aperture sizes must be positive");
}

cplx chi(double t, cplx tau, double z, double z1, const BoundaryCondition& bc, double g) {
    const cplx e1 = bc.eta1();
    const cplx e2 = bc.eta2();
    return e1 * z1 / tau + e2 * (z - z1) / (t - tau) - I * e2 * g * t + I * (e1 + e2) * g * tau -
           I * (e1 - e2) * g * tau / 2.0;
}

cplx chi(double t, double tau, double z, double z1, const BoundaryCondition& bc, double g) {
    if (!(tau > 0.0 && tau < t)) throw DomainError("chi: requires 0 < tau < t");
    return chi(t, cplx(tau, 0.0), z, z1, bc, g);
}

namespace {

using Poly = std::vector<double>;

Poly mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

void add_scaled(Poly& acc, const Poly& p, double s) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += s * p[i];
}

double flat_tau(const Vec3& r, const Vec3& r1, double t) {
    const double n1 = norm(r1);
    const double n2 = norm(r - r1);
    return n1 * t / (n1 + n2);
}

}  // namespace

std::vector<double> gravity_quintic_coefficients(const Vec3& r, const Vec3& r1, double t, double g) {
    const double A = norm2(r - r1);
    const double B = norm2(r1);
    const Poly u{0.0, 1.0};
    const Poly w{t, -1.0};
    const Poly u2 = mul(u, u), w2 = mul(w, w);
    const Poly u4 = mul(u2, u2), w4 = mul(w2, w2);
    Poly P(7, 0.0);
    add_scaled(P, u2, A);
    add_scaled(P, w2, -B);
    add_scaled(P, mul(u2, w2), -g * r[2]);
    add_scaled(P, mul(u4, w2), -0.25 * g * g);
    add_scaled(P, mul(u2, w4), 0.25 * g * g);
    P.resize(7, 0.0);
    return P;
}

GravityRoots tau_sc_gravity(const Vec3& r, const Vec3& r1, double t, double g) {
    if (!(t > 0.0)) throw DomainError("tau_sc_gravity: t must be positive");
    if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("tau_sc_gravity: g must be non-negative");
    if (norm2(r1) == 0.0 || norm2(r - r1) == 0.0) {
        throw GeometryError("tau_sc_gravity: aperture point coincides with source or screen point");
    }
    auto roots_at = [&](double gk) {
        std::vector<double> c = gravity_quintic_coefficients(r, r1, t, gk);
        c.pop_back();  // the tau^6 term cancels
        while (c.size() > 1 && c.back() == 0.0) c.pop_back();
        return real_roots_in_interval(c, 0.0, t);
    };
    GravityRoots out;
    double tau = flat_tau(r, r1, t);
    if (g == 0.0) {
        out.tau = tau;
        out.all_roots = {tau};
        return out;
    }
    constexpr int kSteps = 10;
    for (int k = 1; k <= kSteps; ++k) {
        const std::vector<double> roots = roots_at(g * k / kSteps);
        if (roots.empty()) throw GeometryError("tau_sc_gravity: no stationary time in (0, t)");
        tau = *std::min_element(roots.begin(), roots.end(),
                                [&](double a, double b) { return std::fabs(a - tau) < std::fabs(b - tau); });
        if (k == kSteps) out.all_roots = roots;
    }
    out.tau = tau;
    return out;
}

double gravity_energy_residual(const Vec3& r, const Vec3& r1, double t, double tau, double g) {
    const Vec3 v0{r1[0] / tau, r1[1] / tau, r1[2] / tau - 0.5 * g * tau};
    const double s = t - tau;
    const Vec3 v1{(r[0] - r1[0]) / s, (r[1] - r1[1]) / s, (r[2] - r1[2]) / s - 0.5 * g * s};
    const double e0 = 0.5 * norm2(v0);
    const double e1 = 0.5 * norm2(v1);
    return (e0 - e1 + g * r1[2]) / (e0 + e1 + g * std::fabs(r1[2]));
}

double phi_sc_gravity(const Vec3& r, const Vec3& r1, double t, double tau, double g, const Particle& p) {
    const double s = t - tau;
    return p.mass / (2.0 * p.hbar) *
           (norm2(r - r1) / s + norm2(r1) / tau + g * (r[2] + r1[2]) * s + g * r1[2] * tau -
            g * g * (s * s * s + tau * tau * tau) / 12.0);
}

double omega_sc_gravity(const Vec3& r, const Vec3& r1, double t, double tau, double g, const Particle& p) {
    const double s = t - tau;
    return p.m_over_hbar() * (norm2(r - r1) / (s * s * s) + norm2(r1) / (tau * tau * tau)) -
           p.mass * g * g * t / (4.0 * p.hbar);
}

namespace {

void check_screen(const GravityScenario& sc, const Vec3& r) {
    sc.validate();
    if (!is_finite(r)) throw DomainError("gravity: non-finite screen point");
    if (!(r[2] > sc.slit_z)) throw GeometryError("gravity: screen point must lie beyond the slit plane");
}

QuadratureResult aperture_integral(const GravityScenario& sc, const Vec3& r,
                                   const std::function<cplx(double, double)>& point, const QuadratureSpec& spec) {
    const double area = 4.0 * sc.half_x * sc.half_y;
    QuadratureSpec s = spec;
    s.absolute_tolerance = std::max(spec.absolute_tolerance, spec.relative_tolerance * area * std::abs(point(0.0, 0.0)));
    const double k = sc.particle.m_over_hbar();
    // Zero-field phase gradient is enough to pre-split panels.
    auto rate = [&](double x1, double y1) -> std::array<double, 2> {
        const Vec3 r1{x1, y1, sc.slit_z};
        const double tau = flat_tau(r, r1, sc.t);
        const double s2 = sc.t - tau;
        return {std::fabs(k * (x1 / tau - (r[0] - x1) / s2)), std::fabs(k * (y1 / tau - (r[1] - y1) / s2))};
    };
    return integrate_2d(point, Rect{-sc.half_x, sc.half_x, -sc.half_y, sc.half_y}, s, rate);
}

}  // namespace

cplx k_gravity_point(const GravityScenario& sc, const Vec3& r, double x1, double y1, const ContourOptions& opts) {
    check_screen(sc, r);
    const Vec3 r1{x1, y1, sc.slit_z};
    const Vec3 origin{0.0, 0.0, 0.0};
    const double t = sc.t;
    const double saddle = tau_sc_gravity(r, r1, t, sc.g).tau;
    auto h = [&](cplx tau) {
        const cplx rest = t - tau;
        const cplx out = g_gravity(r, r1, rest, sc.particle, sc.g);
        const cplx in = sc.verbatim_second_factor ? g_gravity(r1, origin, rest, sc.particle, sc.g)
                                                  : g_gravity(r1, origin, tau, sc.particle, sc.g);
        return chi(t, tau, r[2], sc.slit_z, sc.bc, sc.g) * out * in;
    };
    const cplx integral = saddle_contour_integral(h, 0.0, saddle, t, 1.0, opts).value;
    return I * sc.particle.hbar / (2.0 * sc.particle.mass) * integral;
}

QuadratureResult k_gravity(const GravityScenario& sc, const Vec3& r, const QuadratureSpec& spec) {
    check_screen(sc, r);
    spec.validate();
    ContourOptions opts;
    opts.spec.relative_tolerance = std::min(1e-10, 0.1 * spec.relative_tolerance);
    return aperture_integral(sc, r, [&](double x1, double y1) { return k_gravity_point(sc, r, x1, y1, opts); },
                             spec);
}

cplx k_gravity_semiclassical_point(const GravityScenario& sc, const Vec3& r, double x1, double y1) {
    check_screen(sc, r);
    const Vec3 r1{x1, y1, sc.slit_z};
    const Particle& p = sc.particle;
    const double t = sc.t;
    const double tau = tau_sc_gravity(r, r1, t, sc.g).tau;
    const double omega = omega_sc_gravity(r, r1, t, tau, sc.g, p);
    if (!(omega > 0.0)) throw DegeneracyError("gravity stationary point is degenerate (omega_sc <= 0)");
    const cplx n_out = inverse_sqrt_kernel_norm(t - tau, p);
    const cplx n_in = inverse_sqrt_kernel_norm(tau, p);
    const cplx norm = n_out * n_out * n_out * n_in * n_in * n_in;
    const cplx gauss = std::sqrt(2.0 * pi * I / omega);
    return chi(t, tau, r[2], sc.slit_z, sc.bc, sc.g) * norm * gauss *
           std::exp(I * phi_sc_gravity(r, r1, t, tau, sc.g, p));
}

QuadratureResult k_gravity_semiclassical(const GravityScenario& sc, const Vec3& r, const QuadratureSpec& spec) {
    check_screen(sc, r);
    spec.validate();
    return aperture_integral(sc, r, [&](double x1, double y1) { return k_gravity_semiclassical_point(sc, r, x1, y1); },
                             spec);
}

cplx gravity_calibration_factor(const Particle& p) { return 2.0 * p.mass / (I * p.hbar); }

PatternResult evaluate_gravity_pattern(const GravityScenario& sc, double screen_z, const std::vector<double>& y_values,
                                       const std::vector<double>& x_values, bool semiclassical,
                                       const QuadratureSpec& spec, int threads) {
    ScreenGrid axes;
    axes.y_values = y_values;
    axes.z_values = x_values;
    axes.t = sc.t;
    axes.validate();
    check_screen(sc, {x_values.front(), y_values.front(), screen_z});

    PatternResult res;
    res.ny = y_values.size();
    res.nz = x_values.size();
    res.method = semiclassical ? Method::semiclassical : Method::exact;
    res.bc = sc.bc;
    std::ostringstream os;
    os << "gravity(g=" << sc.g << ", slit_z=" << sc.slit_z << ", a=" << sc.half_x << ", b=" << sc.half_y << ")";
    res.aperture = os.str();
    const std::size_t total = res.ny * res.nz;
    res.amplitudes.assign(total, cplx{});
    res.unconverged.assign(total, false);
    std::vector<char> flags(total, 0);
    const cplx calibration = gravity_calibration_factor(sc.particle);
    parallel_for(total, threads, [&](std::size_t idx) {
        const Vec3 r{x_values[idx % res.nz], y_values[idx / res.nz], screen_z};
        try {
            res.amplitudes[idx] = semiclassical ? k_gravity_semiclassical(sc, r, spec).value
                                                : calibration * k_gravity(sc, r, spec).value;
        } catch (const ConvergenceError& e) {
            res.amplitudes[idx] = semiclassical ? e.estimate() : calibration * e.estimate();
            flags[idx] = 1;
        }
    });
    for (std::size_t i = 0; i < total; ++i) res.unconverged[i] = flags[i] != 0;
    if (res.unconverged_count() > 0) {
        res.warnings.push_back(std::to_string(res.unconverged_count()) +
                               " grid points did not reach the requested tolerance");
    }
    normalize_pattern(res, y_values, x_values);
    return res;
}

NeonDiagnostics neon_scenario_diagnostics(double l1, double l2, double g) {
    if (!(l1 > 0.0) || !(l2 >= 0.0) || !(g > 0.0)) throw DomainError("neon scenario: need l1 > 0, l2 >= 0, g > 0");
    NeonDiagnostics d;
    d.g = g;
    d.l1 = l1;
    d.l2 = l2;
    d.t1 = std::sqrt(2.0 * l1 / g);
    d.velocity = g * d.t1;
    d.lambda_reduced = d.hbar / (d.mass * d.velocity);
    d.lambda = 2.0 * pi * d.lambda_reduced;
    d.mu = d.mass * l1 * l1 / (2.0 * d.hbar * d.t1);
    d.mu_path = 2.0 * pi * (l1 + l2) / d.lambda;
    return d;
}

}  // namespace qslit

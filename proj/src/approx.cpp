#include "qslit/approx.hpp"

#include <cmath>

#include "qslit/numerics.hpp"

namespace qslit {

void TruncationScenario::validate() const {
    particle.validate();
    if (!(x0 < x1) || !(x1 < x)) throw GeometryError("truncation scenario: require x0 < x1 < x");
    if (!(t > 0.0)) throw DomainError("truncation scenario: require t > 0");
    if (slits.empty()) throw GeometryError("truncation scenario: no slits");
    for (const auto& s : slits) {
        if (!(s.half_z > 0.0) || !(s.half_y > 0.0)) throw GeometryError("truncation scenario: slit sizes must be positive");
    }
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::fraunhofer: return "fraunhofer";
        case Regime::fresnel: return "fresnel";
        default: return "intermediate";
    }
}

double classical_time(double x0, double x1, double x, double t) {
    if (!(x0 < x1) || !(x1 < x)) throw GeometryError("classical_time: require x0 < x1 < x");
    if (!(t > 0.0)) throw DomainError("classical_time: require t > 0");
    return std::fabs(x1 - x0) * t / std::fabs(x - x0);
}

cplx fresnel_window(double z, double z0, double lo, double hi, double t, double t_c, const Particle& p) {
    if (!(t_c > 0.0) || !(t_c < t)) throw DomainError("fresnel_window: require 0 < t_c < t");
    const double kappa = std::sqrt(p.mass * t / (pi * p.hbar * t_c * (t - t_c)));
    const double z_cross = z0 + (z - z0) * t_c / t;
    return fresnel_cs(kappa * (hi - z_cross)) - fresnel_cs(kappa * (lo - z_cross));
}

cplx fresnel_factor(double z, double a, double t, double t_c, const Particle& p) {
    if (!(t_c > 0.0) || !(t_c < t)) throw DomainError("fresnel_factor: require 0 < t_c < t");
    const double pref = std::sqrt(p.mass * a * a * t / (pi * p.hbar * t_c * (t - t_c)));
    const double ratio = (z / a) * (t_c / t);
    return fresnel_cs(pref * (1.0 - ratio)) + fresnel_cs(pref * (1.0 + ratio));
}

namespace {

// Common prefactor G0_1d(x - x0) G0_1d(y - y0) G0_1d(z - z0) / (1 + i)^2.
cplx truncation_prefactor(const TruncationScenario& sc, double y, double z) {
    const Particle& p = sc.particle;
    return g0_free_1d(sc.x - sc.x0, sc.t, p) * g0_free_1d(y - sc.y0, sc.t, p) * g0_free_1d(z - sc.z0, sc.t, p) /
           cplx(0.0, 2.0);
}

cplx window_sum(const TruncationScenario& sc, double y, double z, double z_scale) {
    const double tc = classical_time(sc.x0, sc.x1, sc.x, sc.t);
    cplx sum = 0.0;
    for (const auto& s : sc.slits) {
        const cplx wz = fresnel_window(z, sc.z0, z_scale * (s.center_z - s.half_z), z_scale * (s.center_z + s.half_z),
                                       sc.t, tc, sc.particle);
        const cplx wy = fresnel_window(y, sc.y0, s.center_y - s.half_y, s.center_y + s.half_y, sc.t, tc, sc.particle);
        sum += wz * wy;
    }
    return sum;
}

}  // namespace

cplx k_truncation(const TruncationScenario& sc, double y, double z) {
    sc.validate();
    return truncation_prefactor(sc, y, z) * window_sum(sc, y, z, 1.0);
}

double intensity_truncation(const TruncationScenario& sc, double y, double z) {
    return std::norm(k_truncation(sc, y, z));
}

double probability_truncation(const TruncationScenario& sc, double y, double z) {
    sc.validate();
    const double gamma = std::fabs(sc.x - sc.x0) / std::fabs(sc.x1 - sc.x0);
    double area = 0.0;
    for (const auto& s : sc.slits) area += 4.0 * s.half_z * s.half_y;
    return std::norm(window_sum(sc, y, z, 1.0)) / (4.0 * gamma * gamma * area);
}

cplx sigma_axial(const TruncationScenario& sc) {
    sc.validate();
    const Particle& p = sc.particle;
    const double tc = classical_time(sc.x0, sc.x1, sc.x, sc.t);
    const double lambda0_sq = 2.0 * pi * p.hbar * sc.t / p.mass;
    const double rho = std::fabs(sc.x - sc.x0);
    const double c = p.mass / (2.0 * pi * p.hbar);
    return lambda0_sq / rho *
           (c * std::fabs(sc.x1 - sc.x0) / tc * sc.bc.eta1() + c * std::fabs(sc.x - sc.x1) / (sc.t - tc) * sc.bc.eta2());
}

double primed_classical_time(double t_c, double t, double z, double L) {
    return t_c * (1.0 - (z * z) / (L * L) * (t_c / t));
}

double primed_half_width(double a, double t_c, double t, double z, double L) {
    return a * (1.0 - (z * z) / (2.0 * L * L) * (t_c / t));
}

double primed_fresnel_number(double n_f, double z, double gamma, double L) {
    return n_f * (1.0 - z * z / (gamma * L * L));
}

cplx k_fourth_order(const TruncationScenario& sc, double y, double z, bool include_sigma) {
    sc.validate();
    const double tc = classical_time(sc.x0, sc.x1, sc.x, sc.t);
    const double L = std::fabs(sc.x - sc.x1);
    const double scale = primed_half_width(1.0, tc, sc.t, z, L);
    const cplx k = truncation_prefactor(sc, y, z) * window_sum(sc, y, z, scale);
    return include_sigma ? sigma_axial(sc) * k : k;
}

RegimeReport regime_report(const TruncationScenario& sc, double z_window, const RegimeThresholds& th) {
    sc.validate();
    const Particle& p = sc.particle;
    const double a = sc.slits.front().half_z;
    const double b = sc.slits.front().half_y;
    const double span = std::fabs(sc.x - sc.x0);
    RegimeReport r;
    r.t_c = classical_time(sc.x0, sc.x1, sc.x, sc.t);
    r.lambda0 = std::sqrt(2.0 * pi * p.hbar * sc.t / p.mass);
    r.lambda = r.lambda0 * r.lambda0 / span;
    r.L = std::fabs(sc.x - sc.x1);
    r.N_F_a = 2.0 * a * a / (r.lambda * r.L);
    r.N_F_b = 2.0 * b * b / (r.lambda * r.L);
    r.gamma = span / std::fabs(sc.x1 - sc.x0);
    r.gamma_prime = span / r.L;
    r.kappa = r.lambda0 / span;
    r.rho_zoom_inv = (a / r.L) * std::sqrt(8.0 * r.gamma / r.gamma_prime);
    r.q = r.kappa * r.kappa / r.rho_zoom_inv;
    r.mu = p.mass * r.L * r.L / (p.hbar * sc.t);
    r.fringe_spacing = r.lambda * r.L / (2.0 * a);
    r.delta_window = fringe_shift_prediction(z_window, r.gamma, r.L);
    if (r.N_F_a < th.fraunhofer_below) {
        r.regime = Regime::fraunhofer;
    } else if (r.N_F_a > th.fresnel_above) {
        r.regime = Regime::fresnel;
    } else {
        r.regime = Regime::intermediate;
    }
    return r;
}

double fringe_shift_prediction(double z, double gamma, double L) {
    if (!(gamma > 0.0) || !(L > 0.0)) throw DomainError("fringe_shift_prediction: require gamma, L > 0");
    return z * z / (2.0 * gamma * L * L);
}

}  // namespace qslit

#include "qslit/point_source.hpp"

#include <cmath>

namespace qslit {

void PointSourceGeometry::validate() const {
    particle.validate();
    if (!is_finite(r0) || !is_finite(r1) || !is_finite(r) || !std::isfinite(t)) {
        throw DomainError("point-source geometry: non-finite input");
    }
    if (!(r0[0] < 0.0) || r1[0] != 0.0 || !(r[0] > 0.0)) {
        throw GeometryError("point-source geometry: require x0 < 0 = x1 < x");
    }
    if (!(t > 0.0)) throw DomainError("point-source geometry: require t > 0");
}

double phase_exact(const PointSourceGeometry& geo) {
    geo.validate();
    const double rho = geo.path_length();
    return geo.particle.mass * rho * rho / (2.0 * geo.particle.hbar * geo.t);
}

double phase_of_tau(const PointSourceGeometry& geo, double tau) {
    const double a = norm2(geo.r - geo.r1);
    const double b = norm2(geo.r1 - geo.r0);
    const double k = geo.particle.mass / (2.0 * geo.particle.hbar);
    return k * (a / (geo.t - tau) + b / tau);
}

namespace {

// (2 i pi hbar t / m)^{3/2} on the principal branch.
cplx kernel_norm_32(const PointSourceGeometry& geo) {
    const double l = 2.0 * pi * geo.particle.hbar * geo.t / geo.particle.mass;
    return std::pow(l, 1.5) * std::polar(1.0, 0.75 * pi);
}

}  // namespace

cplx amplitude_neumann(const PointSourceGeometry& geo) {
    geo.validate();
    const double n1 = geo.leg_in();
    const double n2 = geo.leg_out();
    const double rho = n1 + n2;
    const double l = 2.0 * pi * geo.particle.hbar * geo.t / geo.particle.mass;
    const cplx first = rho * rho / (I * l * n2 * n1 * n1);
    const double second = 1.0 / (2.0 * pi * n1 * n1 * n1);
    return -geo.r0[0] / kernel_norm_32(geo) * (first + second);
}

cplx amplitude_dirichlet(const PointSourceGeometry& geo) {
    geo.validate();
    const double n1 = geo.leg_in();
    const double n2 = geo.leg_out();
    const double rho = n1 + n2;
    const double l = 2.0 * pi * geo.particle.hbar * geo.t / geo.particle.mass;
    const cplx first = rho * rho / (I * l * n2 * n2 * n1);
    const double second = 1.0 / (2.0 * pi * n2 * n2 * n2);
    return geo.r[0] / kernel_norm_32(geo) * (first + second);
}

cplx k_point_exact(const PointSourceGeometry& geo) {
    const cplx a = geo.bc.eta1() * amplitude_neumann(geo) + geo.bc.eta2() * amplitude_dirichlet(geo);
    return a * std::exp(I * phase_exact(geo));
}

OracleResult k_point_oracle(const PointSourceGeometry& geo, const OracleOptions& opts) {
    geo.validate();
    const double x0 = geo.r0[0];
    const double x = geo.r[0];
    const double t = geo.t;
    const double a2 = norm2(geo.r - geo.r1);
    const double b2 = norm2(geo.r1 - geo.r0);
    const cplx w1 = geo.bc.eta1();
    const cplx w2 = geo.bc.eta2();
    const double saddle = tau_semiclassical(geo);
    auto integral_at = [&](cplx s) {
        const cplx T = t * s;
        auto h = [&](cplx tau) {
            const cplx rest = T - tau;
            return (-x0 / tau * w1 + x / rest * w2) * g0_free(a2, rest, geo.particle) * g0_free(b2, tau, geo.particle);
        };
        return saddle_contour_integral(h, 0.0, saddle, t, s, opts.contour).value;
    };
    const double rho = geo.path_length();
    const double phase_coeff = geo.particle.mass * rho * rho / (2.0 * geo.particle.hbar);
    return complex_time_extrapolate(integral_at, phase_coeff, t, opts);
}

double tau_semiclassical(const PointSourceGeometry& geo) {
    geo.validate();
    const double n1 = geo.leg_in();
    return n1 * geo.t / (n1 + geo.leg_out());
}

cplx sigma_factor(const PointSourceGeometry& geo) {
    const double tau = tau_semiclassical(geo);
    const Particle& p = geo.particle;
    const double lambda0_sq = 2.0 * pi * p.hbar * geo.t / p.mass;
    const double rho = geo.path_length();
    const double c = p.mass / (2.0 * pi * p.hbar);
    return lambda0_sq / rho * (-c * geo.r0[0] / tau * geo.bc.eta1() + c * geo.r[0] / (geo.t - tau) * geo.bc.eta2());
}

cplx k_point_semiclassical(const PointSourceGeometry& geo) {
    geo.validate();
    const double n1 = geo.leg_in();
    const double n2 = geo.leg_out();
    const double rho = n1 + n2;
    const double l = 2.0 * pi * geo.particle.hbar * geo.t / geo.particle.mass;
    // (2 i pi hbar t/m)^{5/2}, principal branch.
    const cplx norm52 = std::pow(l, 2.5) * std::polar(1.0, 1.25 * pi);
    const cplx bracket = -geo.r0[0] / n1 * geo.bc.eta1() + geo.r[0] / n2 * geo.bc.eta2();
    return rho * rho / (norm52 * n2 * n1) * bracket * std::exp(I * phase_exact(geo));
}

cplx k_point_semiclassical_factorized(const PointSourceGeometry& geo) {
    const double tau = tau_semiclassical(geo);
    const double t = geo.t;
    const Particle& p = geo.particle;
    const double k = p.mass / (2.0 * p.hbar);
    const double x = geo.r[0];
    const double x0 = geo.r0[0];
    const double axial_phase = k * (x * x / (t - tau) + x0 * x0 / tau);
    const cplx axial = std::exp(I * axial_phase) * inverse_sqrt_kernel_norm(t, p);
    auto transverse = [&](double dt, double dy, double dz) {
        const cplx n = inverse_sqrt_kernel_norm(dt, p);
        return n * n * std::exp(I * k * (dy * dy + dz * dz) / dt);
    };
    const cplx out = transverse(t - tau, geo.r[1] - geo.r1[1], geo.r[2] - geo.r1[2]);
    const cplx in = transverse(tau, geo.r1[1] - geo.r0[1], geo.r1[2] - geo.r0[2]);
    return sigma_factor(geo) * axial * out * in;
}

std::array<double, 2> phase_gradient_aperture(const PointSourceGeometry& geo) {
    const double n1 = geo.leg_in();
    const double n2 = geo.leg_out();
    const double c = geo.particle.mass * (n1 + n2) / (geo.particle.hbar * geo.t);
    std::array<double, 2> g{};
    for (int k = 0; k < 2; ++k) {
        const int i = k + 1;
        g[k] = c * ((geo.r1[i] - geo.r0[i]) / n1 - (geo.r[i] - geo.r1[i]) / n2);
    }
    return g;
}

SemiclassicalDiagnostics diagnostics(const PointSourceGeometry& geo) {
    geo.validate();
    const Particle& p = geo.particle;
    SemiclassicalDiagnostics d;
    d.mu = p.mass * norm2(geo.r - geo.r0) / (p.hbar * geo.t);
    d.mu_slit = p.mass * norm2(geo.r) / (p.hbar * geo.t);
    d.mu_sp = 0.5 * d.mu;
    d.lambda0 = std::sqrt(2.0 * pi * p.hbar * geo.t / p.mass);
    d.tau_sc = tau_semiclassical(geo);
    d.rho_path = geo.path_length();
    return d;
}

void PointSource2D::validate() const {
    particle.validate();
    if (!(x0 < 0.0) || !(x > 0.0)) throw GeometryError("2D point source: require x0 < 0 < x");
    if (!(t > 0.0)) throw DomainError("2D point source: require t > 0");
}

double tau_semiclassical_2d(const PointSource2D& g) {
    g.validate();
    const double n1 = std::hypot(g.x0, g.z1 - g.z0);
    const double n2 = std::hypot(g.x, g.z - g.z1);
    return n1 * g.t / (n1 + n2);
}

cplx k_point_semiclassical_2d(const PointSource2D& g) {
    const PointSourceGeometry geo{{g.x0, 0.0, g.z0}, {0.0, 0.0, g.z1}, {g.x, 0.0, g.z}, g.t, g.bc, g.particle};
    const double tau = tau_semiclassical_2d(g);
    const Particle& p = g.particle;
    const double k = p.mass / (2.0 * p.hbar);
    const cplx axial = std::exp(I * k * (g.x * g.x / (g.t - tau) + g.x0 * g.x0 / tau)) * inverse_sqrt_kernel_norm(g.t, p);
    return sigma_factor(geo) * axial * g0_free_1d(g.z - g.z1, g.t - tau, p) * g0_free_1d(g.z1 - g.z0, tau, p);
}

}  // namespace qslit

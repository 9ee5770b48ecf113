#include "qslit/dit1d.hpp"

#include <algorithm>
#include <cmath>

namespace qslit {

void ShutterProblem1D::validate() const {
    particle.validate();
    if (!std::isfinite(x0) || !std::isfinite(x) || !std::isfinite(t) || !std::isfinite(t1)) {
        throw DomainError("shutter problem: non-finite parameter");
    }
    if (!(x0 < 0.0) || !(x > 0.0)) throw GeometryError("shutter problem: require x0 < 0 < x");
    if (!(t > 0.0) || !(t1 >= 0.0) || !(t1 <= t)) throw DomainError("shutter problem: require 0 <= t1 <= t, t > 0");
}

cplx k0_absorbing_closed_at(double x, double source, double t, double t1, const Particle& particle) {
    if (t1 >= t) return 0.0;
    const cplx g = g0_free_1d(x - source, t, particle);
    if (t1 == 0.0) {
        // Fully opened shutter: erfc tends to 2, 0 or 1 with the sign of the source.
        if (source < 0.0) return g;
        if (source > 0.0) return 0.0;
        return 0.5 * g;
    }
    const double lin = x * t1 / t + source * (t - t1) / t;
    const double scale = std::sqrt(particle.mass * t / (2.0 * particle.hbar * t1 * (t - t1)));
    const cplx zeta = lin * scale * std::polar(1.0, -0.25 * pi);
    return 0.5 * g * erfc_complex(zeta);
}

cplx k0_absorbing_closed(const ShutterProblem1D& p) {
    p.validate();
    return k0_absorbing_closed_at(p.x, p.x0, p.t, p.t1, p.particle);
}

cplx k_general_bc(const ShutterProblem1D& p) {
    p.validate();
    const cplx direct = k0_absorbing_closed_at(p.x, p.x0, p.t, p.t1, p.particle);
    const cplx image = k0_absorbing_closed_at(p.x, -p.x0, p.t, p.t1, p.particle);
    return p.bc.lambda1 * direct - p.bc.lambda2 * image;
}

namespace {

OracleResult weighted_time_integral(const ShutterProblem1D& p, cplx w1, cplx w2, const OracleOptions& opts) {
    p.validate();
    if (!(p.t1 < p.t)) throw DomainError("time integral: require t1 < t");
    const double X = p.x0;
    const double x = p.x;
    const double t = p.t;
    const double saddle = t * std::fabs(X) / (std::fabs(X) + std::fabs(x));

    auto integral_at = [&](cplx s) {
        const cplx T = t * s;
        auto h = [&](cplx tau) {
            const cplx rest = T - tau;
            return (-X / tau * w1 + x / rest * w2) * g0_free_1d(x, rest, p.particle) *
                   g0_free_1d(-X, tau, p.particle);
        };
        return saddle_contour_integral(h, 0.0, saddle, t, s, opts.contour).value;
    };

    if (p.t1 > 0.0) {
        // The lower endpoint is regular; the contour alone removes the
        // singular behaviour at tau = t.
        auto h = [&](cplx tau) {
            const cplx rest = t - tau;
            return (-X / tau * w1 + x / rest * w2) * g0_free_1d(x, rest, p.particle) *
                   g0_free_1d(-X, tau, p.particle);
        };
        const QuadratureResult r = saddle_contour_integral(h, p.t1, saddle, t, 1.0, opts.contour);
        return {r.value, r.error, {}};
    }
    const double phase_coeff = p.particle.mass * (x - X) * (x - X) / (2.0 * p.particle.hbar);
    return complex_time_extrapolate(integral_at, phase_coeff, t, opts);
}

}  // namespace

OracleResult k0_absorbing_integral(const ShutterProblem1D& p, const OracleOptions& opts) {
    return weighted_time_integral(p, 0.5, 0.5, opts);
}

OracleResult k_general_integral(const ShutterProblem1D& p, const OracleOptions& opts) {
    return weighted_time_integral(p, p.bc.eta1(), p.bc.eta2(), opts);
}

cplx psi_gaussian_1d(const ShutterProblem1D& p, double sigma, const QuadratureSpec& spec) {
    p.validate();
    if (!(sigma > 0.0)) throw DomainError("psi_gaussian_1d: sigma must be positive");
    const double lo = p.x0 - 8.0 * sigma;
    const double hi = std::min(p.x0 + 8.0 * sigma, 0.0);
    const double norm = std::pow(2.0 * pi * sigma * sigma, -0.25);
    const Particle& pt = p.particle;
    auto f = [&](double X) -> cplx {
        const cplx direct = k0_absorbing_closed_at(p.x, X, p.t, p.t1, pt);
        const cplx image = k0_absorbing_closed_at(p.x, -X, p.t, p.t1, pt);
        const double d = X - p.x0;
        return (p.bc.lambda1 * direct - p.bc.lambda2 * image) * norm * std::exp(-d * d / (4.0 * sigma * sigma));
    };
    auto rate = [&](double X) { return pt.mass * std::fabs(p.x - X) / (pt.hbar * p.t); };
    return integrate_1d(f, lo, hi, spec, rate).value;
}

}  // namespace qslit

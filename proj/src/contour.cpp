#include "qslit/contour.hpp"

#include <cmath>

namespace qslit {

namespace {

// Quadratic arc from p to q with apex offset sign*i*beta*(q-p)/4.
QuadratureResult arc(const std::function<cplx(cplx)>& h, double p, double q, double sign, cplx scale,
                     const ContourOptions& opts) {
    const double span = q - p;
    const double lift = sign * opts.beta * span;
    auto integrand = [&](double u) -> cplx {
        const cplx tau(p + span * u, lift * u * (1.0 - u));
        const cplx dtau(span, lift * (1.0 - 2.0 * u));
        return h(scale * tau) * scale * dtau;
    };
    return integrate_1d(integrand, 0.0, 1.0, opts.spec);
}

}  // namespace

QuadratureResult saddle_contour_integral(const std::function<cplx(cplx)>& h, double ta, double saddle,
                                         double tb, cplx scale, const ContourOptions& opts) {
    if (!(ta < tb)) throw DomainError("saddle_contour_integral: require ta < tb");
    QuadratureResult total{0.0, 0.0, 0, 0};
    auto add = [&](const QuadratureResult& r) {
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
        total.panels += r.panels;
    };
    if (saddle <= ta) {
        add(arc(h, ta, tb, +1.0, scale, opts));
    } else if (saddle >= tb) {
        add(arc(h, ta, tb, -1.0, scale, opts));
    } else {
        add(arc(h, ta, saddle, -1.0, scale, opts));
        add(arc(h, saddle, tb, +1.0, scale, opts));
    }
    return total;
}

OracleResult complex_time_extrapolate(const std::function<cplx(cplx)>& eval, double phase_coeff, double t,
                                      const OracleOptions& opts) {
    const auto& eps = opts.eps;
    if (eps.empty()) throw DomainError("complex-time oracle: empty eps list");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0) || (i > 0 && !(eps[i] < eps[i - 1]))) {
            throw DomainError("complex-time oracle: eps must be positive and strictly decreasing");
        }
    }
    OracleResult out;
    for (double e : eps) {
        const cplx s(1.0, -e);
        const cplx T = t * s;
        out.stripped_samples.push_back(eval(s) * std::exp(-I * phase_coeff / T));
    }
    const cplx a0 = neville_at_zero(eps, out.stripped_samples);
    double err;
    if (eps.size() == 1) {
        err = std::abs(out.stripped_samples[0]) * eps[0];
    } else {
        const std::vector<double> tail_eps(eps.begin() + 1, eps.end());
        const std::vector<cplx> tail(out.stripped_samples.begin() + 1, out.stripped_samples.end());
        err = std::abs(a0 - neville_at_zero(tail_eps, tail));
    }
    out.value = a0 * std::exp(I * phase_coeff / t);
    out.error = err;
    if (!std::isfinite(err) || err > 1e-2 * std::abs(a0)) {
        throw ConvergenceError("complex-time extrapolation did not stabilise", out.value, err);
    }
    return out;
}

}  // namespace qslit

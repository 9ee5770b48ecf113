#include "qslit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace qslit {

void QuadratureSpec::validate() const {
    if (!(relative_tolerance > 0.0) || !(absolute_tolerance >= 0.0) || max_subdivisions < 1 ||
        !(panel_oscillation_budget > 0.0)) {
        throw DomainError("invalid quadrature specification");
    }
}

// ---------------------------------------------------------------------------
// Fresnel integrals

namespace {

// cos and sin of pi*u^2/2 for large |u|. u^2 is split exactly with fma and
// reduced modulo 4 before scaling, so the phase keeps full accuracy even
// when pi*u^2/2 is of order 1e6.
cplx half_pi_square_phase(double u) {
    const double hi = u * u;
    const double lo = std::fma(u, u, -hi);
    const double r = std::fmod(hi, 4.0) + lo;
    const double ang = 0.5 * pi * r;
    return {std::cos(ang), std::sin(ang)};
}

cplx fresnel_series(double x) {
    const double arg = 0.5 * pi * x * x;
    double term = x;  // arg^k / k! * x
    double c = 0.0;
    double s = 0.0;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) term *= arg / k;
        const double contrib = term / (2 * k + 1);
        const double sign = (k % 4 < 2) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            c += sign * contrib;
        } else {
            s += sign * contrib;
        }
        if (k > 2 && contrib < 1e-17 * (std::fabs(c) + std::fabs(s))) break;
    }
    return {c, s};
}

// Continued fraction for erfc evaluated by the modified Lentz method; valid
// and fast for x >= 2.
cplx fresnel_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double pix2 = pi * x * x;
    cplx b(1.0, -pix2);
    cplx cc(1.0 / tiny, 0.0);
    cplx d = 1.0 / b;
    cplx h = d;
    int n = -1;
    for (int k = 2; k < 1000; ++k) {
        n += 2;
        const double a = -static_cast<double>(n) * (n + 1);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cplx del = cc * d;
        h *= del;
        if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < eps) break;
    }
    h *= cplx(x, -x);
    return cplx(0.5, 0.5) * (1.0 - half_pi_square_phase(x) * h);
}

}  // namespace

cplx fresnel_cs(double u) {
    if (!std::isfinite(u)) throw DomainError("fresnel: non-finite argument");
    const double ax = std::fabs(u);
    cplx r;
    if (ax < 1e-150) {
        r = {ax, 0.0};
    } else if (ax <= 2.0) {
        r = fresnel_series(ax);
    } else {
        r = fresnel_continued_fraction(ax);
    }
    return u < 0 ? -r : r;
}

double fresnel_c(double u) { return fresnel_cs(u).real(); }
double fresnel_s(double u) { return fresnel_cs(u).imag(); }

// ---------------------------------------------------------------------------
// Faddeeva function, after the algorithm of Poppe and Wijers (ACM TOMS 680).

cplx faddeeva_w(cplx z) {
    const double xi = z.real();
    const double yi = z.imag();
    if (!std::isfinite(xi) || !std::isfinite(yi)) throw DomainError("faddeeva: non-finite argument");

    constexpr double factor = 1.12837916709551257388;  // 2/sqrt(pi)
    const double xabs = std::fabs(xi);
    const double yabs = std::fabs(yi);
    const double x = xabs / 6.3;
    const double y = yabs / 4.4;
    if (xabs > 0.5e154 || yabs > 0.5e154) throw DomainError("faddeeva: argument overflow");

    double qrho = x * x + y * y;
    const double xabsq = xabs * xabs;
    double xquad = xabsq - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;

    double u = 0.0;
    double v = 0.0;
    double u2 = 0.0;
    double v2 = 0.0;
    const bool a = qrho < 0.085264;

    if (a) {
        // Power series in the small-argument region.
        qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -factor * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = factor * (xsum * xabs - ysum * yabs);
        const double daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        // Laplace continued fraction, or truncated Taylor expansion with
        // continued-fraction convergents in the intermediate region.
        double h = 0.0;
        double h2 = 0.0;
        int kapn = 0;
        int nu = 0;
        if (qrho > 1.0) {
            qrho = std::sqrt(qrho);
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
        } else {
            qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            h2 = 2.0 * h;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
        }
        const bool b = h > 0.0;
        double qlambda = b ? std::pow(h2, kapn) : 0.0;

        double rx = 0.0;
        double ry = 0.0;
        double sx = 0.0;
        double sy = 0.0;
        for (int n = nu; n >= 0; --n) {
            const double np1 = n + 1.0;
            double tx = yabs + h + np1 * rx;
            const double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (b && n <= kapn) {
                tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if (h == 0.0) {
            u = factor * rx;
            v = factor * ry;
        } else {
            u = factor * sx;
            v = factor * sy;
        }
        if (yabs == 0.0) u = std::exp(-xabs * xabs);
    }

    // Map back from the first quadrant.
    if (yi < 0.0) {
        if (a) {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            xquad = -xquad;
            const double w1 = 2.0 * std::exp(xquad);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0) v = -v;
    } else if (xi < 0.0) {
        v = -v;
    }
    return {u, v};
}

cplx erfc_complex(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("erfc_complex: non-finite argument");
    }
    if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
    // Im(iz) = Re(z) >= 0, so w is evaluated in the closed upper half plane.
    return std::exp(-z * z) * faddeeva_w(I * z);
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature

namespace {

constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077548174696890, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the nodes xgk[1], xgk[3], ..., xgk[9].
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk21(const Integrand1D& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = wgk[10] * fc;
    cplx gauss = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = h * xgk[j];
        const cplx s = f(c - dx) + f(c + dx);
        kron += wgk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

std::vector<std::pair<double, double>> phase_panels(const PhaseRate1D& rate, double a, double b,
                                                    double budget, int limit) {
    std::vector<std::pair<double, double>> out;
    const double min_step = (b - a) * 1e-9;
    double w = a;
    while (w < b) {
        if (static_cast<int>(out.size()) + 1 >= limit) {
            out.emplace_back(w, b);
            break;
        }
        double r = std::fabs(rate(w));
        double h = r > 0.0 ? budget / r : (b - a);
        h = std::min(h, b - w);
        for (int it = 0; it < 2; ++it) {
            const double r2 = std::max(std::fabs(rate(w + h)), std::fabs(rate(w + 0.5 * h)));
            if (r2 <= r) break;
            r = r2;
            h = std::min(h, budget / r);
        }
        h = std::max(h, min_step);
        double next = w + h;
        if (next >= b || b - next < 1e-3 * h) next = b;
        out.emplace_back(w, next);
        w = next;
    }
    return out;
}

}  // namespace

QuadratureResult integrate_1d(const Integrand1D& f, double a, double b, const QuadratureSpec& spec,
                              const PhaseRate1D& phase_rate) {
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("integrate_1d: require finite a < b");
    }

    std::vector<std::pair<double, double>> initial;
    if (phase_rate) {
        initial = phase_panels(phase_rate, a, b, spec.panel_oscillation_budget, spec.max_subdivisions);
    } else {
        initial.emplace_back(a, b);
    }

    std::priority_queue<Panel> queue;
    std::vector<Panel> frozen;  // panels too narrow to split further
    cplx total = 0.0;
    double total_err = 0.0;
    int evaluations = 0;
    for (const auto& [lo, hi] : initial) {
        Panel p = gk21(f, lo, hi);
        evaluations += 21;
        total += p.value;
        total_err += p.error;
        queue.push(p);
    }
    int panels = static_cast<int>(initial.size());

    auto tolerance = [&](cplx value) {
        return std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(value));
    };

    auto recompute = [&]() {
        total = 0.0;
        total_err = 0.0;
        auto copy = queue;
        while (!copy.empty()) {
            total += copy.top().value;
            total_err += copy.top().error;
            copy.pop();
        }
        for (const auto& p : frozen) {
            total += p.value;
            total_err += p.error;
        }
    };

    while (true) {
        if (total_err <= tolerance(total)) {
            recompute();
            if (total_err <= tolerance(total)) break;
        }
        if (queue.empty() || panels >= spec.max_subdivisions) {
            recompute();
            if (total_err <= tolerance(total)) break;
            throw ConvergenceError("integrate_1d: subdivision limit reached", total, total_err);
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-14 * (b - a)) {
            frozen.push_back(worst);
            continue;
        }
        Panel left = gk21(f, worst.a, mid);
        Panel right = gk21(f, mid, worst.b);
        evaluations += 42;
        ++panels;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    return {total, total_err, evaluations, panels};
}

QuadratureResult integrate_2d(const Integrand2D& f, const Rect& rect, const QuadratureSpec& spec,
                              const PhaseRate2D& phase_rate) {
    spec.validate();
    if (!(rect.u_lo < rect.u_hi) || !(rect.v_lo < rect.v_hi)) {
        throw DomainError("integrate_2d: empty rectangle");
    }
    QuadratureSpec inner = spec;
    inner.relative_tolerance = 0.25 * spec.relative_tolerance;
    inner.absolute_tolerance = 0.25 * spec.absolute_tolerance / (rect.u_hi - rect.u_lo);

    double worst_inner_error = 0.0;
    int inner_evaluations = 0;
    auto outer = [&](double u) -> cplx {
        PhaseRate1D inner_rate;
        if (phase_rate) inner_rate = [&](double v) { return phase_rate(u, v)[1]; };
        const QuadratureResult r =
            integrate_1d([&](double v) { return f(u, v); }, rect.v_lo, rect.v_hi, inner, inner_rate);
        worst_inner_error = std::max(worst_inner_error, r.error);
        inner_evaluations += r.evaluations;
        return r.value;
    };
    PhaseRate1D outer_rate;
    if (phase_rate) {
        const double vm = 0.5 * (rect.v_lo + rect.v_hi);
        outer_rate = [&](double u) {
            return std::max({phase_rate(u, rect.v_lo)[0], phase_rate(u, vm)[0], phase_rate(u, rect.v_hi)[0]});
        };
    }
    QuadratureSpec outer_spec = spec;
    outer_spec.relative_tolerance = 0.5 * spec.relative_tolerance;
    outer_spec.absolute_tolerance = 0.5 * spec.absolute_tolerance;
    QuadratureResult r = integrate_1d(outer, rect.u_lo, rect.u_hi, outer_spec, outer_rate);
    r.error += worst_inner_error * (rect.u_hi - rect.u_lo);
    r.evaluations = inner_evaluations;
    return r;
}

// ---------------------------------------------------------------------------
// Polynomials

double polynomial_value(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

double magnitude_scale(const std::vector<double>& c, double x) {
    double s = 0.0;
    double p = 1.0;
    for (double ck : c) {
        s += std::fabs(ck) * p;
        p *= std::fabs(x);
    }
    return s;
}

double bisect_monotone(const std::vector<double>& c, double lo, double hi) {
    double flo = polynomial_value(c, lo);
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = polynomial_value(c, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> roots_recursive(const std::vector<double>& c, double lo, double hi) {
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return {};
    if (deg == 1) {
        const double r = -c[0] / c[1];
        if (r > lo && r < hi) return {r};
        return {};
    }
    std::vector<double> dc(deg);
    for (std::size_t k = 1; k <= deg; ++k) dc[k - 1] = static_cast<double>(k) * c[k];
    const std::vector<double> crit = roots_recursive(dc, lo, hi);

    std::vector<double> knots;
    knots.push_back(lo);
    knots.insert(knots.end(), crit.begin(), crit.end());
    knots.push_back(hi);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double fa = polynomial_value(c, knots[i]);
        const double fb = polynomial_value(c, knots[i + 1]);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            roots.push_back(bisect_monotone(c, knots[i], knots[i + 1]));
        }
    }
    // Even-multiplicity roots touch zero at a critical point without a sign change.
    for (double x : crit) {
        if (std::fabs(polynomial_value(c, x)) <= 1e-12 * magnitude_scale(c, x)) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    const double merge = 1e-9 * std::max(1.0, hi - lo);
    for (double r : roots) {
        if (out.empty() || r - out.back() > merge) out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<double> real_roots_in_interval(const std::vector<double>& coeffs, double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw DomainError("real_roots_in_interval: require finite lo < hi");
    }
    std::vector<double> c = coeffs;
    for (double ck : c) {
        if (!std::isfinite(ck)) throw DomainError("real_roots_in_interval: non-finite coefficient");
    }
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.empty()) throw DomainError("real_roots_in_interval: zero polynomial");
    if (c.size() > 7) throw DomainError("real_roots_in_interval: degree above 6");
    return roots_recursive(c, lo, hi);
}

cplx neville_at_zero(const std::vector<double>& x, const std::vector<cplx>& y) {
    if (x.size() != y.size() || x.empty()) throw DomainError("neville_at_zero: size mismatch");
    std::vector<cplx> p = y;
    const std::size_t n = x.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
        }
    }
    return p[0];
}

}  // namespace qslit

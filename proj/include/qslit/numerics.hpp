#pragma once

#include <functional>
#include <vector>

#include "qslit/errors.hpp"
#include "qslit/vec3.hpp"

namespace qslit {

struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 0.0;
    int max_subdivisions = 4000;
    // Largest phase advance (radians) allowed on an initial panel when a
    // phase-rate hint is supplied.
    double panel_oscillation_budget = pi;

    void validate() const;
};

struct QuadratureResult {
    cplx value;
    double error = 0.0;
    int evaluations = 0;
    int panels = 0;
};

using Integrand1D = std::function<cplx(double)>;
using Integrand2D = std::function<cplx(double, double)>;
// Returns |d phase / dw| at w; used only to pre-split panels.
using PhaseRate1D = std::function<double(double)>;
// Returns (|d phase / d u|, |d phase / d v|) at (u, v).
using PhaseRate2D = std::function<std::array<double, 2>(double, double)>;

struct Rect {
    double u_lo, u_hi;  // outer variable
    double v_lo, v_hi;  // inner variable
};

// Fresnel integrals C[u] = int_0^u cos(pi w^2/2) dw and S[u] = int_0^u sin(pi w^2/2) dw.
double fresnel_c(double u);
double fresnel_s(double u);
// Both at once; returns C + iS.
cplx fresnel_cs(double u);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
cplx faddeeva_w(cplx z);
cplx erfc_complex(cplx z);

// Adaptive Gauss-Kronrod (21 point) integration of f on [a, b].
// Throws ConvergenceError when max_subdivisions is exhausted.
QuadratureResult integrate_1d(const Integrand1D& f, double a, double b, const QuadratureSpec& spec,
                              const PhaseRate1D& phase_rate = {});

// Nested adaptive integration of f(u, v) over rect (u outer, v inner).
QuadratureResult integrate_2d(const Integrand2D& f, const Rect& rect, const QuadratureSpec& spec,
                              const PhaseRate2D& phase_rate = {});

// Real roots of sum_k coeffs[k] x^k strictly inside (lo, hi), ascending, with
// repeated roots reported once. Degree must not exceed 6.
std::vector<double> real_roots_in_interval(const std::vector<double>& coeffs, double lo, double hi);

double polynomial_value(const std::vector<double>& coeffs, double x);

// Polynomial through (x_i, y_i) evaluated at x = 0 (Neville's scheme).
cplx neville_at_zero(const std::vector<double>& x, const std::vector<cplx>& y);

}  // namespace qslit

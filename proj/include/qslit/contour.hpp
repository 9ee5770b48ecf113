#pragma once

#include <functional>
#include <vector>

#include "qslit/numerics.hpp"

namespace qslit {

struct ContourOptions {
    // Height of the arcs relative to their span; the path leaves every
    // real point at 45 degrees when beta = 1.
    double beta = 1.0;
    QuadratureSpec spec{1e-11, 0.0, 4000, pi};
};

// Integral of h(tau) along a path from ta to tb through the real stationary
// point `saddle`. Left of the saddle the path bulges into the lower half
// plane, right of it into the upper half plane, so integrands of the form
// exp(i a/tau + i b/(T - tau)) decay towards tau = 0 and tau = T. The whole
// path is multiplied by `scale` (use T/t for a complexified total time T).
QuadratureResult saddle_contour_integral(const std::function<cplx(cplx)>& h, double ta, double saddle,
                                         double tb, cplx scale, const ContourOptions& opts);

struct OracleOptions {
    std::vector<double> eps{1e-2, 1e-3, 1e-4};
    ContourOptions contour{};
};

struct OracleResult {
    cplx value;
    double error = 0.0;
    std::vector<cplx> stripped_samples;  // phase-stripped values per eps
};

// Evaluates eval(s), an integral at complex total time T = t s with
// s = 1 - i eps, for each eps; removes the fast factor exp(i phase_coeff / T),
// extrapolates to eps = 0 and restores exp(i phase_coeff / t).
// Throws ConvergenceError when the extrapolation is not stable.
OracleResult complex_time_extrapolate(const std::function<cplx(cplx)>& eval, double phase_coeff, double t,
                                      const OracleOptions& opts);

}  // namespace qslit

#pragma once

#include "qslit/contour.hpp"
#include "qslit/free_propagators.hpp"

namespace qslit {

// Source at x0 < 0, shutter at the origin opening at t1, observation at x > 0.
struct ShutterProblem1D {
    double x0 = -1.0;
    double x = 1.0;
    double t = 1.0;
    double t1 = 0.0;
    BoundaryCondition bc = BoundaryCondition::free();
    Particle particle{};

    // Requires x0 < 0 < x and 0 <= t1 <= t.
    void validate() const;
};

// Absorbing-shutter propagator in closed form:
// (1/2) G0(x - x0; t) erfc(zeta),
// zeta = (x t1/t + x0 (t - t1)/t) e^{-i pi/4} sqrt(m t / (2 hbar t1 (t - t1))).
// The t1 = 0 and t1 = t limits are evaluated exactly.
cplx k0_absorbing_closed(const ShutterProblem1D& p);

// Same quantity for an arbitrary real source position (used for image sources).
cplx k0_absorbing_closed_at(double x, double source, double t, double t1, const Particle& particle);

// lambda1 K0(x0) - lambda2 K0(-x0) for the boundary condition in p.
cplx k_general_bc(const ShutterProblem1D& p);

// Time integral (1/2) int_{t1}^{t} [-x0/tau + x/(t-tau)] G0(x, t-tau) G0(-x0, tau) d tau,
// evaluated along a contour through the stationary time. For t1 = 0 the total
// time is complexified and extrapolated back to the real axis.
OracleResult k0_absorbing_integral(const ShutterProblem1D& p, const OracleOptions& opts = {});

// The same time integral with the weights (eta1, eta2) of p.bc.
OracleResult k_general_integral(const ShutterProblem1D& p, const OracleOptions& opts = {});

// Shutter wave function for a Gaussian packet of width sigma centred on p.x0:
// int dX K(x, t; X) exp(-(X - x0)^2 / (4 sigma^2)) / (2 pi sigma^2)^{1/4},
// over X in [x0 - 8 sigma, min(x0 + 8 sigma, 0)]. K is the propagator for p.bc.
cplx psi_gaussian_1d(const ShutterProblem1D& p, double sigma, const QuadratureSpec& spec = {});

}  // namespace qslit

#pragma once

#include <array>

#include "qslit/contour.hpp"
#include "qslit/free_propagators.hpp"

namespace qslit {

// Source r0 (x < 0), aperture point r1 on the plane x = 0, screen point r (x > 0).
struct PointSourceGeometry {
    Vec3 r0{-1.0, 0.0, 0.0};
    Vec3 r1{0.0, 0.0, 0.0};
    Vec3 r{1.0, 0.0, 0.0};
    double t = 1.0;
    BoundaryCondition bc = BoundaryCondition::free();
    Particle particle{};

    void validate() const;
    double leg_in() const { return norm(r1 - r0); }   // |r1 - r0|
    double leg_out() const { return norm(r - r1); }   // |r - r1|
    double path_length() const { return leg_in() + leg_out(); }
};

struct SemiclassicalDiagnostics {
    double mu = 0.0;        // m |r - r0|^2 / (hbar t)
    double mu_slit = 0.0;   // m |r|^2 / (hbar t), origin at the slit centre
    double mu_sp = 0.0;     // mu / 2
    double lambda0 = 0.0;   // sqrt(2 pi hbar t / m)
    double tau_sc = 0.0;
    double rho_path = 0.0;  // |r - r1| + |r1 - r0|
};

// m rho^2 / (2 hbar t).
double phase_exact(const PointSourceGeometry& geo);

// m |r - r1|^2 / (2 hbar (t - tau)) + m |r1 - r0|^2 / (2 hbar tau), the phase of
// the time integrand; stationary at tau_semiclassical.
double phase_of_tau(const PointSourceGeometry& geo, double tau);

cplx amplitude_neumann(const PointSourceGeometry& geo);
cplx amplitude_dirichlet(const PointSourceGeometry& geo);

// (eta1 A_N + eta2 A_D) exp(i phase_exact).
cplx k_point_exact(const PointSourceGeometry& geo);

// Direct time integral of the one-point propagator at complexified times,
// extrapolated to the real axis.
OracleResult k_point_oracle(const PointSourceGeometry& geo, const OracleOptions& opts = {});

// |r1 - r0| t / rho.
double tau_semiclassical(const PointSourceGeometry& geo);

// lambda0^2 / rho (-m x0 eta1 / (2 pi hbar tau_sc) + m x eta2 / (2 pi hbar (t - tau_sc))).
cplx sigma_factor(const PointSourceGeometry& geo);

// Stationary-phase propagator: exact phase, leading amplitude terms only.
cplx k_point_semiclassical(const PointSourceGeometry& geo);

// The same propagator written as sigma times an axial kernel and two
// transverse Gaussian kernels evaluated at tau_sc.
cplx k_point_semiclassical_factorized(const PointSourceGeometry& geo);

// Gradient of phase_exact with respect to (y1, z1).
std::array<double, 2> phase_gradient_aperture(const PointSourceGeometry& geo);

SemiclassicalDiagnostics diagnostics(const PointSourceGeometry& geo);

// Planar geometry (y0 = y1 = y = 0) for strip slits.
struct PointSource2D {
    double x0 = -1.0;
    double z0 = 0.0;
    double z1 = 0.0;
    double x = 1.0;
    double z = 0.0;
    double t = 1.0;
    BoundaryCondition bc = BoundaryCondition::free();
    Particle particle{};

    void validate() const;
};

double tau_semiclassical_2d(const PointSource2D& g);

// sigma e^{i (m x^2/(2 hbar (t - tau)) + m x0^2/(2 hbar tau))} / sqrt(2 i pi hbar t/m)
//   * G0_1d(z - z1, t - tau) * G0_1d(z1 - z0, tau), tau = tau_sc.
cplx k_point_semiclassical_2d(const PointSource2D& g);

}  // namespace qslit

#pragma once

#include <vector>

#include "qslit/aperture.hpp"
#include "qslit/contour.hpp"
#include "qslit/free_propagators.hpp"
#include "qslit/numerics.hpp"

namespace qslit {

// Source at the origin at time 0, field g along +z, slit in the plane
// z = slit_z with opening x1 in [-half_x, half_x], y1 in [-half_y, half_y],
// screen point r with z > slit_z at time t. Potential convention: the
// propagator g_gravity solves the equation with V = -m g z.
struct GravityScenario {
    Particle particle{};
    double g = 0.0;
    double slit_z = 1.0;
    double half_x = 0.01;  // a
    double half_y = 0.1;   // b
    double t = 1.0;
    BoundaryCondition bc = BoundaryCondition::free();
    // Use G_g(r1, t; 0, tau) (elapsed time t - tau on the source leg) instead
    // of G_g(r1, tau; 0, 0). Diverges at tau -> 0 unless eta1 = 0.
    bool verbatim_second_factor = false;

    // g >= 0, t > 0, slit_z > 0, positive half sizes.
    void validate() const;
};

// eta1 z1/tau + eta2 (z - z1)/(t - tau) - i eta2 g t + i (eta1 + eta2) g tau
//   - i (eta1 - eta2) g tau / 2.
cplx chi(double t, double tau, double z, double z1, const BoundaryCondition& bc, double g);
cplx chi(double t, cplx tau, double z, double z1, const BoundaryCondition& bc, double g);

// Coefficients (ascending, degree 6 slot included) of
// P(tau) = |r-r1|^2 tau^2 - |r1|^2 (t-tau)^2 - g z tau^2 (t-tau)^2
//          - g^2/4 tau^4 (t-tau)^2 + g^2/4 tau^2 (t-tau)^4.
// The tau^6 coefficient cancels analytically.
std::vector<double> gravity_quintic_coefficients(const Vec3& r, const Vec3& r1, double t, double g);

struct GravityRoots {
    double tau = 0.0;                // root followed from the g = 0 solution
    std::vector<double> all_roots;   // every root in (0, t), ascending
};

// Stationary time of the two-parabola path through r1. The selected root is
// continued from the zero-field value in 10 equal steps of g.
// Throws GeometryError when no root lies in (0, t).
GravityRoots tau_sc_gravity(const Vec3& r, const Vec3& r1, double t, double g);

// (|v0|^2/2 - |v1|^2/2 + g z1) / (|v0|^2/2 + |v1|^2/2 + g |z1|).
double gravity_energy_residual(const Vec3& r, const Vec3& r1, double t, double tau, double g);

// m/(2 hbar) (|r-r1|^2/(t-tau) + |r1|^2/tau + g (z+z1)(t-tau) + g z1 tau
//   - g^2 ((t-tau)^3 + tau^3)/12).
double phi_sc_gravity(const Vec3& r, const Vec3& r1, double t, double tau, double g, const Particle& p);

// m/hbar (|r-r1|^2/(t-tau)^3 + |r1|^2/tau^3) - m g^2 t/(4 hbar).
double omega_sc_gravity(const Vec3& r, const Vec3& r1, double t, double tau, double g, const Particle& p);

// i hbar/(2m) times the time integral at one aperture point r1 = (x1, y1, slit_z),
// along a contour through the stationary time.
cplx k_gravity_point(const GravityScenario& sc, const Vec3& r, double x1, double y1,
                     const ContourOptions& opts = {});

// Aperture integral of k_gravity_point.
QuadratureResult k_gravity(const GravityScenario& sc, const Vec3& r, const QuadratureSpec& spec = {1e-8, 0.0, 4000, pi});

// Stationary-phase integrand at one aperture point; throws DegeneracyError
// when omega_sc <= 0.
cplx k_gravity_semiclassical_point(const GravityScenario& sc, const Vec3& r, double x1, double y1);

QuadratureResult k_gravity_semiclassical(const GravityScenario& sc, const Vec3& r,
                                         const QuadratureSpec& spec = {1e-8, 0.0, 4000, pi});

// 2m / (i hbar): multiplies k_gravity so that at g = 0 it equals the flat
// slit propagator of the transposed geometry.
cplx gravity_calibration_factor(const Particle& p);

// Pattern over the screen plane z = screen_z. The result's z axis holds the
// in-plane x coordinate. Exact amplitudes are multiplied by
// gravity_calibration_factor so both methods share one normalisation.
// Unconverged points are flagged as in evaluate_pattern.
PatternResult evaluate_gravity_pattern(const GravityScenario& sc, double screen_z, const std::vector<double>& y_values,
                                       const std::vector<double>& x_values, bool semiclassical,
                                       const QuadratureSpec& spec = {1e-8, 0.0, 4000, pi}, int threads = 0);

struct NeonDiagnostics {
    double mass = 3.349e-26;      // kg
    double hbar = 1.054571817e-34;
    double g = 9.81;
    double l1 = 0.1;              // trap to slits (m)
    double l2 = 0.0;              // slits to detector (m)
    double t1 = 0.0;              // sqrt(2 l1 / g)
    double velocity = 0.0;        // g t1
    double lambda = 0.0;          // 2 pi hbar / (m v)
    double lambda_reduced = 0.0;  // hbar / (m v)
    double mu = 0.0;              // m l1^2 / (2 hbar t1)
    double mu_path = 0.0;         // 2 pi (l1 + l2) / lambda
};

NeonDiagnostics neon_scenario_diagnostics(double l1 = 0.1, double l2 = 0.0, double g = 9.81);

}  // namespace qslit

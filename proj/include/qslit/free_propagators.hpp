#pragma once

#include "qslit/errors.hpp"
#include "qslit/vec3.hpp"

namespace qslit {

struct Particle {
    double mass = 1.0;
    double hbar = 1.0;

    void validate() const;
    double m_over_hbar() const { return mass / hbar; }
};

// Image-combination weights of the slit screen. eta1 weights the Neumann
// part and eta2 the Dirichlet part.
struct BoundaryCondition {
    cplx lambda1{1.0, 0.0};
    cplx lambda2{0.0, 0.0};

    cplx eta1() const { return 0.5 * (lambda1 + lambda2); }
    cplx eta2() const { return 0.5 * (lambda1 - lambda2); }

    static BoundaryCondition dirichlet() { return {1.0, -1.0}; }
    static BoundaryCondition neumann() { return {1.0, 1.0}; }
    static BoundaryCondition free() { return {1.0, 0.0}; }
    static BoundaryCondition from_eta(cplx eta1, cplx eta2) { return {eta1 + eta2, eta1 - eta2}; }
};

struct SpacetimePoint {
    Vec3 r{};
    double t = 0.0;
};

// sqrt(m / (2 i pi hbar dt)) on the principal branch, for complex dt with
// Re dt > 0 or Im dt != 0. For real positive dt this is
// sqrt(m / (2 pi hbar dt)) e^{-i pi/4}.
cplx inverse_sqrt_kernel_norm(cplx dt, const Particle& p);

// One- and three-dimensional free propagators. Zero for dt < 0.
cplx g0_free_1d(double dx, double dt, const Particle& p);
cplx g0_free(const Vec3& dr, double dt, const Particle& p);

// Analytic continuation to complex times (used by contour integrations).
cplx g0_free_1d(double dx, cplx dt, const Particle& p);
cplx g0_free(double dr2, cplx dt, const Particle& p);

// Free propagator times the uniform-field phase
// exp(i m/(2 hbar) (g (z_A + z_B) dt - g^2 dt^3 / 12)), dt = t_A - t_B.
// This solves the Schroedinger equation with potential -m g z.
cplx g_gravity(const SpacetimePoint& a, const SpacetimePoint& b, const Particle& p, double g);
cplx g_gravity(const Vec3& ra, const Vec3& rb, cplx dt, const Particle& p, double g);

// lambda1 G0(x - x1, r_perp - r1_perp) + lambda2 G0(x + x1, r_perp - r1_perp).
cplx green_general(const Vec3& r, double t, const Vec3& r1, double tau, const BoundaryCondition& bc,
                   const Particle& p);

// Normalized Gaussian packet (2 pi sigma^2)^{-3/4} exp(-|R-r0|^2/(4 sigma^2)) exp(i k0.(r0-R)).
cplx gaussian_packet(const Vec3& R, const Vec3& r0, double sigma, const Vec3& k0);

}  // namespace qslit

#include "qslit/free_propagators.hpp"

#include <cmath>

namespace qslit {

void Particle::validate() const {
    if (!(mass > 0.0) || !(hbar > 0.0) || !std::isfinite(mass) || !std::isfinite(hbar)) {
        throw DomainError("particle mass and hbar must be positive and finite");
    }
}

namespace {

const cplx kMinusQuarterTurn = std::polar(1.0, -0.25 * pi);

void check_time(double dt) {
    if (!std::isfinite(dt)) throw DomainError("propagator: non-finite time");
    if (dt == 0.0) throw SingularTimeError("propagator: zero time interval");
}

}  // namespace

cplx inverse_sqrt_kernel_norm(cplx dt, const Particle& p) {
    return std::sqrt(p.mass / (2.0 * pi * p.hbar * dt)) * kMinusQuarterTurn;
}

cplx g0_free_1d(double dx, double dt, const Particle& p) {
    check_time(dt);
    if (dt < 0.0) return 0.0;
    return g0_free_1d(dx, cplx(dt, 0.0), p);
}

cplx g0_free(const Vec3& dr, double dt, const Particle& p) {
    check_time(dt);
    if (dt < 0.0) return 0.0;
    return g0_free(norm2(dr), cplx(dt, 0.0), p);
}

cplx g0_free_1d(double dx, cplx dt, const Particle& p) {
    return inverse_sqrt_kernel_norm(dt, p) * std::exp(I * (p.mass * dx * dx / (2.0 * p.hbar)) / dt);
}

cplx g0_free(double dr2, cplx dt, const Particle& p) {
    const cplx n = inverse_sqrt_kernel_norm(dt, p);
    return n * n * n * std::exp(I * (p.mass * dr2 / (2.0 * p.hbar)) / dt);
}

cplx g_gravity(const Vec3& ra, const Vec3& rb, cplx dt, const Particle& p, double g) {
    const cplx field = g * (ra[2] + rb[2]) * dt - g * g * dt * dt * dt / 12.0;
    return g0_free(norm2(ra - rb), dt, p) * std::exp(I * (p.mass / (2.0 * p.hbar)) * field);
}

cplx g_gravity(const SpacetimePoint& a, const SpacetimePoint& b, const Particle& p, double g) {
    const double dt = a.t - b.t;
    check_time(dt);
    if (dt < 0.0) throw CausalityError("g_gravity: requires a.t > b.t");
    return g_gravity(a.r, b.r, cplx(dt, 0.0), p, g);
}

cplx green_general(const Vec3& r, double t, const Vec3& r1, double tau, const BoundaryCondition& bc,
                   const Particle& p) {
    if (!(t > tau)) throw CausalityError("green_general: requires t > tau");
    const double dt = t - tau;
    const Vec3 direct = r - r1;
    const Vec3 image{r[0] + r1[0], r[1] - r1[1], r[2] - r1[2]};
    return bc.lambda1 * g0_free(direct, dt, p) + bc.lambda2 * g0_free(image, dt, p);
}

cplx gaussian_packet(const Vec3& R, const Vec3& r0, double sigma, const Vec3& k0) {
    if (!(sigma > 0.0)) throw DomainError("gaussian_packet: sigma must be positive");
    const Vec3 d = R - r0;
    const double amp = std::pow(2.0 * pi * sigma * sigma, -0.75) * std::exp(-norm2(d) / (4.0 * sigma * sigma));
    return amp * std::exp(-I * dot(k0, d));
}

}  // namespace qslit

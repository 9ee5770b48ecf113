#pragma once

#include <vector>

#include "qslit/free_propagators.hpp"

namespace qslit {

// Rectangular opening in the slit plane: z in [center_z - half_z, center_z + half_z],
// y in [center_y - half_y, center_y + half_y].
struct SlitRect {
    double center_z = 0.0;
    double center_y = 0.0;
    double half_z = 0.01;  // a
    double half_y = 0.1;   // b
};

struct TruncationScenario {
    double x0 = -1.0;
    double x1 = 0.0;
    double x = 1.0;
    double y0 = 0.0;
    double z0 = 0.0;
    double t = 1.0;
    std::vector<SlitRect> slits{SlitRect{}};
    Particle particle{};
    // Only enters through the constant sigma prefactor of the fourth-order form.
    BoundaryCondition bc = BoundaryCondition::free();

    // Requires x0 < x1 < x, t > 0 and at least one slit with positive sizes.
    void validate() const;
};

enum class Regime { fraunhofer, intermediate, fresnel };

const char* to_string(Regime r);

struct RegimeThresholds {
    double fraunhofer_below = 0.1;
    double fresnel_above = 10.0;
};

struct RegimeReport {
    double t_c = 0.0;
    double lambda0 = 0.0;      // sqrt(2 pi hbar t / m)
    double lambda = 0.0;       // lambda0^2 / |x - x0|
    double L = 0.0;            // |x - x1|
    double N_F_a = 0.0;        // 2 a^2 / (lambda L)
    double N_F_b = 0.0;        // 2 b^2 / (lambda L)
    double gamma = 0.0;        // |x - x0| / |x1 - x0|
    double gamma_prime = 0.0;  // |x - x0| / L
    double kappa = 0.0;        // lambda0 / |x - x0|
    double rho_zoom_inv = 0.0; // (a / L) sqrt(8 gamma / gamma')
    double q = 0.0;            // kappa^2 / rho_zoom_inv
    double mu = 0.0;           // m L^2 / (hbar t)
    double fringe_spacing = 0.0;  // lambda L / (2 a)
    double delta_window = 0.0;    // predicted fringe shift at the window edge
    Regime regime = Regime::intermediate;
};

// |x1 - x0| t / |x - x0|.
double classical_time(double x0, double x1, double x, double t);

// C[alpha(z,a)] + C[alpha(z,-a)] + i S[alpha(z,a)] + i S[alpha(z,-a)] with
// alpha(z,a) = sqrt(m a^2 t / (pi hbar t_c (t - t_c))) (1 - (z/a)(t_c/t)).
cplx fresnel_factor(double z, double a, double t, double t_c, const Particle& p);

// Fresnel-integral window of one transverse axis for an opening [lo, hi] and
// a source at z0: (C + iS)(w_hi) - (C + iS)(w_lo), w = kappa (edge - z_cross),
// z_cross = z0 + (z - z0) t_c / t. Equals fresnel_factor for [-a, a], z0 = 0.
cplx fresnel_window(double z, double z0, double lo, double hi, double t, double t_c, const Particle& p);

// Truncation propagator summed over the slits. For one centred slit this is
// (-i/2) exp(i m |r - r0|^2 / (2 hbar t)) / (2 i pi hbar t/m)^{3/2} F(z,a) F(y,b).
cplx k_truncation(const TruncationScenario& sc, double y, double z);
double intensity_truncation(const TruncationScenario& sc, double y, double z);

// Screen probability density normalised to one over the whole screen:
// |sum_j W_z W_y|^2 / (4 gamma^2 * total aperture area), disjoint slits assumed.
double probability_truncation(const TruncationScenario& sc, double y, double z);

// Fourth-order Fraunhofer correction: the z-window of every slit is scaled by
// 1 - z^2 t_c / (2 L^2 t). With include_sigma the constant sigma_{t,t_c}
// prefactor of the boundary condition multiplies the result.
cplx k_fourth_order(const TruncationScenario& sc, double y, double z, bool include_sigma = true);

// sigma_{t,t_c}(x, x0) for the axial path.
cplx sigma_axial(const TruncationScenario& sc);

double primed_classical_time(double t_c, double t, double z, double L);
double primed_half_width(double a, double t_c, double t, double z, double L);
double primed_fresnel_number(double n_f, double z, double gamma, double L);

RegimeReport regime_report(const TruncationScenario& sc, double z_window, const RegimeThresholds& th = {});

// z^2 / (2 gamma L^2).
double fringe_shift_prediction(double z, double gamma, double L);

}  // namespace qslit

#pragma once

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qslit/numerics.hpp"
#include "qslit/point_source.hpp"

namespace qslit {

struct RectAperture {
    double half_width_y = 0.1;    // b
    double half_height_z = 0.01;  // a
    double center_y = 0.0;
    double center_z = 0.0;
};

// Two rectangles centred at z = +-center_offset_z.
struct DoubleSlitAperture {
    double center_offset_z = 0.05;
    double half_height_z = 0.01;
    double half_width_y = 0.1;

    // Centres +-a and half-height d, as in the two-slit integral.
    static DoubleSlitAperture from_centers_and_half_height(double a, double d, double b) { return {a, d, b}; }
    bool overlaps() const { return half_height_z > center_offset_z; }
    std::array<RectAperture, 2> rects() const;
};

struct MaskAperture {
    std::function<bool(double y, double z)> indicator;
    double y_lo = -1.0, y_hi = 1.0;
    double z_lo = -1.0, z_hi = 1.0;
    // Samples per line used to locate the mask boundary before bisection.
    int boundary_samples = 64;
};

using Aperture = std::variant<RectAperture, DoubleSlitAperture, MaskAperture>;

enum class Method { exact, semiclassical, truncation, fourth_order };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

std::string describe(const Aperture& a);

// Screen evaluation points. y and z must be strictly increasing.
struct ScreenGrid {
    std::vector<double> y_values{0.0};
    std::vector<double> z_values{0.0};
    double t = 1.0;
    double x_screen = 1.0;

    void validate() const;
};

struct SlitScenario {
    Vec3 r0{-1.0, 0.0, 0.0};
    Aperture aperture = RectAperture{};
    BoundaryCondition bc = BoundaryCondition::free();
    Particle particle{};
};

struct PatternResult {
    std::size_t ny = 0;
    std::size_t nz = 0;
    // Row-major: index = iy * nz + iz.
    std::vector<cplx> amplitudes;
    std::vector<double> intensities;
    std::vector<double> probability_density;
    std::vector<bool> unconverged;
    double omega = 0.0;
    // Estimated share of the screen integral inside the grid window.
    double captured_fraction = 1.0;
    std::vector<SemiclassicalDiagnostics> corner_diagnostics;
    Method method = Method::exact;
    BoundaryCondition bc;
    std::string aperture;
    std::vector<std::string> warnings;

    std::size_t index(std::size_t iy, std::size_t iz) const { return iy * nz + iz; }
    std::size_t unconverged_count() const;
};

// Default accuracy used for aperture integrals.
QuadratureSpec default_aperture_spec();

// Aperture integrals of the one-point propagator; geo.r1 is ignored.
// method must be exact or semiclassical.
QuadratureResult k_slit(const PointSourceGeometry& geo, const RectAperture& ap, Method method,
                        const QuadratureSpec& spec = default_aperture_spec());
QuadratureResult k_double_slit(const PointSourceGeometry& geo, const DoubleSlitAperture& ap, Method method,
                               const QuadratureSpec& spec = default_aperture_spec());
QuadratureResult k_mask(const PointSourceGeometry& geo, const MaskAperture& ap, Method method,
                        const QuadratureSpec& spec = default_aperture_spec());

// Dispatch on aperture and method, including the truncation and
// fourth-order closed forms (rectangular apertures only).
QuadratureResult k_aperture(const PointSourceGeometry& geo, const Aperture& ap, Method method,
                            const QuadratureSpec& spec = default_aperture_spec());

// Amplitude on every grid point (fanned out over `threads` workers; 0 picks
// the hardware concurrency), trapezoidal normaliser omega over the window and
// the normalised probability density. Points whose quadrature did not
// converge keep their best estimate and are flagged.
PatternResult evaluate_pattern(const SlitScenario& sc, const ScreenGrid& grid, Method method,
                               const QuadratureSpec& spec = default_aperture_spec(), int threads = 0);

// Fills intensities, omega, probability density and captured fraction from
// res.amplitudes (res.ny x res.nz, row-major) on the given axes.
void normalize_pattern(PatternResult& res, const std::vector<double>& y_values, const std::vector<double>& z_values);

// Trapezoidal weights; a single sample gets weight one.
std::vector<double> trapezoid_weights(const std::vector<double>& x);

}  // namespace qslit

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qslit/errors.hpp"

namespace qslit {

struct FringeSet {
    std::vector<double> minima_z;       // ascending
    std::vector<double> spacings;       // successive differences of minima_z
    std::vector<double> shifts_vs_reference;  // filled by compare_fringes
    std::vector<double> peak_amplitudes;      // largest sample between consecutive minima
};

struct MinimaOptions {
    // A local minimum counts only if it lies below this fraction of the
    // highest sample on each side before the profile dips lower again.
    double depth_ratio = 0.8;
};

// Sub-sample minima of a sampled profile restricted to `window` (inclusive),
// by a quadratic through each accepted discrete minimum and its neighbours.
// Requires at least 5 samples with strictly increasing z.
// Throws InsufficientFeaturesError when fewer than two minima are found.
FringeSet find_minima(const std::vector<double>& z, const std::vector<double>& intensity,
                      std::optional<std::pair<double, double>> window = std::nullopt,
                      const MinimaOptions& opts = {});

struct ShiftReport {
    std::size_t pairs = 0;
    // (dz'_n - dz_n) / dz_n over paired spacings.
    std::vector<double> spacing_shifts;
    // z'_n / z_n - 1 over paired minima.
    std::vector<double> position_shifts;
    // The test set with shifts_vs_reference = spacing_shifts.
    FringeSet test;
    std::vector<std::string> warnings;
};

// Pairs minima and spacings by index; a length mismatch pairs up to the
// shorter set and adds a warning.
ShiftReport compare_fringes(const FringeSet& test, const FringeSet& reference);

struct Envelope {
    std::vector<double> z;       // input samples between the outermost peaks
    std::vector<double> values;  // linear interpolation between peaks
    std::vector<double> peak_z;
    std::vector<double> peak_values;
};

// Upper envelope through the interpolated local maxima.
// Throws InsufficientFeaturesError with fewer than 3 peaks.
Envelope envelope(const std::vector<double>& z, const std::vector<double>& intensity);

// Linear interpolation of (x, y) at xq; clamps outside the samples.
double interpolate_linear(const std::vector<double>& x, const std::vector<double>& y, double xq);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

// Half width at half maximum of a peak sitting at the first sample (the
// symmetry axis). Returns +infinity when the first sample is not a local
// maximum or the profile never falls to half of it.
double central_peak_half_width(const std::vector<double>& z, const std::vector<double>& intensity);

}  // namespace qslit

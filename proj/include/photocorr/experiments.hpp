#pragma once

#include "photocorr/contours.hpp"
#include "photocorr/scanner.hpp"

namespace photocorr {

// Ratio-of-measurements protocols. Both run two independent steady-state
// solves and divide the resulting G2 fields cellwise, with the usual
// denominator guard recorded in the mask.
struct RatioExperimentResult {
    ScalarField ratio;
    double residual_1{0.0};
    double residual_2{0.0};
};

// R(a1, a2) = G2_[spacing s1](a1, a2) / G2_[spacing s2](ab1, ab2) with
// ab = arccos((s1/s2) cos a). Both factors are evaluated from their own
// expectation tables at the exact angles; nothing is resampled from a grid.
// template_spec supplies everything but the positions, which are replaced
// by equidistant chains at s1 and s2. Requires s1 <= s2 so the scaled angle
// is defined on the whole grid.
RatioExperimentResult scaling_experiment(const SystemSpec& template_spec, double s1, double s2,
                                         const AngleGrid& grid, int workers = 1);

// R(a1, a2) = G2_[omega_c_1](a1, a2) / G2_[omega_c_2](a1, a2) at identical
// angles. Requires a ladder scheme.
RatioExperimentResult rabi_ratio_experiment(const SystemSpec& template_spec, double omega_c_1,
                                            double omega_c_2, const AngleGrid& grid,
                                            int workers = 1);

// Full scan plus zero-level contour extraction of C2 and C4 at the given
// irregular spacings. Requires a two-level scheme.
struct RandomSpacingReport {
    ScanResult scan;
    ContourSet c2_contours;
    ContourSet c4_contours;
};

RandomSpacingReport random_spacing_check(const SystemSpec& template_spec,
                                         const std::vector<double>& spacings,
                                         const AngleGrid& grid, int workers = 1);

}  // namespace photocorr

#pragma once

#include <vector>

#include "photocorr/scanner.hpp"

namespace photocorr {

struct ContourPoint {
    double alpha1{0.0};
    double alpha2{0.0};
};

enum class ContourKind { LevelSet, RatioThreshold };

// Marching-squares output. Each polyline is an ordered point sequence in
// (alpha1, alpha2) coordinates; closed loops repeat their first point.
struct ContourSet {
    double level{0.0};
    ContourKind kind{ContourKind::LevelSet};
    std::vector<std::vector<ContourPoint>> polylines;

    bool empty() const { return polylines.empty(); }
    size_t total_points() const;
};

// Level-set extraction with linear interpolation along cell edges; saddle
// cells are disambiguated by the cell-center value. Cells touching a masked
// corner are skipped; a fully masked field yields an empty set.
ContourSet extract_contours(const ScalarField& field, double level);

// Cellwise C / G2 with a denominator guard of 1e-12 times the G2 scale;
// guarded cells are masked, not zeroed.
ScalarField ratio_field(const ScalarField& numerator, const ScalarField& denominator);

// Contour of the ratio field at the threshold, tagged RatioThreshold.
ContourSet ratio_regions(const ScalarField& c_field, const ScalarField& g2_field,
                         double threshold);

// Bilinear interpolation of the field at an arbitrary in-domain point;
// used to check the vertex residual invariant and to probe values along
// extracted contours.
double bilinear_value(const ScalarField& field, double alpha1, double alpha2);

}  // namespace photocorr

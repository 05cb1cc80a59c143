#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "photocorr/correlations.hpp"
#include "photocorr/dynamics.hpp"
#include "photocorr/types.hpp"

namespace photocorr {

// Uniform detector-angle grid on [0, pi] per axis, endpoints included.
struct AngleGrid {
    int n_points{201};

    double alpha(int i) const;
    std::vector<double> alphas() const;
};

void validate_grid(const AngleGrid& grid);

enum class FieldKind {
    G2,
    U2,
    G2Pairs,
    G2Triples,
    G2Quads,
    U2Pairs,
    U2Triples,
    U2Quads,
    C2,
    C3,
    C4,
    G2Normalized,
    IntensityProduct,
};

// Stable names used in filenames and configs: G2, U2, G2_part2.., U2_part2..,
// C2, C3, C4, g2norm, intensity_product.
std::string field_name(FieldKind kind);
FieldKind field_kind_from_name(const std::string& name);
std::vector<FieldKind> all_field_kinds();

struct ScalarField {
    AngleGrid grid;
    Eigen::ArrayXXd values;                          // (i, j) = F(alpha1_i, alpha2_j)
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;  // true = undefined cell
    // Paper-shading cap for plots (2 for the two-level map, 20 for the ladder
    // map); carried as metadata, values are never clamped.
    std::optional<double> display_cap;

    bool any_masked() const { return mask.any(); }
    Eigen::Index masked_count() const { return mask.count(); }
};

// Finite on unmasked cells, shapes match the grid. Throws std::runtime_error.
void validate_field(const ScalarField& field);

struct ScanResult {
    SteadyStateReport steady;
    std::map<FieldKind, ScalarField> fields;
};

// One steady-state solve, one expectation table, then an independent
// per-cell evaluation of every requested field. Output is bitwise
// independent of the worker count: cells write only their own slot.
ScanResult scan(const SystemSpec& spec, const AngleGrid& grid,
                const std::vector<FieldKind>& kinds, int workers = 1);

namespace detail {

// Evaluates the correlation breakdown on the cross product of two direction
// axes and hands each cell to `emit`; rows are striped over `workers`
// threads and `emit(i, j, b)` must only touch cell (i, j).
void for_each_pair(const ExpectationTable& table, const std::vector<DetectorDirection>& axis1,
                   const std::vector<DetectorDirection>& axis2, int workers,
                   const std::function<void(int, int, const CorrelationBreakdown&)>& emit);

}  // namespace detail

}  // namespace photocorr

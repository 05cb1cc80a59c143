#include "photocorr/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace photocorr {

double AngleGrid::alpha(int i) const {
    return std::numbers::pi * double(i) / double(n_points - 1);
}

std::vector<double> AngleGrid::alphas() const {
    std::vector<double> a(static_cast<size_t>(n_points), 0.0);
    for (int i = 0; i < n_points; ++i) a[static_cast<size_t>(i)] = alpha(i);
    return a;
}

void validate_grid(const AngleGrid& grid) {
    if (grid.n_points < 2) throw std::invalid_argument("angle grid needs at least 2 points per axis");
}

std::string field_name(FieldKind kind) {
    switch (kind) {
        case FieldKind::G2: return "G2";
        case FieldKind::U2: return "U2";
        case FieldKind::G2Pairs: return "G2_part2";
        case FieldKind::G2Triples: return "G2_part3";
        case FieldKind::G2Quads: return "G2_part4";
        case FieldKind::U2Pairs: return "U2_part2";
        case FieldKind::U2Triples: return "U2_part3";
        case FieldKind::U2Quads: return "U2_part4";
        case FieldKind::C2: return "C2";
        case FieldKind::C3: return "C3";
        case FieldKind::C4: return "C4";
        case FieldKind::G2Normalized: return "g2norm";
        case FieldKind::IntensityProduct: return "intensity_product";
    }
    throw std::invalid_argument("unknown field kind");
}

FieldKind field_kind_from_name(const std::string& name) {
    for (FieldKind kind : all_field_kinds())
        if (field_name(kind) == name) return kind;
    throw std::invalid_argument("unknown field name: " + name);
}

std::vector<FieldKind> all_field_kinds() {
    return {FieldKind::G2,        FieldKind::U2,        FieldKind::G2Pairs,
            FieldKind::G2Triples, FieldKind::G2Quads,   FieldKind::U2Pairs,
            FieldKind::U2Triples, FieldKind::U2Quads,   FieldKind::C2,
            FieldKind::C3,        FieldKind::C4,        FieldKind::G2Normalized,
            FieldKind::IntensityProduct};
}

void validate_field(const ScalarField& field) {
    validate_grid(field.grid);
    const auto n = static_cast<Eigen::Index>(field.grid.n_points);
    if (field.values.rows() != n || field.values.cols() != n || field.mask.rows() != n ||
        field.mask.cols() != n)
        throw std::runtime_error("scalar field shape does not match its grid");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!field.mask(i, j) && !std::isfinite(field.values(i, j)))
                throw std::runtime_error("non-finite value on an unmasked cell");
}

namespace detail {

void for_each_pair(const ExpectationTable& table, const std::vector<DetectorDirection>& axis1,
                   const std::vector<DetectorDirection>& axis2, int workers,
                   const std::function<void(int, int, const CorrelationBreakdown&)>& emit) {
    const int rows = static_cast<int>(axis1.size());
    const int cols = static_cast<int>(axis2.size());
    auto run_rows = [&](int first, int stride) {
        for (int i = first; i < rows; i += stride)
            for (int j = 0; j < cols; ++j)
                emit(i, j, g2_breakdown(table, axis1[static_cast<size_t>(i)],
                                        axis2[static_cast<size_t>(j)]));
    };

    workers = std::clamp(workers, 1, std::max(rows, 1));
    if (workers == 1) {
        run_rows(0, 1);
        return;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                run_rows(w, workers);
            } catch (...) {
                failures[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

namespace {

double field_value(FieldKind kind, const CorrelationBreakdown& b) {
    switch (kind) {
        case FieldKind::G2: return b.g2_full;
        case FieldKind::U2: return b.u2_part[0] + b.u2_part[1] + b.u2_part[2];
        case FieldKind::G2Pairs: return b.g2_part[0];
        case FieldKind::G2Triples: return b.g2_part[1];
        case FieldKind::G2Quads: return b.g2_part[2];
        case FieldKind::U2Pairs: return b.u2_part[0];
        case FieldKind::U2Triples: return b.u2_part[1];
        case FieldKind::U2Quads: return b.u2_part[2];
        case FieldKind::C2: return b.c_n[0];
        case FieldKind::C3: return b.c_n[1];
        case FieldKind::C4: return b.c_n[2];
        case FieldKind::G2Normalized: return b.normalized_masked ? 0.0 : b.g2_normalized;
        case FieldKind::IntensityProduct: return b.g1_d1 * b.g1_d2;
    }
    throw std::invalid_argument("unknown field kind");
}

std::optional<double> display_cap_for(FieldKind kind, const SystemSpec& spec) {
    if (kind != FieldKind::G2Normalized) return std::nullopt;
    switch (spec.interaction) {
        case InteractionKind::Ddi: return 2.0;
        case InteractionKind::Rri: return 20.0;
        case InteractionKind::None: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

ScanResult scan(const SystemSpec& spec, const AngleGrid& grid,
                const std::vector<FieldKind>& kinds, int workers) {
    validate_grid(grid);
    if (kinds.empty()) throw std::invalid_argument("scan requested no fields");

    ScanResult result;
    result.steady = solve_steady_state(spec);
    const auto table = build_expectation_table(spec, result.steady.rho);

    const int n = grid.n_points;
    std::vector<DetectorDirection> axis;
    axis.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) axis.push_back(detector_direction(spec, grid.alpha(i)));

    for (FieldKind kind : kinds) {
        ScalarField field;
        field.grid = grid;
        field.values = Eigen::ArrayXXd::Zero(n, n);
        field.mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
        field.display_cap = display_cap_for(kind, spec);
        result.fields.emplace(kind, std::move(field));
    }

    detail::for_each_pair(table, axis, axis, workers,
                          [&](int i, int j, const CorrelationBreakdown& b) {
                              for (auto& [kind, field] : result.fields) {
                                  field.values(i, j) = field_value(kind, b);
                                  if (kind == FieldKind::G2Normalized)
                                      field.mask(i, j) = b.normalized_masked;
                              }
                          });
    return result;
}

}  // namespace photocorr

#include "photocorr/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace photocorr {

namespace {

// G2 on the cross product of two angle axes, evaluated from one steady
// state. Returns the unmasked field and the solver residual.
std::pair<ScalarField, double> g2_on_axes(const SystemSpec& spec, const AngleGrid& grid,
                                          const std::vector<double>& alphas1,
                                          const std::vector<double>& alphas2, int workers) {
    const auto steady = solve_steady_state(spec);
    const auto table = build_expectation_table(spec, steady.rho);

    auto directions = [&](const std::vector<double>& alphas) {
        std::vector<DetectorDirection> axis;
        axis.reserve(alphas.size());
        for (double a : alphas) axis.push_back(detector_direction(spec, a));
        return axis;
    };
    const auto axis1 = directions(alphas1);
    const auto axis2 = directions(alphas2);

    const int n = grid.n_points;
    ScalarField field;
    field.grid = grid;
    field.values = Eigen::ArrayXXd::Zero(n, n);
    field.mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
    detail::for_each_pair(table, axis1, axis2, workers,
                          [&](int i, int j, const CorrelationBreakdown& b) {
                              field.values(i, j) = b.g2_full;
                          });
    return {std::move(field), steady.residual};
}

SystemSpec with_positions(const SystemSpec& template_spec, std::vector<Eigen::Vector3d> positions) {
    SystemSpec spec = template_spec;
    spec.n_atoms = static_cast<int>(positions.size());
    spec.positions = std::move(positions);
    return spec;
}

}  // namespace

RatioExperimentResult scaling_experiment(const SystemSpec& template_spec, double s1, double s2,
                                         const AngleGrid& grid, int workers) {
    validate_grid(grid);
    if (!(s1 > 0.0) || !(s2 > 0.0) || s1 > s2)
        throw std::invalid_argument("scaling protocol needs 0 < s1 <= s2");
    if (template_spec.scheme.kind != SchemeKind::TwoLevel)
        throw std::invalid_argument("scaling protocol is defined for the two-level scheme");

    const auto spec1 =
        with_positions(template_spec, equidistant_chain(template_spec.n_atoms, s1));
    const auto spec2 =
        with_positions(template_spec, equidistant_chain(template_spec.n_atoms, s2));

    const auto alphas = grid.alphas();
    std::vector<double> scaled(alphas.size(), 0.0);
    for (size_t i = 0; i < alphas.size(); ++i)
        scaled[i] = std::acos((s1 / s2) * std::cos(alphas[i]));

    auto [numerator, residual_1] = g2_on_axes(spec1, grid, alphas, alphas, workers);
    auto [denominator, residual_2] = g2_on_axes(spec2, grid, scaled, scaled, workers);

    return {ratio_field(numerator, denominator), residual_1, residual_2};
}

RatioExperimentResult rabi_ratio_experiment(const SystemSpec& template_spec, double omega_c_1,
                                            double omega_c_2, const AngleGrid& grid, int workers) {
    validate_grid(grid);
    if (template_spec.scheme.kind != SchemeKind::ThreeLevelLadder)
        throw std::invalid_argument("control-field ratio protocol needs the ladder scheme");

    auto with_omega_c = [&](double omega_c) {
        SystemSpec spec = template_spec;
        spec.omega_c = omega_c;
        return spec;
    };
    const auto alphas = grid.alphas();
    auto [numerator, residual_1] = g2_on_axes(with_omega_c(omega_c_1), grid, alphas, alphas, workers);
    auto [denominator, residual_2] =
        g2_on_axes(with_omega_c(omega_c_2), grid, alphas, alphas, workers);

    return {ratio_field(numerator, denominator), residual_1, residual_2};
}

RandomSpacingReport random_spacing_check(const SystemSpec& template_spec,
                                         const std::vector<double>& spacings,
                                         const AngleGrid& grid, int workers) {
    if (template_spec.scheme.kind != SchemeKind::TwoLevel)
        throw std::invalid_argument("irregular-spacing check is defined for the two-level scheme");

    const auto spec = with_positions(template_spec, chain_positions(spacings));
    RandomSpacingReport report;
    report.scan = scan(spec, grid, {FieldKind::G2, FieldKind::C2, FieldKind::C3, FieldKind::C4},
                       workers);
    report.c2_contours = extract_contours(report.scan.fields.at(FieldKind::C2), 0.0);
    report.c4_contours = extract_contours(report.scan.fields.at(FieldKind::C4), 0.0);
    return report;
}

}  // namespace photocorr

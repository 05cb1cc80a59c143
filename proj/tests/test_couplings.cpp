#include "doctest.h"

#include <cmath>
#include <numbers>

#include "photocorr/couplings.hpp"

using namespace photocorr;

namespace {

constexpr double pi = std::numbers::pi;

DdiTensorInput perp_input(double separation) {
    return {Eigen::Vector3d(separation, 0.0, 0.0), Eigen::Vector3d(0.0, 0.0, 1.0)};
}

SystemSpec ddi_spec(const std::vector<double>& spacings) {
    SystemSpec spec;
    spec.n_atoms = static_cast<int>(spacings.size()) + 1;
    spec.scheme.kind = SchemeKind::TwoLevel;
    spec.positions = chain_positions(spacings);
    spec.omega_p = 0.01;
    spec.interaction = InteractionKind::Ddi;
    return spec;
}

SystemSpec rri_spec(int n, double spacing) {
    SystemSpec spec;
    spec.n_atoms = n;
    spec.scheme.kind = SchemeKind::ThreeLevelLadder;
    spec.positions = equidistant_chain(n, spacing);
    spec.omega_p = 0.01;
    spec.omega_c = 1.0;
    spec.gamma_c = 0.05;
    spec.interaction = InteractionKind::Rri;
    spec.rri.mode = RriCouplingSpec::Mode::Dimensionless;
    spec.rri.v_nn = 2.0;
    return spec;
}

}  // namespace

TEST_CASE("coupling tensor is even in the separation") {
    const auto plus = chi_tensor(perp_input(0.37));
    const auto minus = chi_tensor({Eigen::Vector3d(-0.37, 0.0, 0.0), {0.0, 0.0, 1.0}});
    CHECK((plus - minus).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling tensor rejects zero separation") {
    CHECK_THROWS_AS(chi_tensor(perp_input(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(ddi_gamma_ratio(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ddi_omega_ratio(0.0), std::invalid_argument);
}

TEST_CASE("perpendicular projection approaches 2/3 at small separation") {
    // eta = 1e-3
    const auto input = perp_input(1e-3 / (2.0 * pi));
    CHECK(input.eta() == doctest::Approx(1e-3));
    CHECK(chi_projected(input).imag() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("component formulas agree with the projected tensor") {
    // two independent evaluation paths of the same physical quantity
    for (int k = 0; k <= 40; ++k) {
        const double eta = 0.2 * std::pow(1e3 / 0.2, k / 40.0);
        const auto input = perp_input(eta / (2.0 * pi));
        const Complex proj = chi_projected(input);
        CHECK(std::abs(1.5 * proj.imag() - ddi_gamma_ratio(eta)) < 1e-12);
        CHECK(std::abs(1.5 * proj.real() - ddi_omega_ratio(eta)) < 1e-12);
    }
}

TEST_CASE("decay ratio values") {
    // wavelength spacing: gamma^(12)/gamma_p = 3/(8 pi^2)
    CHECK(ddi_gamma_ratio(2.0 * pi) == doctest::Approx(3.0 / (8.0 * pi * pi)).epsilon(1e-12));
    CHECK(ddi_gamma_ratio(2.0 * pi) == doctest::Approx(0.03800).epsilon(1e-3));
    // normalization: ratio -> 1 at contact
    CHECK(ddi_gamma_ratio(1e-4) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("perpendicular decay ratio is bounded by 1") {
    for (int k = 0; k <= 120; ++k) {
        const double eta = 1e-3 * std::pow(1e6, k / 120.0);
        CHECK(std::abs(ddi_gamma_ratio(eta)) < 1.0);
    }
}

TEST_CASE("couplings vanish at large separation") {
    CHECK(std::abs(ddi_gamma_ratio(1e4)) < 1e-3);
    CHECK(std::abs(ddi_omega_ratio(1e4)) < 1e-3);
}

TEST_CASE("dipole-dipole coupling matrices for a chain") {
    const auto spec = ddi_spec({1.0, 1.0});
    const auto c = ddi_couplings(spec);

    CHECK(c.gamma(0, 0) == 1.0);
    CHECK(c.gamma(1, 1) == 1.0);
    CHECK(c.omega(0, 0) == 0.0);
    CHECK(c.v.isZero(0.0));
    CHECK((c.gamma - c.gamma.transpose()).norm() == 0.0);
    CHECK((c.omega - c.omega.transpose()).norm() == 0.0);

    CHECK(c.gamma(0, 1) == doctest::Approx(ddi_gamma_ratio(2.0 * pi)).epsilon(1e-15));
    CHECK(c.gamma(0, 2) == doctest::Approx(ddi_gamma_ratio(4.0 * pi)).epsilon(1e-15));
    CHECK(c.omega(0, 1) == doctest::Approx(ddi_omega_ratio(2.0 * pi)).epsilon(1e-15));
}

TEST_CASE("dipole-dipole couplings reject unsupported geometry") {
    auto spec = ddi_spec({1.0, 1.0});
    SUBCASE("ladder scheme") {
        spec.scheme.kind = SchemeKind::ThreeLevelLadder;
        spec.interaction = InteractionKind::Rri;
        CHECK_THROWS_AS(ddi_couplings(spec), std::invalid_argument);
    }
    SUBCASE("bent chain") {
        spec.positions[2] = Eigen::Vector3d(1.0, 0.9, 0.0);
        CHECK_THROWS_AS(ddi_couplings(spec), std::invalid_argument);
    }
}

TEST_CASE("Rydberg couplings follow the 1/r^6 law") {
    const auto spec = rri_spec(4, 5.0);
    const auto c = rri_couplings(spec, spec.rri);

    CHECK((c.gamma - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
    CHECK(c.omega.isZero(0.0));
    CHECK(c.v(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.v(0, 2) == doctest::Approx(2.0 / 64.0).epsilon(1e-12));
    CHECK(c.v(0, 3) == doctest::Approx(2.0 / 729.0).epsilon(1e-12));
    CHECK((c.v - c.v.transpose()).norm() == 0.0);
}

TEST_CASE("Rydberg couplings are translation invariant") {
    auto spec = rri_spec(3, 5.0);
    const auto base = rri_couplings(spec, spec.rri);
    for (auto& p : spec.positions) p += Eigen::Vector3d(7.0, -3.0, 2.0);
    const auto shifted = rri_couplings(spec, spec.rri);
    CHECK((base.v - shifted.v).norm() == 0.0);
}

TEST_CASE("Rydberg couplings commute with atom relabeling") {
    auto spec = rri_spec(3, 5.0);
    spec.positions = chain_positions({5.0, 7.5});
    const auto base = rri_couplings(spec, spec.rri);

    // reverse the atom order
    auto reversed = spec;
    std::reverse(reversed.positions.begin(), reversed.positions.end());
    const auto relabeled = rri_couplings(reversed, reversed.rri);
    const int n = spec.n_atoms;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            CHECK(relabeled.v(i, j) == doctest::Approx(base.v(n - 1 - i, n - 1 - j)));
}

TEST_CASE("physical C6 conversion") {
    auto spec = rri_spec(2, 5.0);
    spec.rri.mode = RriCouplingSpec::Mode::Physical;
    spec.rri.c6_ghz_um6 = 50.0;
    spec.rri.lambda_p_um = 0.78;
    spec.rri.gamma_p_hz = 6.07e6;
    const auto c = rri_couplings(spec, spec.rri);
    // 50 GHz um^6 at 5 lambda_p = 3.9 um, over gamma_p
    CHECK(c.v(0, 1) == doctest::Approx(2.34095).epsilon(1e-4));
    CHECK(std::isfinite(c.v(0, 1)));

    SUBCASE("missing wavelength") {
        spec.rri.lambda_p_um = 0.0;
        CHECK_THROWS_AS(rri_couplings(spec, spec.rri), std::invalid_argument);
    }
    SUBCASE("missing linewidth") {
        spec.rri.gamma_p_hz = 0.0;
        CHECK_THROWS_AS(rri_couplings(spec, spec.rri), std::invalid_argument);
    }
}

TEST_CASE("interaction dispatch") {
    SUBCASE("none") {
        SystemSpec spec;
        spec.n_atoms = 2;
        spec.positions = equidistant_chain(2, 1.0);
        const auto c = couplings_for(spec);
        CHECK((c.gamma - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
        CHECK(c.omega.isZero(0.0));
        CHECK(c.v.isZero(0.0));
    }
    SUBCASE("dipole-dipole") {
        const auto spec = ddi_spec({1.0});
        CHECK(couplings_for(spec).omega(0, 1) != 0.0);
    }
    SUBCASE("Rydberg") {
        const auto spec = rri_spec(2, 5.0);
        CHECK(couplings_for(spec).v(0, 1) == doctest::Approx(2.0));
    }
}

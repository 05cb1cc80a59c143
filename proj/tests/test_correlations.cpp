#include "doctest.h"

#include <numbers>

#include "oracles.hpp"
#include "photocorr/correlations.hpp"
#include "photocorr/dynamics.hpp"
#include "photocorr/operators.hpp"

using namespace photocorr;

namespace {

constexpr double pi = std::numbers::pi;

SystemSpec ddi_spec(const std::vector<double>& spacings, double omega_p = 0.01) {
    SystemSpec spec;
    spec.n_atoms = static_cast<int>(spacings.size()) + 1;
    spec.scheme.kind = SchemeKind::TwoLevel;
    spec.positions = chain_positions(spacings);
    spec.omega_p = omega_p;
    spec.interaction = InteractionKind::Ddi;
    return spec;
}

SystemSpec free_spec(int n, double omega_p) {
    SystemSpec spec;
    spec.n_atoms = n;
    spec.positions = equidistant_chain(n, 1.0);
    spec.omega_p = omega_p;
    return spec;
}

std::vector<double> coords_of(const SystemSpec& spec) {
    const Eigen::VectorXd x = chain_coordinates(spec.positions);
    return {x.data(), x.data() + x.size()};
}

}  // namespace

TEST_CASE("four-operator expectations vanish on repeated raising") {
    const auto spec = ddi_spec({1.0, 1.0});
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                CHECK(table.four(i, i, k, l) == Complex(0.0));
                CHECK(table.four(k, l, i, i) == Complex(0.0));
            }
}

TEST_CASE("expectation table symmetries") {
    const auto spec = ddi_spec({1.3, 0.6});
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    const int n = spec.n_atoms;

    CHECK((table.two_op - table.two_op.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const Complex v = table.four(i, j, k, l);
                    CHECK(std::abs(v - std::conj(table.four(l, k, j, i))) < 1e-14);
                    CHECK(std::abs(v - table.four(j, i, k, l)) < 1e-14);
                    CHECK(std::abs(v - table.four(i, j, l, k)) < 1e-14);
                }
}

TEST_CASE("product states factorize exactly") {
    const auto spec = free_spec(3, 0.3);
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    for (size_t idx = 0; idx < table.four_op.size(); ++idx)
        CHECK(std::abs(table.four_op[idx] - table.u_four_op[idx]) < 1e-12);
}

TEST_CASE("interaction breaks the factorization") {
    const auto spec = ddi_spec({1.0, 1.0, 1.0});
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    double max_diff = 0.0;
    for (size_t idx = 0; idx < table.four_op.size(); ++idx)
        max_diff = std::max(max_diff, std::abs(table.four_op[idx] - table.u_four_op[idx]));
    CHECK(max_diff > 0.0);
}

TEST_CASE("atom grouping rule for the factorized four-operator expectation") {
    Vector coh(2);
    coh << Complex(0.1, 0.02), Complex(0.1, 0.02);
    Eigen::VectorXd pop(2);
    pop << 0.25, 0.25;
    // <A_eg^1 A_eg^2 A_ge^2 A_ge^1>_U = <A_ee^1><A_ee^2>
    CHECK(factorized_four_op(0, 1, 1, 0, coh, pop) == Complex(0.25 * 0.25));
    // repeated raising on one atom
    CHECK(factorized_four_op(0, 0, 1, 0, coh, pop) == Complex(0.0));
    // coherence factors: <A_eg^1 A_eg^2 A_ge^2 A_ge^2> is zero (k = l)
    CHECK(factorized_four_op(0, 1, 1, 1, coh, pop) == Complex(0.0));
}

TEST_CASE("index classes partition the nonzero support") {
    int counts[5] = {0, 0, 0, 0, 0};
    int support = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    if (i == j || k == l) continue;
                    ++support;
                    ++counts[distinct_atom_count(i, j, k, l)];
                }
    CHECK(support == 144);
    CHECK(counts[1] == 0);
    CHECK(counts[2] == 24);
    CHECK(counts[3] == 96);
    CHECK(counts[4] == 24);
}

TEST_CASE("detector phases") {
    const auto spec = ddi_spec({1.0, 1.0});
    const auto d = detector_direction(spec, pi / 2.0);
    for (Eigen::Index j = 0; j < 3; ++j)
        CHECK(std::abs(d.phase_factors(j) - Complex(1.0)) < 1e-12);
    const auto d0 = detector_direction(spec, 0.0);
    for (Eigen::Index j = 0; j < 3; ++j)
        CHECK(std::abs(std::abs(d0.phase_factors(j)) - 1.0) < 1e-15);
    CHECK_THROWS_AS(detector_direction(spec, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(detector_direction(spec, 3.5), std::invalid_argument);
}

TEST_CASE("single atom intensity is angle independent") {
    SystemSpec spec;
    spec.n_atoms = 1;
    spec.positions = {{0.0, 0.0, 0.0}};
    spec.omega_p = 0.2;
    const auto rho = solve_steady_state(spec).rho;
    const auto table = build_expectation_table(spec, rho);
    const double expected = expectation(rho, embed_operator(spec, 1, Level::e, Level::e)).real();
    for (double alpha : {0.0, 0.3, pi / 2.0, 2.5, pi}) {
        CHECK(g1(table, detector_direction(spec, alpha)) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("perpendicular detection sums the raw two-operator table") {
    const auto spec = ddi_spec({1.0, 1.0});
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    const double direct = table.two_op.sum().real();
    CHECK(g1(table, detector_direction(spec, pi / 2.0)) ==
          doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("non-interacting intensity has the closed two-term form") {
    const auto spec = free_spec(4, 0.05);
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    const auto coords = coords_of(spec);

    const double intensity = table.population(0);
    const double coherent = std::norm(table.coherence(0));
    for (double alpha : {0.1, 0.7, 1.3, 2.2, 3.0}) {
        const auto d = detector_direction(spec, alpha);
        Complex cross = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) cross += d.phase_factors(i) * std::conj(d.phase_factors(j));
        const double expected = intensity * 4.0 + coherent * cross.real();
        const double actual = g1(table, d);
        CHECK(actual == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("single atom cannot produce coincidences") {
    SystemSpec spec;
    spec.n_atoms = 1;
    spec.positions = {{0.0, 0.0, 0.0}};
    spec.omega_p = 0.2;
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    for (double a1 : {0.0, 1.0, 2.0})
        for (double a2 : {0.5, 1.5, 3.0}) {
            const auto b = g2_breakdown(table, detector_direction(spec, a1),
                                        detector_direction(spec, a2));
            CHECK(b.g2_full == 0.0);
        }
}

TEST_CASE("table path equals the brute-force operator products") {
    for (const auto& spec : {ddi_spec({1.0}), ddi_spec({1.3, 0.6}, 0.05)}) {
        const auto rho = solve_steady_state(spec).rho;
        const auto table = build_expectation_table(spec, rho);
        const auto coords = coords_of(spec);
        for (double a1 : {0.2, 1.1, 2.9})
            for (double a2 : {0.4, 1.57, 2.3}) {
                const auto d1 = detector_direction(spec, a1);
                const auto d2 = detector_direction(spec, a2);
                const auto b = g2_breakdown(table, d1, d2);
                const double ref2 = oracles::brute_g2(spec, rho, coords, a1, a2);
                const double ref1 = oracles::brute_g1(spec, rho, coords, a1);
                CHECK(std::abs(b.g2_full - ref2) <= 1e-12 * std::max(1.0, std::abs(ref2)));
                CHECK(std::abs(g1(table, d1) - ref1) <= 1e-12 * std::max(1.0, std::abs(ref1)));
            }
    }
}

TEST_CASE("breakdown bookkeeping") {
    const auto spec = ddi_spec({1.0, 1.0, 1.0});
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    const auto d1 = detector_direction(spec, 0.9);
    const auto d2 = detector_direction(spec, 2.0);
    const auto b = g2_breakdown(table, d1, d2);

    SUBCASE("parts sum to the full correlation") {
        CHECK(b.g2_full ==
              doctest::Approx(b.g2_part[0] + b.g2_part[1] + b.g2_part[2]).epsilon(1e-15));
    }
    SUBCASE("detector exchange symmetry") {
        const auto swapped = g2_breakdown(table, d2, d1);
        CHECK(std::abs(b.g2_full - swapped.g2_full) <=
              1e-12 * std::max(1.0, std::abs(b.g2_full)));
    }
    SUBCASE("diagnostics combine full, part, and factorized part") {
        for (int n = 2; n <= 4; ++n)
            CHECK(b.c_n_n(n) ==
                  doctest::Approx(b.g2_full - b.g2_part_n(n) + b.u2_part_n(n)).epsilon(1e-15));
    }
    SUBCASE("positivity across a coarse grid") {
        for (int u = 0; u <= 12; ++u)
            for (int v = 0; v <= 12; ++v) {
                const auto bb = g2_breakdown(table, detector_direction(spec, pi * u / 12.0),
                                             detector_direction(spec, pi * v / 12.0));
                CHECK(bb.g2_full >= -1e-12);
                CHECK(bb.g1_d1 >= -1e-12);
            }
    }
}

TEST_CASE("without interaction the correlation equals its factorized form") {
    const auto spec = free_spec(4, 0.05);
    const auto table = build_expectation_table(spec, solve_steady_state(spec).rho);
    double max_diff = 0.0, max_val = 0.0;
    for (int u = 0; u <= 50; ++u)
        for (int v = 0; v <= 50; ++v) {
            const auto b = g2_breakdown(table, detector_direction(spec, pi * u / 50.0),
                                        detector_direction(spec, pi * v / 50.0));
            for (size_t n = 0; n < 3; ++n)
                max_diff = std::max(max_diff, std::abs(b.g2_part[n] - b.u2_part[n]));
            max_val = std::max(max_val, std::abs(b.g2_full));
            // with G2 = U2 every diagnostic reduces to the full correlation
            for (int n = 2; n <= 4; ++n)
                CHECK(b.c_n_n(n) == doctest::Approx(b.g2_full).epsilon(1e-8));
        }
    CHECK(max_diff <= 1e-10 * max_val);
}

TEST_CASE("three- and four-atom parts carry the coherence factors") {
    const auto spec = free_spec(4, 0.05);
    auto table = build_expectation_table(spec, solve_steady_state(spec).rho);

    // rebuild the factorizable tensor with coherences removed: only the
    // population-only (two-distinct-atom) entries survive
    const Vector zero_coh = Vector::Zero(4);
    const int n = 4;
    size_t flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l, ++flat)
                    table.four_op[flat] =
                        factorized_four_op(i, j, k, l, zero_coh, table.population);

    for (double a1 : {0.3, 1.2, 2.8})
        for (double a2 : {0.6, 1.57, 2.1}) {
            const auto b = g2_breakdown(table, detector_direction(spec, a1),
                                        detector_direction(spec, a2));
            CHECK(b.g2_part[1] == 0.0);
            CHECK(b.g2_part[2] == 0.0);
        }
}

TEST_CASE("coupling raises the peak-direction statistics toward Poissonian") {
    // At full constructive interference independent emitters are pinned at
    // (1 - 1/N)^2 by antibunching of the same-atom pairs; the dipole-dipole
    // coupling lifts the value toward 1. The coupled value is frozen as a
    // regression number.
    const auto spec = ddi_spec({1.0, 1.0, 1.0});
    const auto d = detector_direction(spec, pi / 2.0);

    auto at_peak = [&](const SystemSpec& s, const CouplingMatrices& c) {
        const auto rho = steady_state(build_liouvillian(s, c)).rho;
        const auto b = g2_breakdown(build_expectation_table(s, rho), d, d);
        REQUIRE_FALSE(b.normalized_masked);
        return b.g2_normalized;
    };

    const double independent = at_peak(spec, CouplingMatrices::none(4));
    const double coupled = at_peak(spec, couplings_for(spec));
    CHECK(independent == doctest::Approx(0.5625).epsilon(1e-3));
    CHECK(coupled > independent);
    CHECK(coupled < 1.0);
    CHECK(coupled == doctest::Approx(0.797847).epsilon(1e-5));
}

TEST_CASE("dark states mask the normalized correlation") {
    const auto spec = ddi_spec({1.0});
    const auto table = build_expectation_table(spec, ground_state_projector(spec));
    const auto b = g2_breakdown(table, detector_direction(spec, 1.0),
                                detector_direction(spec, 2.0));
    CHECK(b.normalized_masked);
    CHECK(b.g2_full == 0.0);
}

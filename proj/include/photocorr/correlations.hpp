// correlations.hpp: Angle-independent expectation tables and the detector
// correlation functions G1, G2 with their n-atom decomposition.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "photocorr/types.hpp"

namespace photocorr {

// Steady-state expectations that feed every detector angle. Atom indices
// are 0-based here (array semantics); embed_operator keeps 1-based labels.
struct ExpectationTable {
    int n_atoms{0};

    Matrix two_op;                  // <A_eg^i A_ge^j>, row i, column j
    std::vector<Complex> four_op;   // <A_eg^i A_eg^j A_ge^k A_ge^l>, N^4
    Vector coherence;               // <A_eg^i>
    Eigen::VectorXd population;     // <A_ee^i>

    Matrix u_two_op;                // factorized counterparts
    std::vector<Complex> u_four_op;

    Complex four(int i, int j, int k, int l) const {
        const int n = n_atoms;
        return four_op[size_t(((i * n + j) * n + k) * n + l)];
    }
    Complex u_four(int i, int j, int k, int l) const {
        const int n = n_atoms;
        return u_four_op[size_t(((i * n + j) * n + k) * n + l)];
    }
};

ExpectationTable build_expectation_table(const SystemSpec& spec, const Matrix& rho);

// Factorization by atom: group the ordered string A_eg^i A_eg^j A_ge^k A_ge^l
// by atom index, keep the within-atom order, and multiply the per-atom
// expectations. Each atom contributes its population (one raising and one
// lowering), its coherence (raising only), or the conjugate coherence
// (lowering only); repeated raising or lowering on one atom gives zero.
Complex factorized_four_op(int i, int j, int k, int l, const Vector& coherence,
                           const Eigen::VectorXd& population);

// Number of distinct atoms in the quadruple, 1..4.
int distinct_atom_count(int i, int j, int k, int l);

// Detector at in-plane angle alpha from the chain axis; the phase factor of
// atom j is e^{i 2 pi cos(alpha) x_j} with x_j the chain coordinate in
// probe wavelengths.
struct DetectorDirection {
    double alpha{0.0};
    Vector phase_factors;
};

DetectorDirection detector_direction(const SystemSpec& spec, double alpha);

// G1 at one detector: sum_ij two_op[i,j] ph_i conj(ph_j).
double g1(const ExpectationTable& table, const DetectorDirection& d);

struct CorrelationBreakdown {
    double g2_full{0.0};
    std::array<double, 3> g2_part{};  // restricted to 2-, 3-, 4-distinct-atom quadruples
    std::array<double, 3> u2_part{};
    std::array<double, 3> c_n{};      // g2_full - g2_part[n] + u2_part[n]
    double g1_d1{0.0}, g1_d2{0.0};
    double g2_normalized{0.0};
    bool normalized_masked{false};

    double g2_part_n(int n) const { return g2_part[size_t(n - 2)]; }
    double u2_part_n(int n) const { return u2_part[size_t(n - 2)]; }
    double c_n_n(int n) const { return c_n[size_t(n - 2)]; }
};

CorrelationBreakdown g2_breakdown(const ExpectationTable& table, const DetectorDirection& d1,
                                  const DetectorDirection& d2);

}  // namespace photocorr

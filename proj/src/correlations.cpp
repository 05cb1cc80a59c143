// correlations.cpp: expectation tables and detector correlation functions.

#include "photocorr/correlations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace photocorr {

namespace {

struct LevelPair {
    Level bra, ket;  // |bra><ket|
};

// tr(rho * op) for op = an ordered product of embedded single-atom
// |alpha><beta| factors. The product collapses to one local factor per atom
// (operators of distinct atoms commute, within-atom order is preserved), and
// every local factor has at most one nonzero entry per row, so the trace is
// a single walk over the operator rows.
Complex string_expectation(const SystemSpec& spec, const Matrix& rho,
                           const std::vector<std::pair<int, LevelPair>>& ops) {
    const Eigen::Index dim = spec.dim();
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("string_expectation: dimension mismatch");
    const int n = spec.n_atoms;
    const int d = spec.local_dim();

    std::vector<Matrix> factors(size_t(n), Matrix::Identity(d, d));
    for (const auto& [atom, pair] : ops) {
        Matrix e = Matrix::Zero(d, d);
        e(static_cast<int>(pair.bra), static_cast<int>(pair.ket)) = 1.0;
        factors[size_t(atom - 1)] = factors[size_t(atom - 1)] * e;
    }

    Complex total = 0.0;
    std::vector<int> local(static_cast<size_t>(n), 0);
    for (Eigen::Index row = 0; row < dim; ++row) {
        Eigen::Index rest = row;
        for (int a = n - 1; a >= 0; --a) {
            local[size_t(a)] = int(rest % d);
            rest /= d;
        }
        Complex coeff = 1.0;
        Eigen::Index col = 0;
        for (int a = 0; a < n && coeff != 0.0; ++a) {
            const Matrix& f = factors[size_t(a)];
            int hit = -1;
            for (int c = 0; c < d; ++c) {
                if (f(local[size_t(a)], c) != 0.0) {
                    hit = c;
                    break;
                }
            }
            if (hit < 0) {
                coeff = 0.0;
                break;
            }
            coeff *= f(local[size_t(a)], hit);
            col = col * d + hit;
        }
        if (coeff != 0.0) total += coeff * rho(col, row);
    }
    return total;
}

constexpr LevelPair kRaise{Level::e, Level::g};
constexpr LevelPair kLower{Level::g, Level::e};
constexpr LevelPair kExcited{Level::e, Level::e};

}  // namespace

int distinct_atom_count(int i, int j, int k, int l) {
    int count = 1;
    if (j != i) ++count;
    if (k != i && k != j) ++count;
    if (l != i && l != j && l != k) ++count;
    return count;
}

Complex factorized_four_op(int i, int j, int k, int l, const Vector& coherence,
                           const Eigen::VectorXd& population) {
    if (i == j || k == l) return 0.0;
    Complex result = 1.0;
    for (int atom = 0; atom < coherence.size(); ++atom) {
        const bool raises = (atom == i) || (atom == j);
        const bool lowers = (atom == k) || (atom == l);
        if (raises && lowers)
            result *= population(atom);
        else if (raises)
            result *= coherence(atom);
        else if (lowers)
            result *= std::conj(coherence(atom));
    }
    return result;
}

ExpectationTable build_expectation_table(const SystemSpec& spec, const Matrix& rho) {
    validate_spec(spec);
    const int n = spec.n_atoms;

    ExpectationTable table;
    table.n_atoms = n;
    table.two_op = Matrix(n, n);
    table.u_two_op = Matrix(n, n);
    table.coherence = Vector(n);
    table.population = Eigen::VectorXd(n);
    table.four_op.assign(size_t(n) * n * n * n, Complex(0.0));
    table.u_four_op.assign(size_t(n) * n * n * n, Complex(0.0));

    for (int i = 0; i < n; ++i) {
        table.coherence(i) = string_expectation(spec, rho, {{i + 1, kRaise}});
        table.population(i) =
            string_expectation(spec, rho, {{i + 1, kExcited}}).real();
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            table.two_op(i, j) =
                string_expectation(spec, rho, {{i + 1, kRaise}, {j + 1, kLower}});
            table.u_two_op(i, j) =
                i == j ? Complex(table.population(i))
                       : table.coherence(i) * std::conj(table.coherence(j));
        }

    size_t flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l, ++flat) {
                    if (i == j || k == l) continue;  // A_eg^2 = 0
                    table.four_op[flat] = string_expectation(
                        spec, rho,
                        {{i + 1, kRaise}, {j + 1, kRaise}, {k + 1, kLower}, {l + 1, kLower}});
                    table.u_four_op[flat] =
                        factorized_four_op(i, j, k, l, table.coherence, table.population);
                }
    return table;
}

DetectorDirection detector_direction(const SystemSpec& spec, double alpha) {
    if (alpha < -1e-12 || alpha > std::numbers::pi + 1e-12)
        throw std::invalid_argument("detector_direction: alpha outside [0, pi]");
    const Eigen::VectorXd x = chain_coordinates(spec.positions);
    DetectorDirection d;
    d.alpha = alpha;
    d.phase_factors = Vector(x.size());
    const double k = 2.0 * std::numbers::pi * std::cos(alpha);
    for (Eigen::Index j = 0; j < x.size(); ++j)
        d.phase_factors(j) = std::exp(Complex(0.0, k * x(j)));
    return d;
}

namespace {

double discard_imag(Complex value, const char* what) {
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value)))
        throw std::runtime_error(std::string(what) + ": imaginary residue " +
                                 std::to_string(value.imag()));
    return value.real();
}

}  // namespace

double g1(const ExpectationTable& table, const DetectorDirection& d) {
    const int n = table.n_atoms;
    if (d.phase_factors.size() != n)
        throw std::invalid_argument("g1: detector size mismatch");
    Complex total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            total += table.two_op(i, j) * d.phase_factors(i) * std::conj(d.phase_factors(j));
    return discard_imag(total, "g1");
}

CorrelationBreakdown g2_breakdown(const ExpectationTable& table, const DetectorDirection& d1,
                                  const DetectorDirection& d2) {
    const int n = table.n_atoms;
    if (d1.phase_factors.size() != n || d2.phase_factors.size() != n)
        throw std::invalid_argument("g2_breakdown: detector size mismatch");

    std::array<Complex, 3> parts{};
    std::array<Complex, 3> u_parts{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (i == j || k == l) continue;
                    const Complex phase = d1.phase_factors(i) * d2.phase_factors(j) *
                                          std::conj(d2.phase_factors(k)) *
                                          std::conj(d1.phase_factors(l));
                    const size_t bucket = size_t(distinct_atom_count(i, j, k, l) - 2);
                    parts[bucket] += phase * table.four(i, j, k, l);
                    u_parts[bucket] += phase * table.u_four(i, j, k, l);
                }

    CorrelationBreakdown out;
    for (size_t b = 0; b < 3; ++b) {
        out.g2_part[b] = discard_imag(parts[b], "g2 decomposition");
        out.u2_part[b] = discard_imag(u_parts[b], "u2 decomposition");
    }
    out.g2_full = out.g2_part[0] + out.g2_part[1] + out.g2_part[2];
    for (size_t b = 0; b < 3; ++b)
        out.c_n[b] = out.g2_full - out.g2_part[b] + out.u2_part[b];
    out.g1_d1 = g1(table, d1);
    out.g1_d2 = g1(table, d2);

    const double intensity_scale = double(n) * table.population.maxCoeff();
    const double guard = 1e-12 * intensity_scale * intensity_scale;
    const double denom = out.g1_d1 * out.g1_d2;
    if (denom < guard || denom <= 0.0) {
        out.normalized_masked = true;
    } else {
        out.g2_normalized = out.g2_full / denom;
    }
    return out;
}

}  // namespace photocorr

// dynamics.cpp: Liouvillian assembly and steady-state solution.

#include "photocorr/dynamics.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <cmath>
#include <random>
#include <vector>

#include "photocorr/operators.hpp"

namespace photocorr {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Largest Hilbert dimension kept in dense storage. The superoperator is
// D^2 x D^2, so D = 32 already means a 1024^2 dense matrix; the 81-dim
// four-atom ladder system would need ~690 MB and goes sparse instead.
constexpr Eigen::Index kDenseHilbertLimit = 32;

// Largest superoperator dimension we are willing to densify for an exact
// SVD null-space count when the fast uniqueness certificate fails.
constexpr Eigen::Index kSvdFallbackLimit = 2048;

void check_coupling_shapes(const SystemSpec& spec, const CouplingMatrices& couplings) {
    const auto n = spec.n_atoms;
    if (couplings.gamma.rows() != n || couplings.gamma.cols() != n ||
        couplings.omega.rows() != n || couplings.omega.cols() != n ||
        couplings.v.rows() != n || couplings.v.cols() != n)
        throw std::invalid_argument("coupling matrices must be n_atoms x n_atoms");
    if (spec.scheme.kind == SchemeKind::TwoLevel && !couplings.v.isZero(0.0))
        throw std::invalid_argument("Rydberg couplings require the three-level scheme");
    if (spec.scheme.kind == SchemeKind::ThreeLevelLadder && !couplings.omega.isZero(0.0))
        throw std::invalid_argument("dipole-dipole couplings require the two-level scheme");
}

// Accumulate scale * vec(A rho B) contributions: entry A(p,q) * B(n,m) at
// superoperator position (m*D + p, n*D + q).
void add_sandwich(std::vector<Triplet>& triplets, const SparseMatrixC& a,
                  const SparseMatrixC& b, Complex scale) {
    const Eigen::Index dim = a.rows();
    for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrixC::InnerIterator itb(b, kb); itb; ++itb) {
            const Eigen::Index n = itb.row();
            const Eigen::Index m = itb.col();
            const Complex vb = itb.value() * scale;
            for (int ka = 0; ka < a.outerSize(); ++ka) {
                for (SparseMatrixC::InnerIterator ita(a, ka); ita; ++ita) {
                    triplets.emplace_back(int(m * dim + ita.row()),
                                          int(n * dim + ita.col()),
                                          ita.value() * vb);
                }
            }
        }
    }
}

SparseMatrixC sparse_identity(Eigen::Index dim) {
    SparseMatrixC id(dim, dim);
    id.setIdentity();
    return id;
}

Vector random_unit_vector(Eigen::Index dim) {
    std::mt19937 gen(0x9e3779b9u);
    std::normal_distribution<double> dist(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(dist(gen), dist(gen));
    return v / v.norm();
}

// Estimate the smallest singular value of the row-replaced system through
// inverse iteration on (L'^H L')^{-1}, using the solver's forward and
// adjoint solves. One row replacement is a rank-1 update, so by singular
// value interlacing sigma_min(L') <= sigma_2(L); a value above the gap
// threshold certifies that the null space of L is at most one-dimensional.
template <typename SolverT>
double smallest_singular_estimate(SolverT& solver, Eigen::Index dim) {
    Vector y = random_unit_vector(dim);
    double estimate = 0.0;
    for (int iter = 0; iter < 10; ++iter) {
        Vector z = solver.solve(y);
        Vector w = solver.adjoint().solve(z);
        const double growth = w.norm();
        if (!std::isfinite(growth) || growth == 0.0) return 0.0;
        const double next = 1.0 / std::sqrt(growth);
        if (iter > 0 && std::abs(next - estimate) <= 1e-3 * estimate) return next;
        estimate = next;
        y = w / growth;
    }
    return estimate;
}

Matrix hermitized_unit_trace(const Matrix& raw) {
    Matrix rho = 0.5 * (raw + raw.adjoint());
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw std::runtime_error("steady state has vanishing trace");
    return rho / tr;
}

SteadyStateReport finish_report(const Superoperator& liouvillian, const Matrix& raw,
                                SteadyStateSolver solver, const SteadyStateOptions& options) {
    SteadyStateReport report;
    report.rho = hermitized_unit_trace(raw);
    report.residual = liouvillian.apply(vec(report.rho)).norm();
    report.solver = solver;
    if (report.residual > options.residual_tol)
        throw std::runtime_error("steady state residual " + std::to_string(report.residual) +
                                 " exceeds tolerance");
    validate_density_matrix(report.rho);
    return report;
}

// Exact null-space count by dense SVD, used when the fast certificate is
// inconclusive (singular solve, or smallest-singular-value estimate below
// the gap threshold).
SteadyStateReport svd_fallback(const Superoperator& liouvillian,
                               const SteadyStateOptions& options) {
    const Eigen::Index dim = liouvillian.dim();
    if (dim > kSvdFallbackLimit)
        throw std::runtime_error(
            "steady-state uniqueness could not be certified and the superoperator "
            "(dimension " + std::to_string(dim) + ") is too large for an SVD fallback");
    const Matrix dense = liouvillian.densified();
    Eigen::BDCSVD<Matrix> svd(dense, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) <= options.uniqueness_gap) ++null_dim;
    if (null_dim == 0)
        throw std::runtime_error("no steady state within the uniqueness gap threshold");
    if (null_dim > 1) throw NonUniqueSteadyState(null_dim);
    const Matrix raw = unvec(svd.matrixV().col(dim - 1), liouvillian.hilbert_dim);
    return finish_report(liouvillian, raw, SteadyStateSolver::NullSpaceSvd, options);
}

}  // namespace

Matrix Superoperator::densified() const {
    return storage == Storage::Dense ? dense : Matrix(sparse);
}

Matrix build_hamiltonian(const SystemSpec& spec, const CouplingMatrices& couplings) {
    validate_spec(spec);
    check_coupling_shapes(spec, couplings);
    const Eigen::Index dim = spec.dim();
    Matrix v = Matrix::Zero(dim, dim);
    const bool ladder = spec.scheme.kind == SchemeKind::ThreeLevelLadder;
    for (int i = 1; i <= spec.n_atoms; ++i) {
        const Matrix a_eg = embed_operator(spec, i, Level::e, Level::g);
        v += spec.omega_p * (a_eg + a_eg.adjoint());
        if (ladder) {
            const Matrix a_re = embed_operator(spec, i, Level::r, Level::e);
            v += spec.omega_c * (a_re + a_re.adjoint());
        }
    }
    for (int i = 1; i <= spec.n_atoms; ++i) {
        for (int j = 1; j <= spec.n_atoms; ++j) {
            if (i == j) continue;
            if (couplings.omega(i - 1, j - 1) != 0.0) {
                const Matrix prod = embed_operator(spec, i, Level::e, Level::g) *
                                    embed_operator(spec, j, Level::g, Level::e);
                v -= couplings.omega(i - 1, j - 1) * prod;
            }
            if (ladder && couplings.v(i - 1, j - 1) != 0.0) {
                const Matrix prod = embed_operator(spec, i, Level::r, Level::r) *
                                    embed_operator(spec, j, Level::r, Level::r);
                v += couplings.v(i - 1, j - 1) * prod;
            }
        }
    }
    return v;
}

Superoperator build_liouvillian(const SystemSpec& spec, const CouplingMatrices& couplings) {
    const Eigen::Index dim = spec.dim();
    const SparseMatrixC id = sparse_identity(dim);
    const Matrix v = build_hamiltonian(spec, couplings);
    const SparseMatrixC v_sp = v.sparseView();

    std::vector<Triplet> triplets;
    const Complex im(0.0, 1.0);
    // -i [V, rho]
    add_sandwich(triplets, v_sp, id, -im);
    add_sandwich(triplets, id, v_sp, im);

    // Jump terms gamma^(ij) A_ge^j rho A_eg^i and the matching anticommutator
    // -(1/2) {S, rho} with S = sum_ij gamma^(ij) A_eg^i A_ge^j (+ the decay
    // channel of the upper transition for the ladder scheme).
    Matrix anticomm = Matrix::Zero(dim, dim);
    std::vector<SparseMatrixC> a_eg(spec.n_atoms), a_ge(spec.n_atoms);
    for (int i = 0; i < spec.n_atoms; ++i) {
        const Matrix eg = embed_operator(spec, i + 1, Level::e, Level::g);
        a_eg[i] = eg.sparseView();
        a_ge[i] = SparseMatrixC(Matrix(eg.adjoint()).sparseView());
    }
    for (int i = 0; i < spec.n_atoms; ++i) {
        for (int j = 0; j < spec.n_atoms; ++j) {
            const double g = couplings.gamma(i, j);
            if (g == 0.0) continue;
            add_sandwich(triplets, a_ge[j], a_eg[i], Complex(g, 0.0));
            anticomm += g * Matrix(a_eg[i] * a_ge[j]);
        }
    }
    if (spec.scheme.kind == SchemeKind::ThreeLevelLadder && spec.gamma_c > 0.0) {
        for (int i = 1; i <= spec.n_atoms; ++i) {
            const Matrix re = embed_operator(spec, i, Level::r, Level::e);
            const SparseMatrixC re_sp = re.sparseView();
            const SparseMatrixC er_sp = SparseMatrixC(Matrix(re.adjoint()).sparseView());
            add_sandwich(triplets, er_sp, re_sp, Complex(spec.gamma_c, 0.0));
            anticomm += spec.gamma_c * Matrix(re * re.adjoint());
        }
    }
    const SparseMatrixC s_sp = anticomm.sparseView();
    add_sandwich(triplets, s_sp, id, Complex(-0.5, 0.0));
    add_sandwich(triplets, id, s_sp, Complex(-0.5, 0.0));

    Superoperator result;
    result.hilbert_dim = dim;
    SparseMatrixC mat(dim * dim, dim * dim);
    mat.setFromTriplets(triplets.begin(), triplets.end());
    if (dim <= kDenseHilbertLimit) {
        result.storage = Superoperator::Storage::Dense;
        result.dense = Matrix(mat);
    } else {
        result.storage = Superoperator::Storage::Sparse;
        mat.makeCompressed();
        result.sparse = std::move(mat);
    }
    return result;
}

SteadyStateReport steady_state(const Superoperator& liouvillian,
                               const SteadyStateOptions& options) {
    const Eigen::Index hdim = liouvillian.hilbert_dim;
    const Eigen::Index dim = liouvillian.dim();
    if (hdim < 1 || dim < 1) throw std::invalid_argument("empty superoperator");

    Vector rhs = Vector::Zero(dim);
    rhs(0) = 1.0;

    if (liouvillian.storage == Superoperator::Storage::Dense) {
        Matrix replaced = liouvillian.dense;
        replaced.row(0).setZero();
        for (Eigen::Index k = 0; k < hdim; ++k) replaced(0, k * hdim + k) = 1.0;
        Eigen::PartialPivLU<Matrix> lu(replaced);
        const Vector x = lu.solve(rhs);
        if (x.allFinite() &&
            smallest_singular_estimate(lu, dim) > options.uniqueness_gap) {
            return finish_report(liouvillian, unvec(x, hdim),
                                 SteadyStateSolver::TraceRowReplacement, options);
        }
        return svd_fallback(liouvillian, options);
    }

    SparseMatrixC replaced(dim, dim);
    {
        std::vector<Triplet> triplets;
        triplets.reserve(size_t(liouvillian.sparse.nonZeros()) + size_t(hdim));
        for (int k = 0; k < liouvillian.sparse.outerSize(); ++k)
            for (SparseMatrixC::InnerIterator it(liouvillian.sparse, k); it; ++it)
                if (it.row() != 0)
                    triplets.emplace_back(int(it.row()), int(it.col()), it.value());
        for (Eigen::Index k = 0; k < hdim; ++k)
            triplets.emplace_back(0, int(k * hdim + k), Complex(1.0, 0.0));
        replaced.setFromTriplets(triplets.begin(), triplets.end());
        replaced.makeCompressed();
    }
    Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(replaced);
    lu.factorize(replaced);
    if (lu.info() == Eigen::Success) {
        const Vector x = lu.solve(rhs);
        if (x.allFinite() &&
            smallest_singular_estimate(lu, dim) > options.uniqueness_gap) {
            return finish_report(liouvillian, unvec(x, hdim),
                                 SteadyStateSolver::TraceRowReplacement, options);
        }
    }
    return svd_fallback(liouvillian, options);
}

SteadyStateReport solve_steady_state(const SystemSpec& spec) {
    validate_spec(spec);
    const CouplingMatrices couplings = couplings_for(spec);
    return steady_state(build_liouvillian(spec, couplings));
}

}  // namespace photocorr

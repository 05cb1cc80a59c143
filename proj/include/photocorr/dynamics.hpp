// dynamics.hpp: Hamiltonian assembly, Liouvillian superoperator, and the
// steady-state solve.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <stdexcept>

#include "photocorr/couplings.hpp"
#include "photocorr/types.hpp"

namespace photocorr {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;

// Column-major vectorization, vec(A rho B) = (B^T kron A) vec(rho).
inline Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index dim) {
    if (v.size() != dim * dim)
        throw std::invalid_argument("unvec: size mismatch");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// Generator of the master equation acting on vectorized density matrices.
// Dense storage below the threshold dimension, compressed sparse above.
struct Superoperator {
    enum class Storage { Dense, Sparse };

    Eigen::Index hilbert_dim{0};
    Storage storage{Storage::Dense};
    Matrix dense;
    SparseMatrixC sparse;

    Eigen::Index dim() const noexcept { return hilbert_dim * hilbert_dim; }

    Vector apply(const Vector& v) const {
        return storage == Storage::Dense ? Vector(dense * v) : Vector(sparse * v);
    }

    // L applied to a density matrix, reshaped back to matrix form
    Matrix apply_to(const Matrix& rho) const { return unvec(apply(vec(rho)), hilbert_dim); }

    Matrix densified() const;
};

enum class SteadyStateSolver { TraceRowReplacement, NullSpaceSvd, TimeIntegration };

struct SteadyStateReport {
    Matrix rho;
    double residual{0.0};  // ||L vec(rho)||_2
    int null_space_dim{1};
    SteadyStateSolver solver{SteadyStateSolver::TraceRowReplacement};
};

class NonUniqueSteadyState : public std::runtime_error {
public:
    explicit NonUniqueSteadyState(int dim)
        : std::runtime_error("steady state not unique: null space dimension " +
                             std::to_string(dim)),
          null_space_dim(dim) {}
    int null_space_dim;
};

struct SteadyStateOptions {
    double residual_tol{1e-10};
    double uniqueness_gap{1e-8};  // second-smallest singular value must exceed this
};

// V/hbar = sum_i (Omega_p A_eg + Omega_c A_re + h.c.)
//          - sum_{i!=j} Omega^(ij) A_eg^i A_ge^j
//          + sum_{i!=j} V_ij A_rr^i A_rr^j
Matrix build_hamiltonian(const SystemSpec& spec, const CouplingMatrices& couplings);

Superoperator build_liouvillian(const SystemSpec& spec, const CouplingMatrices& couplings);

// Linear solve with the trace row replacing one redundant row of L; falls
// back to an SVD null-space extraction when the solve is singular. Throws
// NonUniqueSteadyState when the null space has dimension > 1.
SteadyStateReport steady_state(const Superoperator& liouvillian,
                               const SteadyStateOptions& options = {});

SteadyStateReport solve_steady_state(const SystemSpec& spec);

}  // namespace photocorr

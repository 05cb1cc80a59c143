// operators.hpp: Embedded single-atom operators on the N-atom product space

#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "photocorr/types.hpp"

namespace photocorr {

namespace detail {

// Stride of atom i (1-based) in the global basis index. Atom 1 is the most
// significant tensor factor; the local basis is ordered (g, e, r).
inline Eigen::Index atom_stride(const SystemSpec& spec, int atom_index) {
    Eigen::Index stride = 1;
    for (int k = atom_index; k < spec.n_atoms; ++k) stride *= spec.local_dim();
    return stride;
}

}  // namespace detail

// A_{alpha beta}^{(i)} = |alpha><beta| of atom i, identity elsewhere.
inline Matrix embed_operator(const SystemSpec& spec, int atom_index, Level alpha, Level beta) {
    if (atom_index < 1 || atom_index > spec.n_atoms)
        throw std::out_of_range("embed_operator: atom index out of range");
    if (!spec.scheme.has_level(alpha) || !spec.scheme.has_level(beta))
        throw std::invalid_argument("embed_operator: level not in scheme");

    const Eigen::Index dim = spec.dim();
    const Eigen::Index d = spec.local_dim();
    const Eigen::Index stride = detail::atom_stride(spec, atom_index);
    const Eigen::Index ia = static_cast<Eigen::Index>(alpha);
    const Eigen::Index ib = static_cast<Eigen::Index>(beta);

    Matrix op = Matrix::Zero(dim, dim);
    // global index = (outer)*d*stride + (local)*stride + inner
    for (Eigen::Index outer = 0; outer < dim / (d * stride); ++outer) {
        for (Eigen::Index inner = 0; inner < stride; ++inner) {
            const Eigen::Index base = outer * d * stride + inner;
            op(base + ia * stride, base + ib * stride) = 1.0;
        }
    }
    return op;
}

inline Matrix op_product(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("op_product: dimension mismatch");
    return a * b;
}

// tr(rho * op)
inline Complex expectation(const Matrix& rho, const Matrix& op) {
    if (rho.rows() != op.rows() || rho.cols() != op.cols() || rho.rows() != rho.cols())
        throw std::invalid_argument("expectation: dimension mismatch");
    // tr(rho*op) = sum_ij rho(i,j) op(j,i), no product matrix needed
    return (rho.transpose().cwiseProduct(op)).sum();
}

// |g...g><g...g|
inline Matrix ground_state_projector(const SystemSpec& spec) {
    Matrix rho = Matrix::Zero(spec.dim(), spec.dim());
    rho(0, 0) = 1.0;
    return rho;
}

}  // namespace photocorr

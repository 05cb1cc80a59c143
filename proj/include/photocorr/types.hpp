// types.hpp: Level schemes, system specification, and density-matrix checks

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace photocorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Atomic levels of the ladder scheme, in local basis order.
enum class Level : int { g = 0, e = 1, r = 2 };

enum class SchemeKind { TwoLevel, ThreeLevelLadder };

struct LevelScheme {
    SchemeKind kind{SchemeKind::TwoLevel};

    int local_dim() const noexcept {
        return kind == SchemeKind::TwoLevel ? 2 : 3;
    }
    bool has_level(Level l) const noexcept {
        return static_cast<int>(l) < local_dim();
    }
};

enum class InteractionKind { None, Ddi, Rri };

// Rydberg van-der-Waals coupling input. Dimensionless mode fixes the
// nearest-neighbour coupling directly in units of gamma_p; Physical mode
// converts C6 with user-supplied wavelength and linewidth. Quoted
// frequencies are ordinary frequencies (the conventional 2pi prefix of
// published values is dropped on both C6 and gamma_p, so it cancels).
struct RriCouplingSpec {
    enum class Mode { Dimensionless, Physical };
    Mode mode{Mode::Dimensionless};
    double v_nn{0.0};         // nearest-neighbour V in units of gamma_p
    double c6_ghz_um6{0.0};   // C6 in GHz um^6
    double lambda_p_um{0.0};  // probe wavelength in um
    double gamma_p_hz{0.0};   // probe linewidth in Hz
};

// All rates in units of gamma_p, all lengths in units of lambda_p.
struct SystemSpec {
    int n_atoms{1};
    LevelScheme scheme{};
    std::vector<Eigen::Vector3d> positions;  // lambda_p units
    double omega_p{0.0};  // probe Rabi frequency
    double omega_c{0.0};  // coupling Rabi frequency (ladder only)
    double gamma_c{0.0};  // upper-transition decay (ladder only)
    InteractionKind interaction{InteractionKind::None};
    RriCouplingSpec rri{};

    int local_dim() const noexcept { return scheme.local_dim(); }

    // Hilbert dimension d^N
    Eigen::Index dim() const noexcept {
        Eigen::Index d = 1;
        for (int i = 0; i < n_atoms; ++i) d *= local_dim();
        return d;
    }
};

inline void validate_spec(const SystemSpec& spec) {
    if (spec.n_atoms < 1)
        throw std::invalid_argument("SystemSpec: n_atoms must be >= 1");
    if (static_cast<int>(spec.positions.size()) != spec.n_atoms)
        throw std::invalid_argument("SystemSpec: positions size must equal n_atoms");
    for (int i = 0; i < spec.n_atoms; ++i)
        for (int j = i + 1; j < spec.n_atoms; ++j)
            if ((spec.positions[i] - spec.positions[j]).norm() == 0.0)
                throw std::invalid_argument("SystemSpec: positions must be pairwise distinct");
    if (spec.omega_p < 0.0 || spec.omega_c < 0.0 || spec.gamma_c < 0.0)
        throw std::invalid_argument("SystemSpec: rates must be >= 0");
    if (spec.scheme.kind == SchemeKind::TwoLevel) {
        if (spec.omega_c != 0.0 || spec.gamma_c != 0.0)
            throw std::invalid_argument(
                "SystemSpec: omega_c and gamma_c must be zero for a two-level scheme");
        if (spec.interaction == InteractionKind::Rri)
            throw std::invalid_argument("SystemSpec: RRI requires the three-level scheme");
    } else if (spec.interaction == InteractionKind::Ddi) {
        throw std::invalid_argument("SystemSpec: DDI requires the two-level scheme");
    }
}

// Signed coordinates along the chain axis, in lambda_p units, measured from
// atom 1. Throws if the positions are not collinear: the perpendicular-dipole
// coupling formulas and the cos(alpha) detector phase convention both assume
// a linear chain.
inline Eigen::VectorXd chain_coordinates(const std::vector<Eigen::Vector3d>& positions,
                                         double tol = 1e-12) {
    const auto n = static_cast<Eigen::Index>(positions.size());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (n <= 1) return x;

    // axis from the most separated pair, for robustness with clustered atoms
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    double best = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Eigen::Vector3d d = positions[j] - positions[i];
            if (d.norm() > best) {
                best = d.norm();
                axis = d;
            }
        }
    }
    if (best == 0.0) throw std::invalid_argument("chain_coordinates: degenerate positions");
    axis.normalize();
    // Orient the axis by the line's direction in space, not by atom labels,
    // so that relabeling the atoms cannot reflect the detection angles.
    if (axis.x() < 0.0 || (axis.x() == 0.0 && (axis.y() < 0.0 || (axis.y() == 0.0 && axis.z() < 0.0))))
        axis = -axis;

    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector3d d = positions[i] - positions[0];
        if ((d - (axis.dot(d)) * axis).norm() > tol * std::max(1.0, best))
            throw std::invalid_argument("chain_coordinates: positions are not collinear");
        x[i] = axis.dot(d);
    }
    return x;
}

// Atoms on the x axis with the given nearest-neighbour spacings (N-1 values).
inline std::vector<Eigen::Vector3d> chain_positions(const std::vector<double>& spacings) {
    std::vector<Eigen::Vector3d> pos;
    pos.emplace_back(0.0, 0.0, 0.0);
    double x = 0.0;
    for (double s : spacings) {
        x += s;
        pos.emplace_back(x, 0.0, 0.0);
    }
    return pos;
}

inline std::vector<Eigen::Vector3d> equidistant_chain(int n_atoms, double spacing) {
    return chain_positions(std::vector<double>(static_cast<std::size_t>(n_atoms - 1), spacing));
}

struct DensityMatrixTolerances {
    double hermiticity{1e-10};
    double trace{1e-12};
    double min_eigenvalue{-1e-10};
};

// Checks the density-matrix invariants; throws with the violated property.
inline void validate_density_matrix(const Matrix& rho,
                                    const DensityMatrixTolerances& tol = {}) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("density matrix must be square");
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.hermiticity)
        throw std::runtime_error("density matrix not Hermitian: max asymmetry " +
                                 std::to_string(herm));
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace)
        throw std::runtime_error("density matrix trace deviates from 1 by " +
                                 std::to_string(std::abs(tr - Complex(1.0, 0.0))));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min < tol.min_eigenvalue)
        throw std::runtime_error("density matrix has negative eigenvalue " +
                                 std::to_string(lam_min));
}

}  // namespace photocorr

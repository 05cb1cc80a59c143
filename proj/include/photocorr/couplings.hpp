// couplings.hpp: Pairwise interaction parameters: dipole-dipole tensor and
// derived gamma^(ij), Omega^(ij); Rydberg van-der-Waals V_ij.

#pragma once

#include <Eigen/Dense>

#include <numbers>

#include "photocorr/types.hpp"

namespace photocorr {

// Input of the dipole-dipole coupling tensor.
struct DdiTensorInput {
    Eigen::Vector3d separation;   // lambda_p units
    Eigen::Vector3d dipole;       // unit vector

    // eta = |k_L| |r| = 2 pi r / lambda_p
    double eta() const { return 2.0 * std::numbers::pi * separation.norm(); }
};

// Pairwise couplings in units of gamma_p. gamma has unit diagonal; omega and
// v have zero diagonal; all three are symmetric.
struct CouplingMatrices {
    Eigen::MatrixXd gamma;
    Eigen::MatrixXd omega;
    Eigen::MatrixXd v;

    static CouplingMatrices none(int n_atoms);
};

// Coupling tensor chi(r) normalized by k0^3/(4 pi eps0). Throws for zero
// separation; diagonal couplings are fixed by convention, not by this tensor.
Eigen::Matrix3cd chi_tensor(const DdiTensorInput& input);

// d^T chi d for the stored dipole orientation (d normalized first).
Complex chi_projected(const DdiTensorInput& input);

// Perpendicular-dipole projections, normalized so gamma_ratio -> 1 as eta -> 0.
double ddi_gamma_ratio(double eta);
double ddi_omega_ratio(double eta);

// gamma^(ij) and Omega^(ij) for a collinear two-level chain with dipoles
// perpendicular to the chain axis. Rejects non-collinear geometries; the
// general orientation lives in chi_tensor.
CouplingMatrices ddi_couplings(const SystemSpec& spec);

// V_ij = V_nn (r_nn/r_ij)^6 in Dimensionless mode, or C6/r^6 converted to
// gamma_p units in Physical mode. r_nn is the smallest pair separation.
CouplingMatrices rri_couplings(const SystemSpec& spec, const RriCouplingSpec& mode);

// Dispatch on spec.interaction.
CouplingMatrices couplings_for(const SystemSpec& spec);

}  // namespace photocorr

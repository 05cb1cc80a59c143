#include "photocorr/couplings.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace photocorr {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

CouplingMatrices CouplingMatrices::none(int n_atoms) {
    CouplingMatrices c;
    c.gamma = Eigen::MatrixXd::Identity(n_atoms, n_atoms);
    c.omega = Eigen::MatrixXd::Zero(n_atoms, n_atoms);
    c.v = Eigen::MatrixXd::Zero(n_atoms, n_atoms);
    return c;
}

Eigen::Matrix3cd chi_tensor(const DdiTensorInput& input) {
    const double r = input.separation.norm();
    const double eta = input.eta();
    if (eta <= 0.0)
        throw std::invalid_argument("chi_tensor: eta must be > 0");

    const Complex i_unit(0.0, 1.0);
    const Complex iso = 1.0 / eta + i_unit / (eta * eta) - 1.0 / (eta * eta * eta);
    const Complex aniso = 1.0 / eta + 3.0 * i_unit / (eta * eta) - 3.0 / (eta * eta * eta);
    const Complex phase = std::exp(i_unit * eta);

    const Eigen::Vector3d rhat = input.separation / r;
    Eigen::Matrix3cd chi;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            chi(p, q) = ((p == q ? iso : Complex(0.0)) - rhat(p) * rhat(q) * aniso) * phase;
    return chi;
}

Complex chi_projected(const DdiTensorInput& input) {
    const Eigen::Vector3cd d = input.dipole.normalized().cast<Complex>();
    return (d.transpose() * chi_tensor(input) * d.conjugate()).value();
}

double ddi_gamma_ratio(double eta) {
    if (eta <= 0.0) throw std::invalid_argument("ddi_gamma_ratio: eta must be > 0");
    const double s = std::sin(eta), c = std::cos(eta);
    return 1.5 * (s / eta + c / (eta * eta) - s / (eta * eta * eta));
}

double ddi_omega_ratio(double eta) {
    if (eta <= 0.0) throw std::invalid_argument("ddi_omega_ratio: eta must be > 0");
    const double s = std::sin(eta), c = std::cos(eta);
    return 1.5 * (c / eta - s / (eta * eta) - c / (eta * eta * eta));
}

CouplingMatrices ddi_couplings(const SystemSpec& spec) {
    validate_spec(spec);
    if (spec.scheme.kind != SchemeKind::TwoLevel)
        throw std::invalid_argument("ddi_couplings: two-level scheme required");
    // collinearity: otherwise no single dipole direction is perpendicular to
    // every interatomic vector
    chain_coordinates(spec.positions);

    const int n = spec.n_atoms;
    CouplingMatrices c = CouplingMatrices::none(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = (spec.positions[i] - spec.positions[j]).norm();
            const double eta = two_pi * r;
            c.gamma(i, j) = c.gamma(j, i) = ddi_gamma_ratio(eta);
            c.omega(i, j) = c.omega(j, i) = ddi_omega_ratio(eta);
        }
    }
    return c;
}

CouplingMatrices rri_couplings(const SystemSpec& spec, const RriCouplingSpec& mode) {
    validate_spec(spec);
    if (spec.scheme.kind != SchemeKind::ThreeLevelLadder)
        throw std::invalid_argument("rri_couplings: three-level ladder scheme required");

    const int n = spec.n_atoms;
    if (n == 1) return CouplingMatrices::none(1);
    double r_nn = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = (spec.positions[i] - spec.positions[j]).norm();
            if (r <= 0.0) throw std::invalid_argument("rri_couplings: zero separation");
            if (r_nn == 0.0 || r < r_nn) r_nn = r;
        }
    }

    // nearest-neighbour coupling in gamma_p units
    double v_nn = 0.0;
    if (mode.mode == RriCouplingSpec::Mode::Dimensionless) {
        v_nn = mode.v_nn;
    } else {
        if (mode.lambda_p_um <= 0.0)
            throw std::invalid_argument("rri_couplings: Physical mode requires lambda_p");
        if (mode.gamma_p_hz <= 0.0)
            throw std::invalid_argument("rri_couplings: Physical mode requires gamma_p");
        const double r_nn_um = r_nn * mode.lambda_p_um;
        const double v_nn_hz = mode.c6_ghz_um6 * 1e9 / std::pow(r_nn_um, 6);
        v_nn = v_nn_hz / mode.gamma_p_hz;
    }

    CouplingMatrices c = CouplingMatrices::none(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = (spec.positions[i] - spec.positions[j]).norm();
            c.v(i, j) = c.v(j, i) = v_nn * std::pow(r_nn / r, 6);
        }
    }
    return c;
}

CouplingMatrices couplings_for(const SystemSpec& spec) {
    switch (spec.interaction) {
        case InteractionKind::None:
            validate_spec(spec);
            return CouplingMatrices::none(spec.n_atoms);
        case InteractionKind::Ddi:
            return ddi_couplings(spec);
        case InteractionKind::Rri:
            return rri_couplings(spec, spec.rri);
    }
    throw std::logic_error("couplings_for: unknown interaction kind");
}

}  // namespace photocorr

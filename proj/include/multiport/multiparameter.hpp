#pragma once

// Simultaneous estimation of several phases, each generated by the photon
// number operator of one mode: QFI matrix, symmetric logarithmic derivatives,
// the weak-commutativity condition and Cramer-Rao bounds.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "multiport/devices.hpp"
#include "multiport/fock.hpp"

namespace multiport {

/// Photon-number operators n_mu of the listed modes on a fixed-N basis.
/// Throws std::invalid_argument on repeated or out-of-range modes.
class GeneratorSet {
public:
    GeneratorSet(FockBasisPtr basis, std::vector<std::size_t> modes);

    std::size_t size() const { return modes_.size(); }
    const std::vector<std::size_t>& modes() const { return modes_; }
    const FockBasis& basis() const { return *basis_; }

    const Eigen::VectorXd& diagonal(std::size_t mu) const { return diagonals_.at(mu); }
    CMatrix matrix(std::size_t mu) const;

    /// e^{-i sum_mu n_mu lambda_mu} as a diagonal.
    CVector evolution(const std::vector<double>& lambda) const;

    /// max over pairs of max |[G_mu, G_nu]| entries.
    double commutator_residual() const;

private:
    FockBasisPtr basis_;
    std::vector<std::size_t> modes_;
    std::vector<Eigen::VectorXd> diagonals_;
};

struct QfiMatrix {
    std::vector<std::size_t> modes;
    Eigen::MatrixXd entries;      // 4 Cov(G_mu, G_nu)
    Eigen::MatrixXd sld_entries;  // Tr[rho (L_mu L_nu + L_nu L_mu) / 2]; empty when not computed
    bool zero_photon = false;     // vacuum probe: the matrix is identically 0

    double symmetry_residual() const;
    double min_eigenvalue() const;
    /// max |entries - sld_entries|; 0 when the SLD form was not computed.
    double cross_check_residual() const;
};

/// Probe = first splitter applied to `input`. Computes the covariance form
/// and, as a cross-check, the SLD trace form at lambda = 0.
QfiMatrix qfim_pure(const InterferometerSpec& spec, const FockState& input, const std::vector<std::size_t>& modes);

struct SldOperator {
    std::size_t parameter = 0;
    CMatrix matrix;
};

/// L_mu = U_lambda L_0mu U_lambda^dag with
/// L_0mu = 2 [(-i G_mu)|psi0><psi0| + |psi0><psi0|(i G_mu)].
SldOperator sld_pure(const InterferometerSpec& spec, const FockState& input, const std::vector<std::size_t>& modes,
                     std::size_t mu, const std::vector<double>& lambda);

/// rho_lambda = |psi_lambda><psi_lambda| on the probe basis.
CMatrix probe_density(const InterferometerSpec& spec, const FockState& input, const std::vector<std::size_t>& modes,
                      const std::vector<double>& lambda);

/// Tr[rho_lambda [L_mu, L_nu]].
Complex weak_commutativity(const InterferometerSpec& spec, const FockState& input,
                           const std::vector<std::size_t>& modes, std::size_t mu, std::size_t nu,
                           const std::vector<double>& lambda);

/// max over all pairs of |Tr[rho [L_mu, L_nu]]|.
double weak_commutativity_residual(const InterferometerSpec& spec, const FockState& input,
                                   const std::vector<std::size_t>& modes, const std::vector<double>& lambda);

struct CramerRaoBounds {
    double measurements = 0.0;
    Eigen::MatrixXd inverse;
    std::vector<double> per_parameter;  // [(H^-1)_mumu / M]^{1/2}
    double total_variance = 0.0;        // Tr[H^-1] / M
    std::vector<double> effective_qfi;  // 1 / (H^-1)_mumu
};

/// Throws std::domain_error for a singular matrix (min eigenvalue <= 1e-10);
/// the message names the unidentifiable direction.
CramerRaoBounds cramer_rao_bounds(const Eigen::MatrixXd& qfim, double measurements);

/// With reference: 4 Cov of the number operators on the pure transformed
/// coherent state. Without: sum over photon-number sectors of p_N 4 Cov_N.
QfiMatrix qfim_coherent(const InterferometerSpec& spec, const CoherentState& input,
                        const std::vector<std::size_t>& modes, bool reference);

}  // namespace multiport

#include "multiport/multiparameter.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "multiport/fisher.hpp"

namespace multiport {

namespace {

constexpr double kSingularThreshold = 1e-10;

void check_modes(const std::vector<std::size_t>& modes, std::size_t mode_count) {
    if (modes.empty()) throw std::invalid_argument("at least one phase mode is required");
    std::set<std::size_t> seen;
    for (std::size_t k : modes) {
        if (k >= mode_count) throw std::invalid_argument("phase mode " + std::to_string(k + 1) + " out of range");
        if (!seen.insert(k).second)
            throw std::invalid_argument("phase mode " + std::to_string(k + 1) +
                                        " listed twice: its parameters would be indistinguishable");
    }
}

void check_lambda(const std::vector<double>& lambda, std::size_t count) {
    if (lambda.size() != count) throw std::invalid_argument("one parameter value per phase mode is required");
}

Eigen::MatrixXd covariance(const StateVector& state, const GeneratorSet& g) {
    const Eigen::VectorXd p = state.amplitudes().cwiseAbs2();
    const double norm = p.sum();
    const std::size_t n = g.size();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (norm <= 0.0) return cov;
    std::vector<double> mean(n);
    for (std::size_t mu = 0; mu < n; ++mu) mean[mu] = p.dot(g.diagonal(mu)) / norm;
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            cov(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) =
                p.dot(g.diagonal(mu).cwiseProduct(g.diagonal(nu))) / norm - mean[mu] * mean[nu];
    return cov;
}

CMatrix sld_from_probe(const CVector& psi0, const GeneratorSet& g, std::size_t mu, const CVector& u) {
    const CMatrix p0 = psi0 * psi0.adjoint();
    const CMatrix gm = g.matrix(mu);
    const Complex i(0.0, 1.0);
    const CMatrix l0 = 2.0 * (-i * gm * p0 + i * p0 * gm);
    return u.asDiagonal() * l0 * u.conjugate().asDiagonal();
}

}  // namespace

GeneratorSet::GeneratorSet(FockBasisPtr basis, std::vector<std::size_t> modes)
    : basis_(std::move(basis)), modes_(std::move(modes)) {
    check_modes(modes_, basis_->mode_count());
    for (std::size_t k : modes_) {
        Eigen::VectorXd d(static_cast<Eigen::Index>(basis_->size()));
        for (std::size_t i = 0; i < basis_->size(); ++i) d(static_cast<Eigen::Index>(i)) = (*basis_)[i][k];
        diagonals_.push_back(std::move(d));
    }
}

CMatrix GeneratorSet::matrix(std::size_t mu) const { return diagonal(mu).cast<Complex>().asDiagonal(); }

CVector GeneratorSet::evolution(const std::vector<double>& lambda) const {
    check_lambda(lambda, size());
    CVector u(static_cast<Eigen::Index>(basis_->size()));
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        double phase = 0.0;
        for (std::size_t mu = 0; mu < size(); ++mu) phase += diagonals_[mu](i) * lambda[mu];
        u(i) = std::polar(1.0, -phase);
    }
    return u;
}

double GeneratorSet::commutator_residual() const {
    double worst = 0.0;
    for (std::size_t mu = 0; mu < size(); ++mu)
        for (std::size_t nu = mu + 1; nu < size(); ++nu) {
            const CMatrix a = matrix(mu);
            const CMatrix b = matrix(nu);
            worst = std::max(worst, (a * b - b * a).cwiseAbs().maxCoeff());
        }
    return worst;
}

double QfiMatrix::symmetry_residual() const {
    return entries.size() == 0 ? 0.0 : (entries - entries.transpose()).cwiseAbs().maxCoeff();
}

double QfiMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries);
    return solver.eigenvalues().minCoeff();
}

double QfiMatrix::cross_check_residual() const {
    if (sld_entries.size() == 0) return 0.0;
    return (entries - sld_entries).cwiseAbs().maxCoeff();
}

CMatrix probe_density(const InterferometerSpec& spec, const FockState& input, const std::vector<std::size_t>& modes,
                      const std::vector<double>& lambda) {
    const StateVector probe = probe_state(spec, input);
    const GeneratorSet g(probe.basis_ptr(), modes);
    const CVector psi = g.evolution(lambda).cwiseProduct(probe.amplitudes());
    return psi * psi.adjoint();
}

QfiMatrix qfim_pure(const InterferometerSpec& spec, const FockState& input, const std::vector<std::size_t>& modes) {
    const StateVector probe = probe_state(spec, input);
    const GeneratorSet g(probe.basis_ptr(), modes);
    QfiMatrix out;
    out.modes = modes;
    out.zero_photon = input.photon_number() == 0;
    out.entries = 4.0 * covariance(probe, g);

    const std::size_t n = g.size();
    const std::vector<double> origin(n, 0.0);
    const CVector u = g.evolution(origin);
    const CMatrix rho = probe.amplitudes() * probe.amplitudes().adjoint();
    std::vector<CMatrix> sld;
    for (std::size_t mu = 0; mu < n; ++mu) sld.push_back(sld_from_probe(probe.amplitudes(), g, mu, u));
    out.sld_entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            out.sld_entries(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) =
                std::real((rho * (sld[mu] * sld[nu] + sld[nu] * sld[mu])).trace()) / 2.0;
    return out;
}

SldOperator sld_pure(const InterferometerSpec& spec, const FockState& input, const std::vector<std::size_t>& modes,
                     std::size_t mu, const std::vector<double>& lambda) {
    const StateVector probe = probe_state(spec, input);
    const GeneratorSet g(probe.basis_ptr(), modes);
    if (mu >= g.size()) throw std::out_of_range("parameter index out of range");
    return {mu, sld_from_probe(probe.amplitudes(), g, mu, g.evolution(lambda))};
}

Complex weak_commutativity(const InterferometerSpec& spec, const FockState& input,
                           const std::vector<std::size_t>& modes, std::size_t mu, std::size_t nu,
                           const std::vector<double>& lambda) {
    const StateVector probe = probe_state(spec, input);
    const GeneratorSet g(probe.basis_ptr(), modes);
    if (mu >= g.size() || nu >= g.size()) throw std::out_of_range("parameter index out of range");
    const CVector u = g.evolution(lambda);
    const CVector psi = u.cwiseProduct(probe.amplitudes());
    const CMatrix rho = psi * psi.adjoint();
    const CMatrix a = sld_from_probe(probe.amplitudes(), g, mu, u);
    const CMatrix b = sld_from_probe(probe.amplitudes(), g, nu, u);
    return (rho * (a * b - b * a)).trace();
}

double weak_commutativity_residual(const InterferometerSpec& spec, const FockState& input,
                                   const std::vector<std::size_t>& modes, const std::vector<double>& lambda) {
    double worst = 0.0;
    for (std::size_t mu = 0; mu < modes.size(); ++mu)
        for (std::size_t nu = mu + 1; nu < modes.size(); ++nu)
            worst = std::max(worst, std::abs(weak_commutativity(spec, input, modes, mu, nu, lambda)));
    return worst;
}

CramerRaoBounds cramer_rao_bounds(const Eigen::MatrixXd& qfim, double measurements) {
    if (qfim.rows() != qfim.cols() || qfim.rows() == 0) throw std::invalid_argument("QFI matrix must be square");
    if (measurements <= 0.0) throw std::invalid_argument("number of measurements must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(qfim);
    if (solver.eigenvalues()(0) <= kSingularThreshold) {
        std::ostringstream msg;
        msg << "QFI matrix is singular (eigenvalue " << solver.eigenvalues()(0)
            << "); unidentifiable parameter direction (";
        const Eigen::VectorXd v = solver.eigenvectors().col(0);
        for (Eigen::Index i = 0; i < v.size(); ++i) msg << (i ? ", " : "") << v(i);
        msg << ")";
        throw std::domain_error(msg.str());
    }
    CramerRaoBounds b;
    b.measurements = measurements;
    b.inverse = qfim.inverse();
    for (Eigen::Index mu = 0; mu < qfim.rows(); ++mu) {
        b.per_parameter.push_back(std::sqrt(b.inverse(mu, mu) / measurements));
        b.effective_qfi.push_back(1.0 / b.inverse(mu, mu));
    }
    b.total_variance = b.inverse.trace() / measurements;
    return b;
}

QfiMatrix qfim_coherent(const InterferometerSpec& spec, const CoherentState& input,
                        const std::vector<std::size_t>& modes, bool reference) {
    if (input.mode_count() != spec.mode_count())
        throw std::invalid_argument("coherent state has the wrong number of modes");
    check_modes(modes, spec.mode_count());
    const CoherentState probe = input.transformed(spec.splitter());
    const auto n = static_cast<Eigen::Index>(modes.size());
    QfiMatrix out;
    out.modes = modes;
    out.zero_photon = probe.mean_photon_number() == 0.0;
    out.entries = Eigen::MatrixXd::Zero(n, n);
    if (reference) {
        // independent Poissonian modes: Cov(n_mu, n_nu) = delta_mu,nu |beta_mu|^2
        for (Eigen::Index mu = 0; mu < n; ++mu)
            out.entries(mu, mu) = 4.0 * std::norm(probe.alphas()(static_cast<Eigen::Index>(modes[mu])));
        return out;
    }
    for (const PhotonSector& sector : coherent_sectors(probe)) {
        if (sector.photons == 0 || sector.weight == 0.0) continue;
        const GeneratorSet g(sector.state.basis_ptr(), modes);
        out.entries += sector.weight * 4.0 * covariance(sector.state, g);
    }
    return out;
}

}  // namespace multiport

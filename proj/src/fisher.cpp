#include "multiport/fisher.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace multiport {

namespace {

constexpr double kZeroProbability = 1e-12;

Eigen::VectorXd occupation_diagonal(const FockBasis& basis, std::size_t mode) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) g(static_cast<Eigen::Index>(i)) = basis[i][mode];
    return g;
}

double number_variance(const StateVector& state, std::size_t mode) {
    const Eigen::VectorXd n = occupation_diagonal(state.basis(), mode);
    const Eigen::VectorXd p = state.amplitudes().cwiseAbs2();
    const double norm = p.sum();
    if (norm <= 0.0) return 0.0;
    const double mean = p.dot(n) / norm;
    const double second = p.dot(n.cwiseProduct(n)) / norm;
    return std::max(0.0, second - mean * mean);
}

}  // namespace

double qfi_fock(const InterferometerSpec& spec, const FockState& input, std::size_t phase_mode) {
    if (phase_mode >= spec.mode_count()) throw std::out_of_range("phase mode out of range");
    return 4.0 * number_variance(probe_state(spec, input), phase_mode);
}

double qfi_mixed(const CMatrix& rho, const Eigen::VectorXd& generator) {
    if (rho.rows() != rho.cols() || rho.rows() != generator.size())
        throw std::invalid_argument("density matrix and generator dimensions differ");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    const CMatrix& vectors = solver.eigenvectors();
    const CMatrix g = vectors.adjoint() * generator.asDiagonal() * vectors;
    double h = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        for (Eigen::Index j = 0; j < lambda.size(); ++j) {
            const double sum = lambda(i) + lambda(j);
            if (sum <= 1e-14) continue;
            const double diff = lambda(i) - lambda(j);
            h += 2.0 * diff * diff / sum * std::norm(g(i, j));
        }
    }
    return h;
}

std::vector<PhotonSector> coherent_sectors(const CoherentState& state) {
    const double tail = state.tail_mass();
    if (tail > CoherentState::kTailTolerance) {
        std::ostringstream msg;
        msg << "coherent truncation at N_max = " << state.truncation() << " leaves tail mass " << tail;
        throw std::domain_error(msg.str());
    }
    const double mean = state.mean_photon_number();
    const CVector& alpha = state.alphas();
    std::vector<PhotonSector> sectors;
    for (int n = 0; n <= state.truncation(); ++n) {
        auto basis = enumerate_basis(state.mode_count(), n);
        CVector amplitudes(static_cast<Eigen::Index>(basis->size()));
        for (std::size_t i = 0; i < basis->size(); ++i) {
            const FockState& s = (*basis)[i];
            // prod_j alpha_j^{n_j} / sqrt(n_j!), without the e^{-|alpha|^2/2} prefactor
            Complex a = 1.0;
            for (std::size_t j = 0; j < s.mode_count(); ++j) {
                const Complex aj = alpha(static_cast<Eigen::Index>(j));
                for (int k = 0; k < s[j]; ++k) a *= aj;
            }
            amplitudes(static_cast<Eigen::Index>(i)) = a / std::sqrt(s.factorial_product());
        }
        const double weight = poisson_pmf(mean, n);
        const double norm = amplitudes.norm();
        if (norm > 0.0) amplitudes /= norm;
        sectors.push_back({n, norm > 0.0 ? weight : 0.0, StateVector(std::move(basis), std::move(amplitudes))});
    }
    return sectors;
}

double qfi_coherent(const InterferometerSpec& spec, const CoherentState& input, std::size_t phase_mode,
                    bool reference) {
    if (input.mode_count() != spec.mode_count())
        throw std::invalid_argument("coherent state has the wrong number of modes");
    if (phase_mode >= spec.mode_count()) throw std::out_of_range("phase mode out of range");
    const CoherentState probe = input.transformed(spec.splitter());
    if (reference) return 4.0 * std::norm(probe.alphas()(static_cast<Eigen::Index>(phase_mode)));
    double h = 0.0;
    for (const PhotonSector& sector : coherent_sectors(probe))
        h += sector.weight * 4.0 * number_variance(sector.state, phase_mode);
    return h;
}

QfiComparison compare_qfi(const InterferometerSpec& spec, const FockState& fock_input,
                          const CVector& alpha_direction, std::size_t phase_mode) {
    QfiComparison out;
    out.fock = qfi_fock(spec, fock_input, phase_mode);
    out.fock_photons = fock_input.photon_number();
    const StateVector probe = probe_state(spec, fock_input);
    {
        const Eigen::VectorXd n = occupation_diagonal(probe.basis(), phase_mode);
        out.fock_phase_mode_mean = probe.amplitudes().cwiseAbs2().dot(n);
    }
    const double direction_total = alpha_direction.squaredNorm();
    const CVector beta = spec.splitter().matrix() * alpha_direction;
    const double direction_mode = std::norm(beta(static_cast<Eigen::Index>(phase_mode)));
    if (direction_total <= 0.0 || direction_mode <= 0.0)
        throw std::invalid_argument("coherent direction sends no light onto the phase-shifter mode");

    auto evaluate = [&](double scale) {
        QfiComparison::Normalized r;
        r.scale = scale;
        const CoherentState state(alpha_direction * scale);
        r.total_mean = state.mean_photon_number();
        r.phase_mode_mean = scale * scale * direction_mode;
        r.with_reference = qfi_coherent(spec, state, phase_mode, true);
        r.without_reference = qfi_coherent(spec, state, phase_mode, false);
        return r;
    };
    out.equal_total = evaluate(std::sqrt(out.fock_photons / direction_total));
    out.equal_phase_mode = evaluate(std::sqrt(out.fock_phase_mode_mean / direction_mode));
    return out;
}

double cfi_photon_counting(const FringeModel& model, double phase) {
    double info = 0.0;
    for (const FourierSeries& series : model.series()) {
        const double p = series.value(phase);
        if (p < kZeroProbability) {
            const double curvature = series.second_derivative(phase);
            if (curvature > 0.0) info += 2.0 * curvature;
            continue;
        }
        const double dp = series.derivative(phase);
        info += dp * dp / p;
    }
    return info;
}

double cfi_photon_counting(const InterferometerSpec& spec, const FockState& input, double phase) {
    return cfi_photon_counting(FringeModel(spec, input), phase);
}

double cfi_coherent(const InterferometerSpec& spec, const CoherentState& input, double phase) {
    // beta = a + b e^{-i phi}: d|beta|^2/dphi = 2 Re(conj(beta) (-i) b e^{-i phi})
    const std::size_t k = spec.primary_phase_mode();
    const CMatrix& s = spec.splitter().matrix();
    const CVector gamma = s * input.alphas();
    const Complex shifted = gamma(static_cast<Eigen::Index>(k)) * std::polar(1.0, -phase);
    CVector inner = gamma;
    inner(static_cast<Eigen::Index>(k)) = shifted;
    const CVector beta = s * inner;
    const CVector dbeta = s.col(static_cast<Eigen::Index>(k)) * (Complex(0.0, -1.0) * shifted);
    double info = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        const double mean = std::norm(beta(j));
        const double dmean = 2.0 * std::real(std::conj(beta(j)) * dbeta(j));
        if (mean > kZeroProbability) info += dmean * dmean / mean;
    }
    return info;
}

}  // namespace multiport

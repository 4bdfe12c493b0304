#include "multiport/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace multiport {

namespace {

void validate_occupations(const std::vector<int>& occupations) {
    for (int n : occupations) {
        if (n < 0) throw std::invalid_argument("Fock occupations must be non-negative");
    }
}

// Appends every composition of `photons` into the remaining modes, largest
// first in the leading mode, which yields lexicographically descending order.
void compositions(std::size_t mode, int photons, std::vector<int>& current,
                  std::vector<FockState>& out) {
    if (mode + 1 == current.size()) {
        current[mode] = photons;
        out.emplace_back(current);
        return;
    }
    for (int n = photons; n >= 0; --n) {
        current[mode] = n;
        compositions(mode + 1, photons - n, current, out);
    }
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

FockState::FockState(std::vector<int> occupations) : occupations_(std::move(occupations)) {
    validate_occupations(occupations_);
    photons_ = std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

FockState::FockState(std::initializer_list<int> occupations)
    : FockState(std::vector<int>(occupations)) {}

double FockState::factorial_product() const {
    double product = 1.0;
    for (int n : occupations_) product *= std::tgamma(static_cast<double>(n) + 1.0);
    return product;
}

std::string FockState::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
        if (i) out << ',';
        out << occupations_[i];
    }
    return out.str();
}

FockState parse_fock_state(const std::string& text) {
    std::vector<int> occupations;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        const auto first = token.find_first_not_of(" \t");
        const auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos) throw std::invalid_argument("empty occupation in '" + text + "'");
        token = token.substr(first, last - first + 1);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad occupation '" + token + "' in '" + text + "'");
        }
        if (used != token.size()) throw std::invalid_argument("bad occupation '" + token + "' in '" + text + "'");
        occupations.push_back(value);
    }
    if (occupations.empty()) throw std::invalid_argument("empty Fock state");
    return FockState(std::move(occupations));
}

FockBasis::FockBasis(std::size_t mode_count, int photon_number)
    : modes_(mode_count), photons_(photon_number) {
    if (mode_count < 1) throw std::invalid_argument("a Fock basis needs at least one mode");
    if (photon_number < 0) throw std::invalid_argument("photon number must be non-negative");
    std::vector<int> current(mode_count, 0);
    states_.reserve(basis_size(mode_count, photon_number));
    compositions(0, photon_number, current, states_);
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

std::size_t FockBasis::index_of(const FockState& state) const {
    const auto it = index_.find(state);
    if (it == index_.end()) throw std::out_of_range("state |" + state.to_string() + "> not in basis");
    return it->second;
}

FockBasisPtr enumerate_basis(std::size_t mode_count, int photon_number) {
    return std::make_shared<const FockBasis>(mode_count, photon_number);
}

std::size_t basis_size(std::size_t mode_count, int photon_number) {
    // binomial(N + m - 1, m - 1), built incrementally to stay exact
    std::size_t result = 1;
    const std::size_t n = static_cast<std::size_t>(photon_number) + mode_count - 1;
    const std::size_t k = mode_count - 1;
    for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

double unitarity_residual(const CMatrix& matrix) {
    if (matrix.rows() != matrix.cols()) return INFINITY;
    const CMatrix gram = matrix.adjoint() * matrix - CMatrix::Identity(matrix.rows(), matrix.cols());
    return gram.cwiseAbs().maxCoeff();
}

ModeUnitary::ModeUnitary(CMatrix matrix, double tolerance) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("mode unitary must be a non-empty square matrix");
    const double residual = unitarity_residual(matrix_);
    if (!(residual <= tolerance)) {
        std::ostringstream msg;
        msg << "matrix is not unitary: max |U^dag U - I| = " << residual;
        throw std::invalid_argument(msg.str());
    }
}

ModeUnitary ModeUnitary::identity(std::size_t dimension) {
    const auto n = static_cast<Eigen::Index>(dimension);
    return ModeUnitary(CMatrix::Identity(n, n));
}

StateVector::StateVector(FockBasisPtr basis, CVector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (!basis_) throw std::invalid_argument("state vector needs a basis");
    if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size())
        throw std::invalid_argument("amplitude count does not match basis size");
}

StateVector StateVector::fock(const FockState& state) {
    auto basis = enumerate_basis(state.mode_count(), state.photon_number());
    CVector amplitudes = CVector::Zero(static_cast<Eigen::Index>(basis->size()));
    amplitudes(static_cast<Eigen::Index>(basis->index_of(state))) = 1.0;
    return StateVector(std::move(basis), std::move(amplitudes));
}

Complex StateVector::amplitude(const FockState& state) const {
    if (!basis_->contains(state)) return 0.0;
    return amplitudes_(static_cast<Eigen::Index>(basis_->index_of(state)));
}

Complex permanent(const CMatrix& matrix) {
    const auto n = matrix.rows();
    if (n != matrix.cols()) throw std::invalid_argument("permanent of a non-square matrix");
    if (n == 0) return 1.0;
    if (n > 30) throw std::invalid_argument("permanent dimension too large for Ryser iteration");

    std::vector<Complex> row_sums(static_cast<std::size_t>(n), 0.0);
    Complex total = 0.0;
    std::uint64_t gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int column = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << column;
        const bool added = (gray & bit) == 0;
        gray ^= bit;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (added)
                row_sums[static_cast<std::size_t>(i)] += matrix(i, column);
            else
                row_sums[static_cast<std::size_t>(i)] -= matrix(i, column);
        }
        Complex product = 1.0;
        for (const Complex& s : row_sums) product *= s;
        const int size = std::popcount(gray);
        total += ((size % 2) == 0) ? product : -product;
    }
    return (n % 2 == 0) ? total : -total;
}

Complex permanent_naive(const CMatrix& matrix) {
    const auto n = matrix.rows();
    if (n != matrix.cols()) throw std::invalid_argument("permanent of a non-square matrix");
    if (n == 0) return 1.0;
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex product = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) product *= matrix(i, perm[static_cast<std::size_t>(i)]);
        total += product;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Complex transition_amplitude(const ModeUnitary& unitary, const FockState& input,
                             const FockState& output) {
    const std::size_t m = unitary.dimension();
    if (input.mode_count() != m || output.mode_count() != m)
        throw std::invalid_argument("Fock state mode count does not match the unitary");
    if (input.photon_number() != output.photon_number())
        throw std::invalid_argument("photon number is not conserved: |" + input.to_string() +
                                    "> -> |" + output.to_string() + ">");
    const int photons = input.photon_number();
    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
    rows.reserve(static_cast<std::size_t>(photons));
    cols.reserve(static_cast<std::size_t>(photons));
    for (std::size_t i = 0; i < m; ++i) {
        for (int r = 0; r < output[i]; ++r) rows.push_back(static_cast<Eigen::Index>(i));
        for (int c = 0; c < input[i]; ++c) cols.push_back(static_cast<Eigen::Index>(i));
    }
    CMatrix sub(photons, photons);
    for (int r = 0; r < photons; ++r)
        for (int c = 0; c < photons; ++c) sub(r, c) = unitary(static_cast<std::size_t>(rows[r]), static_cast<std::size_t>(cols[c]));
    return permanent(sub) / std::sqrt(input.factorial_product() * output.factorial_product());
}

CMatrix transfer_matrix(const ModeUnitary& unitary, const FockBasis& basis) {
    if (unitary.dimension() != basis.mode_count())
        throw std::invalid_argument("unitary dimension does not match basis mode count");
    const auto size = static_cast<Eigen::Index>(basis.size());
    CMatrix result(size, size);
    for (Eigen::Index j = 0; j < size; ++j)
        for (Eigen::Index i = 0; i < size; ++i)
            result(i, j) = transition_amplitude(unitary, basis[static_cast<std::size_t>(j)],
                                                basis[static_cast<std::size_t>(i)]);
    return result;
}

StateVector evolve(const ModeUnitary& unitary, const StateVector& state) {
    if (unitary.dimension() != state.basis().mode_count())
        throw std::invalid_argument("unitary dimension does not match the state's mode count");
    const FockBasis& basis = state.basis();
    const auto size = static_cast<Eigen::Index>(basis.size());
    CVector out = CVector::Zero(size);
    for (Eigen::Index j = 0; j < size; ++j) {
        const Complex a = state.amplitudes()(j);
        if (a == Complex{}) continue;
        for (Eigen::Index i = 0; i < size; ++i)
            out(i) += transition_amplitude(unitary, basis[static_cast<std::size_t>(j)],
                                           basis[static_cast<std::size_t>(i)]) * a;
    }
    return StateVector(state.basis_ptr(), std::move(out));
}

double poisson_pmf(double mean, int n) {
    if (n < 0) return 0.0;
    if (mean <= 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(mean) - mean - log_factorial(n));
}

CoherentState::CoherentState(CVector alphas, int truncation)
    : alphas_(std::move(alphas)), truncation_(truncation) {
    if (alphas_.size() == 0) throw std::invalid_argument("coherent state needs at least one mode");
    if (truncation_ < 0) throw std::invalid_argument("truncation must be non-negative");
    if (!std::isfinite(alphas_.squaredNorm())) throw std::invalid_argument("coherent amplitudes must be finite");
}

double CoherentState::tail_mass() const {
    // summed directly; 1 - sum(head) loses everything below ~1e-16
    const double mean = mean_photon_number();
    double tail = 0.0;
    for (int n = truncation_ + 1;; ++n) {
        const double p = poisson_pmf(mean, n);
        tail += p;
        if (n > mean && p <= 1e-20 * tail) break;
        if (p == 0.0 && n > mean) break;
    }
    return tail;
}

CoherentState CoherentState::transformed(const ModeUnitary& unitary) const {
    if (unitary.dimension() != mode_count())
        throw std::invalid_argument("unitary dimension does not match coherent state");
    return CoherentState(unitary.matrix() * alphas_, truncation_);
}

double coherent_output_probability(const ModeUnitary& unitary, const CoherentState& input,
                                   const FockState& outcome) {
    if (outcome.mode_count() != input.mode_count())
        throw std::invalid_argument("outcome mode count does not match coherent state");
    const CVector beta = unitary.matrix() * input.alphas();
    double probability = 1.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j)
        probability *= poisson_pmf(std::norm(beta(j)), outcome[static_cast<std::size_t>(j)]);
    return probability;
}

}  // namespace multiport

#pragma once

// Fock-space linear algebra for a handful of photons in a handful of modes:
// basis enumeration, permanent-based transition amplitudes, evolution of
// state vectors under mode unitaries and coherent-state photon statistics.

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace multiport {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Absolute tolerance used for "is zero" / "is one" checks on amplitudes.
inline constexpr double kAmplitudeTolerance = 1e-10;

/// Occupation numbers of m optical modes.
class FockState {
public:
    FockState() = default;
    explicit FockState(std::vector<int> occupations);
    FockState(std::initializer_list<int> occupations);

    std::size_t mode_count() const { return occupations_.size(); }
    int photon_number() const { return photons_; }
    int operator[](std::size_t mode) const { return occupations_[mode]; }
    const std::vector<int>& occupations() const { return occupations_; }

    /// Product of n_i! over modes.
    double factorial_product() const;

    std::string to_string() const;  // "1,1,1"

    friend bool operator==(const FockState& a, const FockState& b) {
        return a.occupations_ == b.occupations_;
    }
    friend std::strong_ordering operator<=>(const FockState& a, const FockState& b) {
        return a.occupations_ <=> b.occupations_;
    }

private:
    std::vector<int> occupations_;
    int photons_ = 0;
};

/// Parses "1,1,0" (whitespace tolerant). Throws std::invalid_argument.
FockState parse_fock_state(const std::string& text);

/// All states with a fixed mode count and photon number, in lexicographically
/// descending order of the occupation vectors: (N,0,..,0) first, (0,..,0,N) last.
class FockBasis {
public:
    FockBasis(std::size_t mode_count, int photon_number);

    std::size_t mode_count() const { return modes_; }
    int photon_number() const { return photons_; }
    std::size_t size() const { return states_.size(); }
    const FockState& operator[](std::size_t i) const { return states_[i]; }
    const std::vector<FockState>& states() const { return states_; }

    /// Position of a state; throws std::out_of_range when absent.
    std::size_t index_of(const FockState& state) const;
    bool contains(const FockState& state) const { return index_.count(state) != 0; }

private:
    std::size_t modes_;
    int photons_;
    std::vector<FockState> states_;
    std::map<FockState, std::size_t> index_;
};

using FockBasisPtr = std::shared_ptr<const FockBasis>;

FockBasisPtr enumerate_basis(std::size_t mode_count, int photon_number);

/// binomial(N + m - 1, m - 1)
std::size_t basis_size(std::size_t mode_count, int photon_number);

/// Unitary m x m matrix acting on creation operators, b_i^dag = sum_j U_ij a_j^dag.
/// The constructor rejects matrices whose max |U^dag U - I| entry exceeds
/// `tolerance`.
class ModeUnitary {
public:
    static constexpr double kUnitarityTolerance = 1e-12;

    explicit ModeUnitary(CMatrix matrix, double tolerance = kUnitarityTolerance);
    static ModeUnitary identity(std::size_t dimension);

    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix& matrix() const { return matrix_; }
    Complex operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

private:
    CMatrix matrix_;
};

/// max_ij |(U^dag U - I)_ij|
double unitarity_residual(const CMatrix& matrix);

/// Amplitudes over a fixed-(m, N) Fock basis.
class StateVector {
public:
    StateVector(FockBasisPtr basis, CVector amplitudes);

    /// The basis vector |state>.
    static StateVector fock(const FockState& state);

    const FockBasis& basis() const { return *basis_; }
    const FockBasisPtr& basis_ptr() const { return basis_; }
    const CVector& amplitudes() const { return amplitudes_; }

    Complex amplitude(const FockState& state) const;
    double probability(const FockState& state) const { return std::norm(amplitude(state)); }
    double squared_norm() const { return amplitudes_.squaredNorm(); }

private:
    FockBasisPtr basis_;
    CVector amplitudes_;
};

/// Matrix permanent by Ryser's formula with Gray-code subset iteration,
/// O(2^n n). The 0x0 permanent is 1.
Complex permanent(const CMatrix& matrix);

/// Permanent by direct expansion over all n! permutations. Slow; used as a
/// reference for `permanent`.
Complex permanent_naive(const CMatrix& matrix);

/// <output| U |input>; throws std::invalid_argument on mode-count or
/// photon-number mismatch.
Complex transition_amplitude(const ModeUnitary& unitary, const FockState& input,
                             const FockState& output);

/// Matrix T with T(i, j) = <basis[i]| U |basis[j]>.
CMatrix transfer_matrix(const ModeUnitary& unitary, const FockBasis& basis);

StateVector evolve(const ModeUnitary& unitary, const StateVector& state);

/// Product coherent state |alpha_1, ..., alpha_m>, with a photon-number
/// truncation used whenever the state has to be expanded in Fock sectors.
class CoherentState {
public:
    static constexpr int kDefaultTruncation = 24;
    static constexpr double kTailTolerance = 1e-8;

    explicit CoherentState(CVector alphas, int truncation = kDefaultTruncation);

    std::size_t mode_count() const { return static_cast<std::size_t>(alphas_.size()); }
    const CVector& alphas() const { return alphas_; }
    int truncation() const { return truncation_; }
    double mean_photon_number() const { return alphas_.squaredNorm(); }

    /// Poisson mass of total photon number above the truncation.
    double tail_mass() const;

    /// Same state after the linear network: alpha -> U alpha.
    CoherentState transformed(const ModeUnitary& unitary) const;

private:
    CVector alphas_;
    int truncation_;
};

/// Poisson(mean) probability of exactly n events, evaluated in log space.
double poisson_pmf(double mean, int n);

/// Photon-counting probability of `outcome` for a coherent input: independent
/// Poissonian modes with means |beta_j|^2, beta = U alpha.
double coherent_output_probability(const ModeUnitary& unitary, const CoherentState& input,
                                   const FockState& outcome);

}  // namespace multiport

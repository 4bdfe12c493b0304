#pragma once

// Output photon-number fringes versus the unknown phase, their Fourier
// decomposition P(phi) = sum_k A_k cos(k phi - delta_k), and N-fold
// visibilities.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "multiport/devices.hpp"
#include "multiport/fock.hpp"

namespace multiport {

/// Uniform half-open grid start + i (stop - start) / count, i = 0 .. count-1.
struct PhaseGrid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;

    double step() const { return (stop - start) / static_cast<double>(count); }
    double operator[](std::size_t i) const { return start + static_cast<double>(i) * step(); }
    std::vector<double> points() const;

    /// [0, 2 pi) with `count` points.
    static PhaseGrid full_period(std::size_t count);
};

/// Parses "start:stop:count". start/stop accept plain numbers or multiples of
/// pi written as "pi", "2pi", "-pi/3", "0.5*pi".
PhaseGrid parse_phase_grid(const std::string& text);
double parse_angle(const std::string& text);

struct FourierTerm {
    int harmonic = 0;
    double amplitude = 0.0;  // A_k >= 0
    double offset = 0.0;     // delta_k in [0, 2 pi)
};

/// Finite cosine series. Term k stays at index k.
class FourierSeries {
public:
    FourierSeries() = default;
    explicit FourierSeries(std::vector<FourierTerm> terms);

    /// DFT of samples taken on a uniform grid spanning exactly one period.
    /// Harmonics below the Nyquist index are kept.
    static FourierSeries from_samples(const PhaseGrid& grid, const std::vector<double>& samples);

    const std::vector<FourierTerm>& terms() const { return terms_; }
    int max_harmonic() const { return static_cast<int>(terms_.size()) - 1; }

    /// A_k; 0 beyond the stored range.
    double amplitude(int harmonic) const;
    double offset(int harmonic) const;

    double value(double phi) const;
    double derivative(double phi) const;
    double second_derivative(double phi) const;

    /// Copy keeping harmonics 0..max_harmonic only.
    FourierSeries truncated(int max_harmonic) const;

private:
    std::vector<FourierTerm> terms_;
};

struct FringeSample {
    double phase;
    double probability;
};

struct FringePattern {
    FockState outcome;
    std::vector<FringeSample> samples;
    FourierSeries fourier;
};

/// Exact outcome probabilities of a single-phase interferometer. The splitter
/// transfer matrix is computed once; each phase point then costs two
/// matrix-vector products on the fixed-N basis.
class FringeEvaluator {
public:
    FringeEvaluator(const InterferometerSpec& spec, const FockState& input);

    const FockBasis& basis() const { return *basis_; }
    const FockState& input() const { return input_; }
    const InterferometerSpec& spec() const { return spec_; }

    /// Output state for total phase `phase` on the primary phase mode.
    CVector output_amplitudes(double phase) const;
    std::vector<double> probabilities(double phase) const;
    double probability(const FockState& outcome, double phase) const;

private:
    InterferometerSpec spec_;
    FockState input_;
    FockBasisPtr basis_;
    CMatrix transfer_;
    CVector probe_;
    std::size_t phase_mode_;
};

/// Probability of `outcome` sampled on `grid` (which must span [start,
/// start + 2 pi) with at least 2N + 1 points) plus its Fourier expansion.
FringePattern fringe_scan(const InterferometerSpec& spec, const FockState& input,
                          const FockState& outcome, const PhaseGrid& grid);

/// One pattern per outcome of the fixed-N output basis, in basis order.
std::vector<FringePattern> fringe_scan_all(const InterferometerSpec& spec, const FockState& input,
                                           const PhaseGrid& grid);

/// Fourier tables for every outcome of (spec, input), truncated at harmonic N.
/// Used wherever probabilities and their phase derivatives are needed
/// repeatedly.
class FringeModel {
public:
    static constexpr std::size_t kGridPoints = 720;

    FringeModel(const InterferometerSpec& spec, const FockState& input);

    const std::vector<FockState>& outcomes() const { return outcomes_; }
    const std::vector<FourierSeries>& series() const { return series_; }
    std::size_t size() const { return outcomes_.size(); }
    int photon_number() const { return photons_; }
    std::size_t index_of(const FockState& outcome) const;

    double probability(std::size_t outcome, double phase) const;

private:
    std::vector<FockState> outcomes_;
    std::vector<FourierSeries> series_;
    int photons_;
};

struct VisibilityReport {
    FockState outcome;
    double visibility = 0.0;                 // |A_N / A_0|
    std::optional<double> classical_bound;   // Gamma
    std::optional<bool> nonclassical;        // V > Gamma
};

/// V = |A_N / A_0| with N the outcome's photon number. Throws
/// std::domain_error when A_0 vanishes.
VisibilityReport n_fold_visibility(const FringePattern& pattern);

/// Tabulated closed forms for the |1,1,1> tritter and |1,1,1,1> quarter
/// Mach-Zehnder interferometers. Outcomes are matched up to a permutation of
/// their indices. Throws std::invalid_argument for anything else.
double closed_form_probability(SplitterKind kind, const FockState& outcome, double phi);
bool has_closed_form(SplitterKind kind, const FockState& outcome);

/// Max |simulated - closed form| over a 720-point grid on [0, 2 pi), for the
/// all-ones input of the interferometer's splitter.
double closed_form_check(const FockState& outcome, const InterferometerSpec& spec);

/// Outcome classes (occupations sorted descending) of an N-photon, m-mode
/// output, in basis order.
std::vector<FockState> outcome_classes(std::size_t mode_count, int photon_number);

/// The all-ones Fock state on m modes.
FockState ones_state(std::size_t mode_count);

}  // namespace multiport

#pragma once

// Grid posterior over the phase interval [-pi/3, 5pi/3) and photon-counting
// likelihoods evaluated on that grid.

#include <cstddef>
#include <numbers>
#include <vector>

#include "multiport/devices.hpp"
#include "multiport/fock.hpp"
#include "multiport/fringes.hpp"

namespace multiport {

inline constexpr double kPhaseLower = -std::numbers::pi / 3.0;
inline constexpr double kPhaseUpper = 5.0 * std::numbers::pi / 3.0;

/// Maps any angle into [kPhaseLower, kPhaseUpper).
double wrap_phase(double phi);

/// Posterior on a uniform grid phi_i = lower + i * step over the interval,
/// stored as log-weights. Starts uniform.
class Posterior {
public:
    static constexpr std::size_t kDefaultSize = 4096;

    /// Throws std::invalid_argument unless `size` is a power of two >= 1024.
    explicit Posterior(std::size_t size = kDefaultSize);

    std::size_t size() const { return log_weights_.size(); }
    double step() const { return step_; }
    double phase(std::size_t i) const { return kPhaseLower + static_cast<double>(i) * step_; }
    const std::vector<double>& log_weights() const { return log_weights_; }
    bool normalized() const { return normalized_; }

    /// log_weights += count * values. Entries may be -inf (zero likelihood).
    /// Throws std::domain_error if every grid point ends at zero weight.
    void add_log_likelihood(const std::vector<double>& values, double count = 1.0);

    /// Shifts the log-weights so that sum_i exp(w_i) * step = 1.
    void normalize();

    /// Normalized density values on the grid (the posterior is left untouched).
    std::vector<double> density() const;

    std::size_t argmax() const;

    /// Index of the largest weight within `radius` cells of `center`, wrapping
    /// around the interval.
    std::size_t local_argmax(std::size_t center, std::size_t radius) const;

    /// Normalized mass of the `width` cells centred on `center` (circular).
    double window_mass(std::size_t center, std::size_t width) const;

    std::size_t nearest_index(double phi) const;

private:
    std::vector<double> log_weights_;
    double step_;
    bool normalized_ = false;
};

struct PhaseEstimate {
    double mean = 0.0;
    double variance = 0.0;
};

/// Linear mean and variance over the interval by Riemann sums.
PhaseEstimate estimate(const Posterior& posterior);

/// Single-shot probability of `outcome` when the phase mode carries phi + psi.
/// Throws std::invalid_argument on photon-number or mode mismatch.
double likelihood(const InterferometerSpec& spec, const FockState& input, double psi,
                  const FockState& outcome, double phi);

/// Outcome probabilities of one (spec, input) pair on a posterior grid, for
/// any feedback phase, from the Fourier tables of the fringes.
class GridLikelihood {
public:
    GridLikelihood(const InterferometerSpec& spec, const FockState& input, const Posterior& grid);

    const FringeModel& model() const { return model_; }
    std::size_t outcome_count() const { return model_.size(); }

    /// p(outcome | phi_i + psi) for every grid point (clamped at 0).
    std::vector<double> probabilities(std::size_t outcome, double psi) const;
    std::vector<double> log_probabilities(std::size_t outcome, double psi) const;

private:
    FringeModel model_;
    std::size_t size_;
    std::vector<double> cos_;  // cos(k phi_i), row k
    std::vector<double> sin_;
};

/// Multiplies the posterior by the likelihood of `count` observations of
/// `outcome` at feedback `psi`. Throws std::domain_error for an outcome that
/// is impossible everywhere on the grid.
void bayes_update(Posterior& posterior, const GridLikelihood& likelihood, double psi,
                  const FockState& outcome, std::size_t count = 1);

void bayes_update(Posterior& posterior, const InterferometerSpec& spec, const FockState& input,
                  double psi, const FockState& outcome);

}  // namespace multiport

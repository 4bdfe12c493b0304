#pragma once

// Three-step Bayesian adaptive phase estimation on the tritter Mach-Zehnder
// and its Monte Carlo evaluation.
//
//   I   floor(sqrt M) shots of |1,0,0>, psi = 0, from a uniform prior.
//       The rough estimate is known up to phi <-> 4pi/3 - phi.
//  II   floor(sqrt M) shots of |1,0,0>, psi = pi/4, to pick one of the pair.
// III   the remaining shots of |1,1,1> with psi = 2pi/3 +- kappa - phi_r,
//       which puts the total phase next to the Fisher-information maximum.
//
// The non-adaptive control runs the same steps I and II and then step III
// with psi = 0.

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "multiport/bayes.hpp"
#include "multiport/devices.hpp"
#include "multiport/fock.hpp"

namespace multiport {

enum class ProtocolMode { adaptive, nonadaptive };

std::string to_string(ProtocolMode mode);
ProtocolMode parse_protocol_mode(const std::string& text);

struct ProtocolConfig {
    std::size_t measurements = 10000;  // M
    std::size_t grid_size = Posterior::kDefaultSize;
    double step2_feedback = std::numbers::pi / 4.0;
    double working_point = 2.0 * std::numbers::pi / 3.0;
    // Step III aims at working_point +- kappa with kappa = min(offset_max,
    // offset_sigmas * spread of the step-II posterior). The |1,1,1> fringes are
    // mirror symmetric about 2pi/3, so a total phase exactly there would leave
    // the sign of the residual error unresolved.
    double working_offset_sigmas = 4.0;
    double working_offset_max = 0.6;
    std::uint64_t seed = 0;
    ProtocolMode mode = ProtocolMode::adaptive;

    std::size_t step1_shots() const;  // floor(sqrt M)
    std::size_t step2_shots() const;
    std::size_t step3_shots() const;

    /// Throws std::invalid_argument when M < 9 or the grid is invalid.
    void validate() const;
};

struct StepTally {
    FockState input;
    double feedback = 0.0;
    std::size_t shots = 0;
    std::vector<std::pair<FockState, std::size_t>> counts;  // every outcome, basis order
};

struct TrialResult {
    double true_phase = 0.0;
    double estimate = 0.0;  // in [-pi/3, 5pi/3)
    double sigma = 0.0;
    double rough_phase = 0.0;  // phi_r after step II
    std::array<StepTally, 3> steps;
};

/// Precomputes the likelihood tables once and runs independent trials.
class ProtocolRunner {
public:
    explicit ProtocolRunner(ProtocolConfig config);

    const ProtocolConfig& config() const { return config_; }

    /// One trial. The random stream depends only on (seed, stream_a, stream_b).
    TrialResult run(double true_phase, std::uint64_t stream_a = 0, std::uint64_t stream_b = 0) const;

    /// Step-II rule: the candidate of the degenerate pair whose 20-cell
    /// posterior window holds more mass.
    static std::size_t resolve_degeneracy(const Posterior& posterior, std::size_t a, std::size_t b);

private:
    ProtocolConfig config_;
    InterferometerSpec spec_;
    Posterior prior_;
    GridLikelihood single_;
    GridLikelihood triple_;
    std::vector<std::vector<double>> step1_log_;
    std::vector<std::vector<double>> step2_log_;
    std::vector<std::vector<double>> step3_fixed_log_;  // psi = 0
};

TrialResult run_protocol(const ProtocolConfig& config, double true_phase, std::uint64_t trial = 0);

struct ModeStatistics {
    double rms = 0.0;
    double rms_stderr = 0.0;  // delta method on the mean squared error
    double bias = 0.0;
    double bias_stderr = 0.0;
    double mean_sigma = 0.0;
};

struct MonteCarloRow {
    double phase = 0.0;
    ModeStatistics adaptive;
    ModeStatistics nonadaptive;
    double qcr_bound = 0.0;  // (M H)^-1/2
    double cr_bound = 0.0;   // (M I_phi)^-1/2 with psi = 0; inf where I_phi = 0
    double sql_bound = 0.0;  // (3 M)^-1/2
};

struct MonteCarloTable {
    ProtocolConfig config;
    std::size_t trials = 0;
    bool adaptive = true;
    bool nonadaptive = true;
    double qfi = 0.0;
    std::vector<MonteCarloRow> rows;
};

/// `trials` seeded trials per phase for each requested mode. Trial t at
/// phase index j draws from stream (j, t) in both modes.
MonteCarloTable monte_carlo(const ProtocolConfig& config, const std::vector<double>& phases,
                            std::size_t trials, bool adaptive = true, bool nonadaptive = true);

/// `count` phases at the cell centres of [-pi/3, 5pi/3).
std::vector<double> protocol_phase_grid(std::size_t count);

}  // namespace multiport

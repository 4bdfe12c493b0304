#include "multiport/protocol.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "multiport/fisher.hpp"

namespace multiport {

namespace {

constexpr std::size_t kDecisionWindow = 20;
constexpr std::size_t kTwinWindow = 256;

FockState single_photon() { return FockState{1, 0, 0}; }
FockState triple_photon() { return FockState{1, 1, 1}; }

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),    static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

// Root-mean-square circular distance of the posterior from `center`.
double spread(const Posterior& posterior, double center) {
    const std::vector<double> d = posterior.density();
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double e = std::fabs(posterior.phase(i) - center);
        e = std::min(e, 2.0 * std::numbers::pi - e);
        acc += e * e * d[i];
    }
    return std::sqrt(acc * posterior.step());
}

// 53-bit uniform in [0, 1); unlike std::uniform_real_distribution this is the
// same on every standard library.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::size_t> sample_counts(const FringeModel& model, double total_phase, std::size_t shots,
                                       std::mt19937_64& rng) {
    std::vector<double> cdf(model.size());
    double acc = 0.0;
    for (std::size_t x = 0; x < model.size(); ++x) {
        acc += std::max(0.0, model.probability(x, total_phase));
        cdf[x] = acc;
    }
    std::vector<std::size_t> counts(model.size(), 0);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        std::size_t x = 0;
        while (x + 1 < cdf.size() && u >= cdf[x]) ++x;
        ++counts[x];
    }
    return counts;
}

void apply_counts(Posterior& posterior, const std::vector<std::vector<double>>& log_tables,
                  const std::vector<std::size_t>& counts) {
    for (std::size_t x = 0; x < counts.size(); ++x)
        if (counts[x] > 0) posterior.add_log_likelihood(log_tables[x], static_cast<double>(counts[x]));
}

std::vector<std::vector<double>> log_tables(const GridLikelihood& likelihood, double psi) {
    std::vector<std::vector<double>> out;
    for (std::size_t x = 0; x < likelihood.outcome_count(); ++x) out.push_back(likelihood.log_probabilities(x, psi));
    return out;
}

StepTally tally(const FockState& input, double psi, const FringeModel& model, const std::vector<std::size_t>& counts) {
    StepTally t{input, psi, 0, {}};
    for (std::size_t x = 0; x < counts.size(); ++x) {
        t.shots += counts[x];
        t.counts.emplace_back(model.outcomes()[x], counts[x]);
    }
    return t;
}

ModeStatistics summarize(const std::vector<double>& errors, const std::vector<double>& sigmas) {
    ModeStatistics s;
    const double n = static_cast<double>(errors.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        s.bias += errors[i];
        sq += errors[i] * errors[i];
        s.mean_sigma += sigmas[i];
    }
    s.bias /= n;
    s.mean_sigma /= n;
    s.rms = std::sqrt(sq / n);
    if (errors.size() > 1) {
        double var = 0.0;
        for (double e : errors) var += (e - s.bias) * (e - s.bias);
        var /= n - 1.0;
        s.bias_stderr = std::sqrt(var / n);
        double var_sq = 0.0;
        const double mse = sq / n;
        for (double e : errors) var_sq += (e * e - mse) * (e * e - mse);
        var_sq /= n - 1.0;
        if (s.rms > 0.0) s.rms_stderr = std::sqrt(var_sq / n) / (2.0 * s.rms);
    }
    return s;
}

}  // namespace

std::string to_string(ProtocolMode mode) { return mode == ProtocolMode::adaptive ? "adaptive" : "nonadaptive"; }

ProtocolMode parse_protocol_mode(const std::string& text) {
    if (text == "adaptive") return ProtocolMode::adaptive;
    if (text == "nonadaptive" || text == "non-adaptive") return ProtocolMode::nonadaptive;
    throw std::invalid_argument("unknown protocol mode '" + text + "' (expected adaptive or nonadaptive)");
}

std::size_t ProtocolConfig::step1_shots() const {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(measurements)));
    while (r * r > measurements) --r;
    while ((r + 1) * (r + 1) <= measurements) ++r;
    return r;
}

std::size_t ProtocolConfig::step2_shots() const { return step1_shots(); }

std::size_t ProtocolConfig::step3_shots() const { return measurements - step1_shots() - step2_shots(); }

void ProtocolConfig::validate() const {
    if (measurements < 9) throw std::invalid_argument("protocol needs M >= 9 measurements");
    Posterior check(grid_size);
    (void)check;
}

ProtocolRunner::ProtocolRunner(ProtocolConfig config)
    : config_((config.validate(), config)),
      spec_(InterferometerSpec::mach_zehnder(SplitterKind::tritter)),
      prior_(config_.grid_size),
      single_(spec_, single_photon(), prior_),
      triple_(spec_, triple_photon(), prior_),
      step1_log_(log_tables(single_, 0.0)),
      step2_log_(log_tables(single_, config_.step2_feedback)),
      step3_fixed_log_(log_tables(triple_, 0.0)) {}

std::size_t ProtocolRunner::resolve_degeneracy(const Posterior& posterior, std::size_t a, std::size_t b) {
    return posterior.window_mass(b, kDecisionWindow) > posterior.window_mass(a, kDecisionWindow) ? b : a;
}

TrialResult ProtocolRunner::run(double true_phase, std::uint64_t stream_a, std::uint64_t stream_b) const {
    std::mt19937_64 rng = make_stream(config_.seed, stream_a, stream_b);
    TrialResult result;
    result.true_phase = true_phase;
    Posterior posterior = prior_;

    // I: rough estimate, two-fold degenerate
    const std::size_t m1 = config_.step1_shots();
    auto counts = sample_counts(single_.model(), true_phase, m1, rng);
    apply_counts(posterior, step1_log_, counts);
    result.steps[0] = tally(single_photon(), 0.0, single_.model(), counts);
    const std::size_t a = posterior.argmax();
    const std::size_t b = posterior.nearest_index(4.0 * std::numbers::pi / 3.0 - posterior.phase(a));

    // II: break the degeneracy with a pi/4 offset
    const double psi2 = config_.step2_feedback;
    counts = sample_counts(single_.model(), true_phase + psi2, config_.step2_shots(), rng);
    apply_counts(posterior, step2_log_, counts);
    result.steps[1] = tally(single_photon(), psi2, single_.model(), counts);
    const std::size_t chosen = resolve_degeneracy(posterior, a, b);
    const std::size_t radius = posterior.size() / 6;  // pi/3
    result.rough_phase = posterior.phase(posterior.local_argmax(chosen, radius));

    // III: |1,1,1> next to the working point (or at psi = 0 for the control).
    // Step-III data cannot tell phi from 2 phi_r - 2 kappa - phi, so the
    // offset side is the one whose twin of phi_r carries less posterior mass.
    double psi3 = 0.0;
    if (config_.mode == ProtocolMode::adaptive) {
        const double kappa = std::min(config_.working_offset_max, config_.working_offset_sigmas * spread(posterior, result.rough_phase));
        const double plus = posterior.window_mass(posterior.nearest_index(result.rough_phase - 2.0 * kappa), kTwinWindow);
        const double minus = posterior.window_mass(posterior.nearest_index(result.rough_phase + 2.0 * kappa), kTwinWindow);
        psi3 = config_.working_point + (minus < plus ? -kappa : kappa) - result.rough_phase;
    }
    counts = sample_counts(triple_.model(), true_phase + psi3, config_.step3_shots(), rng);
    if (config_.mode == ProtocolMode::adaptive) {
        for (std::size_t x = 0; x < counts.size(); ++x)
            if (counts[x] > 0)
                posterior.add_log_likelihood(triple_.log_probabilities(x, psi3), static_cast<double>(counts[x]));
    } else {
        apply_counts(posterior, step3_fixed_log_, counts);
    }
    result.steps[2] = tally(triple_photon(), psi3, triple_.model(), counts);

    posterior.normalize();
    const PhaseEstimate e = estimate(posterior);
    result.estimate = e.mean;
    result.sigma = std::sqrt(e.variance);
    return result;
}

TrialResult run_protocol(const ProtocolConfig& config, double true_phase, std::uint64_t trial) {
    return ProtocolRunner(config).run(true_phase, 0, trial);
}

std::vector<double> protocol_phase_grid(std::size_t count) {
    std::vector<double> phases;
    const double width = kPhaseUpper - kPhaseLower;
    for (std::size_t j = 0; j < count; ++j)
        phases.push_back(kPhaseLower + (static_cast<double>(j) + 0.5) * width / static_cast<double>(count));
    return phases;
}

MonteCarloTable monte_carlo(const ProtocolConfig& config, const std::vector<double>& phases, std::size_t trials,
                            bool adaptive, bool nonadaptive) {
    if (trials == 0) throw std::invalid_argument("monte carlo needs at least one trial");
    MonteCarloTable table;
    table.config = config;
    table.trials = trials;
    table.adaptive = adaptive;
    table.nonadaptive = nonadaptive;

    ProtocolConfig adaptive_config = config;
    adaptive_config.mode = ProtocolMode::adaptive;
    ProtocolConfig control_config = config;
    control_config.mode = ProtocolMode::nonadaptive;
    const ProtocolRunner adaptive_runner(adaptive_config);
    const ProtocolRunner control_runner(control_config);

    const InterferometerSpec spec = InterferometerSpec::mach_zehnder(SplitterKind::tritter);
    const FringeModel model(spec, triple_photon());
    table.qfi = qfi_fock(spec, triple_photon(), spec.primary_phase_mode());
    const double m = static_cast<double>(config.measurements);

    for (std::size_t j = 0; j < phases.size(); ++j) {
        MonteCarloRow row;
        row.phase = phases[j];
        row.qcr_bound = 1.0 / std::sqrt(m * table.qfi);
        const double info = cfi_photon_counting(model, phases[j]);
        row.cr_bound = info > 0.0 ? 1.0 / std::sqrt(m * info) : std::numeric_limits<double>::infinity();
        row.sql_bound = 1.0 / std::sqrt(3.0 * m);
        auto run_mode = [&](const ProtocolRunner& runner) {
            std::vector<double> errors;
            std::vector<double> sigmas;
            for (std::size_t t = 0; t < trials; ++t) {
                const TrialResult r = runner.run(phases[j], j, t);
                errors.push_back(r.estimate - r.true_phase);
                sigmas.push_back(r.sigma);
            }
            return summarize(errors, sigmas);
        };
        if (adaptive) row.adaptive = run_mode(adaptive_runner);
        if (nonadaptive) row.nonadaptive = run_mode(control_runner);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace multiport

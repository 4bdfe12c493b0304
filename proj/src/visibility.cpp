#include "multiport/visibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace multiport {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxModes = 8;

// beta(phi) = a + b e^{-i phi} with a = pass * alpha, b = shifted * alpha.
struct LinearSplit {
    CMatrix pass;
    CMatrix shifted;
};

LinearSplit split_for(const InterferometerSpec& spec) {
    const std::size_t k = spec.primary_phase_mode();
    const CMatrix& s = spec.splitter().matrix();
    const auto m = s.rows();
    CMatrix projector = CMatrix::Zero(m, m);
    projector(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    CMatrix complement = CMatrix::Identity(m, m) - projector;
    return {s * complement * s, s * projector * s};
}

// Visibility of prod_j (c_j + 2 Re(d_j e^{i phi}))^{n_j}, with the mean over
// N + 1 equispaced phases giving A_0 exactly.
struct OutcomeKernel {
    std::vector<int> occupations;
    int photons = 0;
    std::vector<Complex> roots;  // e^{i 2 pi s / (N + 1)}

    explicit OutcomeKernel(const FockState& outcome)
        : occupations(outcome.occupations()), photons(outcome.photon_number()) {
        for (int s = 0; s <= photons; ++s)
            roots.push_back(std::polar(1.0, kTwoPi * s / static_cast<double>(photons + 1)));
    }

    double operator()(const double* c, const Complex* d, std::size_t m) const {
        double top = 2.0;
        for (std::size_t j = 0; j < m; ++j) {
            const int n = occupations[j];
            if (n == 0) continue;
            const double ad = std::sqrt(std::norm(d[j]));
            for (int e = 0; e < n; ++e) top *= ad;
        }
        double mean = 0.0;
        for (const Complex& w : roots) {
            double product = 1.0;
            for (std::size_t j = 0; j < m; ++j) {
                const int n = occupations[j];
                if (n == 0) continue;
                const double t = c[j] + 2.0 * (d[j].real() * w.real() - d[j].imag() * w.imag());
                for (int e = 0; e < n; ++e) product *= t;
            }
            mean += product;
        }
        mean /= static_cast<double>(roots.size());
        if (!(mean > 1e-300)) return 0.0;
        return top / mean;
    }
};

// Grid-sweep variant of OutcomeKernel for several outcomes with one photon
// number: the per-mode factors are tabulated once per point and shared.
class BatchKernel {
public:
    BatchKernel(const std::vector<FockState>& outcomes, std::size_t m) : modes_(m) {
        photons_ = outcomes.front().photon_number();
        for (const FockState& o : outcomes) {
            if (o.photon_number() != photons_) throw std::logic_error("batch outcomes differ in photon number");
            occupations_.push_back(o.occupations());
        }
        for (int s = 0; s <= photons_; ++s)
            roots_.push_back(std::polar(1.0, kTwoPi * s / static_cast<double>(photons_ + 1)));
        const std::size_t cells = roots_.size() * m * static_cast<std::size_t>(photons_ + 1);
        powers_.assign(cells, 1.0);
        abs_powers_.assign(m * static_cast<std::size_t>(photons_ + 1), 1.0);
    }

    void evaluate(const double* c, const Complex* d, double* out) {
        const std::size_t stride = static_cast<std::size_t>(photons_ + 1);
        for (std::size_t j = 0; j < modes_; ++j) {
            const double ad = std::sqrt(std::norm(d[j]));
            double* row = &abs_powers_[j * stride];
            for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * ad;
            for (std::size_t s = 0; s < roots_.size(); ++s) {
                const Complex& w = roots_[s];
                const double t = c[j] + 2.0 * (d[j].real() * w.real() - d[j].imag() * w.imag());
                double* p = &powers_[(s * modes_ + j) * stride];
                for (std::size_t e = 1; e < stride; ++e) p[e] = p[e - 1] * t;
            }
        }
        for (std::size_t o = 0; o < occupations_.size(); ++o) {
            const std::vector<int>& n = occupations_[o];
            double top = 2.0;
            for (std::size_t j = 0; j < modes_; ++j) top *= abs_powers_[j * stride + static_cast<std::size_t>(n[j])];
            double mean = 0.0;
            for (std::size_t s = 0; s < roots_.size(); ++s) {
                double product = 1.0;
                const double* base = &powers_[s * modes_ * stride];
                for (std::size_t j = 0; j < modes_; ++j) product *= base[j * stride + static_cast<std::size_t>(n[j])];
                mean += product;
            }
            mean /= static_cast<double>(roots_.size());
            out[o] = mean > 1e-300 ? top / mean : 0.0;
        }
    }

private:
    std::size_t modes_;
    int photons_ = 0;
    std::vector<std::vector<int>> occupations_;
    std::vector<Complex> roots_;
    std::vector<double> powers_;
    std::vector<double> abs_powers_;
};

void harmonic_inputs(const Complex* a, const Complex* b, std::size_t m, double* c, Complex* d) {
    for (std::size_t j = 0; j < m; ++j) {
        c[j] = std::norm(a[j]) + std::norm(b[j]);
        // a conj(b), spelled out to avoid the NaN-recovery path of complex operator*
        d[j] = Complex(a[j].real() * b[j].real() + a[j].imag() * b[j].imag(),
                       a[j].imag() * b[j].real() - a[j].real() * b[j].imag());
    }
}

double visibility_from_alpha(const LinearSplit& split, const OutcomeKernel& kernel,
                             const std::vector<Complex>& alpha) {
    const std::size_t m = alpha.size();
    const CVector x = Eigen::Map<const CVector>(alpha.data(), static_cast<Eigen::Index>(m));
    const CVector a = split.pass * x;
    const CVector b = split.shifted * x;
    std::array<double, kMaxModes> c{};
    std::array<Complex, kMaxModes> d{};
    harmonic_inputs(a.data(), b.data(), m, c.data(), d.data());
    return kernel(c.data(), d.data(), m);
}

inline Complex times(const Complex& x, const Complex& y) {
    return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

struct Candidate {
    double visibility;
    std::vector<Complex> alpha;
};

struct WorseFirst {
    bool operator()(const Candidate& x, const Candidate& y) const { return x.visibility > y.visibility; }
};

using TopK = std::priority_queue<Candidate, std::vector<Candidate>, WorseFirst>;

std::vector<Complex> alpha_from(const std::vector<double>& params, std::size_t m) {
    std::vector<Complex> alpha(m);
    for (std::size_t i = 0; i < m; ++i) alpha[i] = std::polar(params[i], params[m + i]);
    return alpha;
}

RefinementRun pattern_search(const LinearSplit& split, const OutcomeKernel& kernel, const Candidate& start,
                             const ClassicalBoundOptions& options) {
    const std::size_t m = start.alpha.size();
    std::vector<double> x(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = std::abs(start.alpha[i]);
        x[m + i] = std::arg(start.alpha[i]);
    }
    double best = visibility_from_alpha(split, kernel, alpha_from(x, m));
    double amp_step = 0.5 * options.amplitude_step;
    double phase_step = 0.5 * kTwoPi / options.phase_divisions;
    std::size_t evaluations = 0;
    constexpr std::size_t kMaxEvaluations = 200000;
    while (std::max(amp_step, phase_step) >= options.final_step && evaluations < kMaxEvaluations) {
        bool improved = false;
        for (std::size_t p = 0; p < 2 * m; ++p) {
            const double step = p < m ? amp_step : phase_step;
            for (double sign : {1.0, -1.0}) {
                std::vector<double> trial = x;
                trial[p] += sign * step;
                if (p < m) trial[p] = std::clamp(trial[p], 0.0, options.amplitude_max);
                if (trial[p] == x[p]) continue;
                const double v = visibility_from_alpha(split, kernel, alpha_from(trial, m));
                ++evaluations;
                if (v > best + 1e-15) {
                    best = v;
                    x = std::move(trial);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            amp_step *= 0.5;
            phase_step *= 0.5;
        }
    }
    return {start.alpha, start.visibility, alpha_from(x, m), best};
}

}  // namespace

double ClassicalBound::gamma_after(std::size_t count) const {
    double g = grid_best;
    for (std::size_t i = 0; i < std::min(count, runs.size()); ++i) g = std::max(g, runs[i].visibility);
    return g;
}

double coherent_visibility(const InterferometerSpec& spec, const std::vector<Complex>& alpha,
                           const FockState& outcome) {
    if (alpha.size() != spec.mode_count() || outcome.mode_count() != spec.mode_count())
        throw std::invalid_argument("mode count mismatch in coherent visibility");
    if (outcome.photon_number() == 0) throw std::invalid_argument("N-fold visibility needs N > 0");
    return visibility_from_alpha(split_for(spec), OutcomeKernel(outcome), alpha);
}

FringePattern coherent_fringe(const InterferometerSpec& spec, const CoherentState& input,
                              const FockState& outcome, const PhaseGrid& grid) {
    FringePattern pattern{outcome, {}, {}};
    std::vector<double> values(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double phi = grid[i];
        values[i] = coherent_output_probability(build_interferometer(spec, phi), input, outcome);
        pattern.samples.push_back({phi, values[i]});
    }
    pattern.fourier = FourierSeries::from_samples(grid, values);
    return pattern;
}

ClassicalBound classical_visibility_bound(const InterferometerSpec& spec, const FockState& outcome,
                                          const ClassicalBoundOptions& options) {
    return classical_visibility_bounds(spec, {outcome}, options).front();
}

std::vector<ClassicalBound> classical_visibility_bounds(const InterferometerSpec& spec,
                                                        const std::vector<FockState>& outcomes,
                                                        const ClassicalBoundOptions& options) {
    const std::size_t m = spec.mode_count();
    if (m > kMaxModes) throw std::invalid_argument("too many modes for the classical bound search");
    if (options.amplitude_step <= 0.0 || options.amplitude_max <= 0.0 || options.phase_divisions < 1)
        throw std::invalid_argument("invalid classical bound search options");
    std::vector<OutcomeKernel> kernels;
    for (const FockState& outcome : outcomes) {
        if (outcome.mode_count() != m) throw std::invalid_argument("outcome mode count does not match device");
        if (outcome.photon_number() == 0)
            throw std::invalid_argument("classical visibility bound is undefined for N = 0 outcomes");
        if (outcome.photon_number() != outcomes.front().photon_number())
            throw std::invalid_argument("batched outcomes must share one photon number");
        kernels.emplace_back(outcome);
    }
    if (outcomes.empty()) return {};
    BatchKernel batch(outcomes, m);
    const LinearSplit split = split_for(spec);

    const int amp_levels = static_cast<int>(std::floor(options.amplitude_max / options.amplitude_step + 1e-9));
    std::vector<Complex> phases(static_cast<std::size_t>(options.phase_divisions));
    for (int t = 0; t < options.phase_divisions; ++t)
        phases[static_cast<std::size_t>(t)] = std::polar(1.0, kTwoPi * t / options.phase_divisions);

    std::vector<TopK> best(outcomes.size());
    std::vector<double> grid_best(outcomes.size(), 0.0);
    std::size_t grid_points = 0;

    // Mode i contributes column i of `split` times alpha_i. The global phase
    // is fixed by theta_0 = 0, and amplitude vectors sharing a common integer
    // factor are skipped: the visibility is invariant under both.
    std::vector<std::array<Complex, kMaxModes>> partial_a(m + 1), partial_b(m + 1);
    std::vector<int> amp_index(m, 0);
    std::vector<int> phase_index(m, 0);
    std::vector<int> gcd_prefix(m + 1, 0);
    partial_a[0].fill(0.0);
    partial_b[0].fill(0.0);
    std::array<double, kMaxModes> c{};
    std::array<Complex, kMaxModes> d{};
    std::vector<double> values(outcomes.size());
    // column-major copies of the split so the sweep indexes [mode][row]
    std::vector<std::array<Complex, kMaxModes>> pass(m), shifted(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            pass[i][j] = split.pass(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            shifted[i][j] = split.shifted(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        }

    auto leaf = [&]() {
        if (gcd_prefix[m] != 1) return;  // zero vector or non-primitive
        ++grid_points;
        harmonic_inputs(partial_a[m].data(), partial_b[m].data(), m, c.data(), d.data());
        batch.evaluate(c.data(), d.data(), values.data());
        for (std::size_t o = 0; o < kernels.size(); ++o) {
            const double v = values[o];
            grid_best[o] = std::max(grid_best[o], v);
            TopK& top = best[o];
            if (top.size() < options.refinements || (options.refinements > 0 && v > top.top().visibility)) {
                std::vector<Complex> alpha(m);
                for (std::size_t i = 0; i < m; ++i)
                    alpha[i] = options.amplitude_step * amp_index[i] * phases[static_cast<std::size_t>(phase_index[i])];
                top.push({v, std::move(alpha)});
                if (top.size() > options.refinements) top.pop();
            }
        }
    };

    auto descend = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            leaf();
            return;
        }
        const int phase_count = i == 0 ? 1 : options.phase_divisions;
        for (int r = 0; r <= amp_levels; ++r) {
            amp_index[i] = r;
            gcd_prefix[i + 1] = std::gcd(gcd_prefix[i], r);
            for (int t = 0; t < phase_count; ++t) {
                if (r == 0 && t > 0) break;  // theta is irrelevant at zero amplitude
                phase_index[i] = t;
                const Complex alpha = options.amplitude_step * r * phases[static_cast<std::size_t>(t)];
                for (std::size_t j = 0; j < m; ++j) {
                    partial_a[i + 1][j] = partial_a[i][j] + times(pass[i][j], alpha);
                    partial_b[i + 1][j] = partial_b[i][j] + times(shifted[i][j], alpha);
                }
                self(self, i + 1);
            }
        }
    };
    descend(descend, 0);

    std::vector<ClassicalBound> results;
    results.reserve(outcomes.size());
    for (std::size_t o = 0; o < outcomes.size(); ++o) {
        std::vector<Candidate> starts;
        while (!best[o].empty()) {
            starts.push_back(best[o].top());
            best[o].pop();
        }
        std::reverse(starts.begin(), starts.end());  // best first

        ClassicalBound bound;
        bound.outcome = outcomes[o];
        bound.grid_best = grid_best[o];
        bound.grid_points = grid_points;
        bound.gamma = grid_best[o];
        if (!starts.empty()) bound.best_alpha = starts.front().alpha;
        for (const Candidate& start : starts) {
            RefinementRun run = pattern_search(split, kernels[o], start, options);
            if (run.visibility > bound.gamma) {
                bound.gamma = run.visibility;
                bound.best_alpha = run.best;
            }
            bound.runs.push_back(std::move(run));
        }
        results.push_back(std::move(bound));
    }
    return results;
}

}  // namespace multiport

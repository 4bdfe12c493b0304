#include "multiport/bayes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace multiport {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double max_finite(const std::vector<double>& w) {
    double m = kNegInf;
    for (double x : w) m = std::max(m, x);
    return m;
}

}  // namespace

double wrap_phase(double phi) {
    double r = std::fmod(phi - kPhaseLower, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return kPhaseLower + r;
}

Posterior::Posterior(std::size_t size) {
    if (size < 1024 || !std::has_single_bit(size))
        throw std::invalid_argument("posterior grid size must be a power of two >= 1024");
    log_weights_.assign(size, 0.0);
    step_ = kTwoPi / static_cast<double>(size);
}

void Posterior::add_log_likelihood(const std::vector<double>& values, double count) {
    if (values.size() != log_weights_.size()) throw std::invalid_argument("likelihood grid size mismatch");
    if (count == 0.0) return;
    bool alive = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        log_weights_[i] += count * values[i];
        alive = alive || std::isfinite(log_weights_[i]);
    }
    normalized_ = false;
    if (!alive) throw std::domain_error("posterior vanished on the whole grid: observed outcome is impossible");
}

void Posterior::normalize() {
    const double top = max_finite(log_weights_);
    double sum = 0.0;
    for (double w : log_weights_) sum += std::exp(w - top);
    const double shift = top + std::log(sum * step_);
    for (double& w : log_weights_) w -= shift;
    normalized_ = true;
}

std::vector<double> Posterior::density() const {
    const double top = max_finite(log_weights_);
    std::vector<double> d(log_weights_.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = std::exp(log_weights_[i] - top);
        sum += d[i];
    }
    const double scale = 1.0 / (sum * step_);
    for (double& x : d) x *= scale;
    return d;
}

std::size_t Posterior::argmax() const {
    return static_cast<std::size_t>(std::max_element(log_weights_.begin(), log_weights_.end()) -
                                    log_weights_.begin());
}

std::size_t Posterior::local_argmax(std::size_t center, std::size_t radius) const {
    const std::size_t n = size();
    std::size_t best = center % n;
    for (std::size_t d = 0; d <= 2 * radius; ++d) {
        const std::size_t i = (center + n - radius % n + d) % n;
        if (log_weights_[i] > log_weights_[best]) best = i;
    }
    return best;
}

double Posterior::window_mass(std::size_t center, std::size_t width) const {
    const std::vector<double> d = density();
    const std::size_t n = size();
    const std::size_t half = width / 2;
    double mass = 0.0;
    for (std::size_t k = 0; k < width; ++k) mass += d[(center + n - half + k) % n];
    return mass * step_;
}

std::size_t Posterior::nearest_index(double phi) const {
    const double x = (wrap_phase(phi) - kPhaseLower) / step_;
    return static_cast<std::size_t>(std::llround(x)) % size();
}

PhaseEstimate estimate(const Posterior& posterior) {
    const std::vector<double> d = posterior.density();
    const double h = posterior.step();
    double mean = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) mean += posterior.phase(i) * d[i] * h;
    double var = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double e = posterior.phase(i) - mean;
        var += e * e * d[i] * h;
    }
    return {mean, var};
}

double likelihood(const InterferometerSpec& spec, const FockState& input, double psi,
                  const FockState& outcome, double phi) {
    if (outcome.mode_count() != input.mode_count() || outcome.photon_number() != input.photon_number())
        throw std::invalid_argument("outcome " + outcome.to_string() + " cannot follow input " + input.to_string());
    return FringeEvaluator(spec, input).probability(outcome, phi + psi);
}

GridLikelihood::GridLikelihood(const InterferometerSpec& spec, const FockState& input, const Posterior& grid)
    : model_(spec, input), size_(grid.size()) {
    const int kmax = model_.photon_number();
    cos_.resize(static_cast<std::size_t>(kmax + 1) * size_);
    sin_.resize(cos_.size());
    for (int k = 0; k <= kmax; ++k) {
        for (std::size_t i = 0; i < size_; ++i) {
            const double a = k * grid.phase(i);
            cos_[static_cast<std::size_t>(k) * size_ + i] = std::cos(a);
            sin_[static_cast<std::size_t>(k) * size_ + i] = std::sin(a);
        }
    }
}

std::vector<double> GridLikelihood::probabilities(std::size_t outcome, double psi) const {
    // A_k cos(k (phi + psi) - d_k) = A_k [cos(k phi) cos(k psi - d_k) - sin(k phi) sin(k psi - d_k)]
    const FourierSeries& series = model_.series().at(outcome);
    std::vector<double> p(size_, 0.0);
    for (const FourierTerm& t : series.terms()) {
        if (t.amplitude == 0.0) continue;
        const double shift = t.harmonic * psi - t.offset;
        const double c = t.amplitude * std::cos(shift);
        const double s = t.amplitude * std::sin(shift);
        const double* ck = cos_.data() + static_cast<std::size_t>(t.harmonic) * size_;
        const double* sk = sin_.data() + static_cast<std::size_t>(t.harmonic) * size_;
        for (std::size_t i = 0; i < size_; ++i) p[i] += c * ck[i] - s * sk[i];
    }
    for (double& x : p) x = std::max(x, 0.0);
    return p;
}

std::vector<double> GridLikelihood::log_probabilities(std::size_t outcome, double psi) const {
    std::vector<double> p = probabilities(outcome, psi);
    for (double& x : p) x = x > 0.0 ? std::log(x) : kNegInf;
    return p;
}

void bayes_update(Posterior& posterior, const GridLikelihood& likelihood, double psi,
                  const FockState& outcome, std::size_t count) {
    const std::size_t index = likelihood.model().index_of(outcome);
    posterior.add_log_likelihood(likelihood.log_probabilities(index, psi), static_cast<double>(count));
}

void bayes_update(Posterior& posterior, const InterferometerSpec& spec, const FockState& input, double psi,
                  const FockState& outcome) {
    if (outcome.mode_count() != input.mode_count() || outcome.photon_number() != input.photon_number())
        throw std::invalid_argument("outcome " + outcome.to_string() + " cannot follow input " + input.to_string());
    bayes_update(posterior, GridLikelihood(spec, input, posterior), psi, outcome, 1);
}

}  // namespace multiport

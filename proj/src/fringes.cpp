#include "multiport/fringes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

namespace multiport {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument("bad number '" + text + "'");
    return value;
}

FockState sorted_descending(const FockState& state) {
    std::vector<int> occ = state.occupations();
    std::sort(occ.begin(), occ.end(), std::greater<>());
    return FockState(std::move(occ));
}

}  // namespace

std::vector<double> PhaseGrid::points() const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = (*this)[i];
    return out;
}

PhaseGrid PhaseGrid::full_period(std::size_t count) { return {0.0, kTwoPi, count}; }

double parse_angle(const std::string& raw) {
    std::string text = trim(raw);
    if (text.empty()) throw std::invalid_argument("empty angle");
    const auto pos = text.find("pi");
    if (pos == std::string::npos) return parse_number(text);

    std::string prefix = trim(text.substr(0, pos));
    std::string suffix = trim(text.substr(pos + 2));
    if (!prefix.empty() && prefix.back() == '*') prefix = trim(prefix.substr(0, prefix.size() - 1));
    double factor = 1.0;
    if (prefix == "-")
        factor = -1.0;
    else if (prefix == "+" || prefix.empty())
        factor = 1.0;
    else
        factor = parse_number(prefix);
    double divisor = 1.0;
    if (!suffix.empty()) {
        if (suffix.front() != '/') throw std::invalid_argument("bad angle '" + raw + "'");
        divisor = parse_number(trim(suffix.substr(1)));
        if (divisor == 0.0) throw std::invalid_argument("division by zero in angle '" + raw + "'");
    }
    return factor * kPi / divisor;
}

PhaseGrid parse_phase_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos || text.find(':', b + 1) != std::string::npos)
        throw std::invalid_argument("phase grid must be start:stop:count, got '" + text + "'");
    PhaseGrid grid;
    grid.start = parse_angle(text.substr(0, a));
    grid.stop = parse_angle(text.substr(a + 1, b - a - 1));
    const double count = parse_number(trim(text.substr(b + 1)));
    if (count < 1 || count != std::floor(count)) throw std::invalid_argument("grid count must be a positive integer");
    grid.count = static_cast<std::size_t>(count);
    if (!(grid.stop > grid.start)) throw std::invalid_argument("grid stop must exceed start");
    return grid;
}

FourierSeries::FourierSeries(std::vector<FourierTerm> terms) : terms_(std::move(terms)) {
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (terms_[k].harmonic != static_cast<int>(k))
            throw std::invalid_argument("Fourier terms must be stored by harmonic index");
}

FourierSeries FourierSeries::from_samples(const PhaseGrid& grid, const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n == 0 || n != grid.count) throw std::invalid_argument("sample count does not match grid");
    if (std::abs((grid.stop - grid.start) - kTwoPi) > 1e-9)
        throw std::invalid_argument("Fourier extraction needs a grid spanning exactly 2 pi");
    const std::size_t harmonics = (n - 1) / 2;  // strictly below Nyquist
    std::vector<FourierTerm> terms(harmonics + 1);
    for (std::size_t k = 0; k <= harmonics; ++k) {
        Complex c = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            c += samples[j] * std::polar(1.0, -static_cast<double>(k) * grid[j]);
        c /= static_cast<double>(n);
        FourierTerm& t = terms[k];
        t.harmonic = static_cast<int>(k);
        if (k == 0) {
            t.amplitude = std::abs(c.real());
            t.offset = c.real() < 0.0 ? kPi : 0.0;
        } else {
            // c e^{ik phi} + conj = 2|c| cos(k phi + arg c)
            t.amplitude = 2.0 * std::abs(c);
            t.offset = t.amplitude > 0.0 ? wrap_two_pi(-std::arg(c)) : 0.0;
        }
    }
    return FourierSeries(std::move(terms));
}

double FourierSeries::amplitude(int harmonic) const {
    if (harmonic < 0 || harmonic > max_harmonic()) return 0.0;
    return terms_[static_cast<std::size_t>(harmonic)].amplitude;
}

double FourierSeries::offset(int harmonic) const {
    if (harmonic < 0 || harmonic > max_harmonic()) return 0.0;
    return terms_[static_cast<std::size_t>(harmonic)].offset;
}

double FourierSeries::value(double phi) const {
    double sum = 0.0;
    for (const FourierTerm& t : terms_) sum += t.amplitude * std::cos(t.harmonic * phi - t.offset);
    return sum;
}

double FourierSeries::derivative(double phi) const {
    double sum = 0.0;
    for (const FourierTerm& t : terms_) sum -= t.harmonic * t.amplitude * std::sin(t.harmonic * phi - t.offset);
    return sum;
}

double FourierSeries::second_derivative(double phi) const {
    double sum = 0.0;
    for (const FourierTerm& t : terms_)
        sum -= static_cast<double>(t.harmonic * t.harmonic) * t.amplitude * std::cos(t.harmonic * phi - t.offset);
    return sum;
}

FourierSeries FourierSeries::truncated(int max_harmonic) const {
    const auto keep = static_cast<std::size_t>(std::max(0, std::min(max_harmonic, this->max_harmonic())) + 1);
    return FourierSeries(std::vector<FourierTerm>(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(keep)));
}

FringeEvaluator::FringeEvaluator(const InterferometerSpec& spec, const FockState& input)
    : spec_(spec), input_(input), phase_mode_(spec.primary_phase_mode()) {
    if (input.mode_count() != spec.mode_count())
        throw std::invalid_argument("input state has the wrong number of modes for a " + to_string(spec.kind()));
    basis_ = enumerate_basis(input.mode_count(), input.photon_number());
    transfer_ = transfer_matrix(spec.splitter(), *basis_);
    probe_ = transfer_.col(static_cast<Eigen::Index>(basis_->index_of(input)));
}

CVector FringeEvaluator::output_amplitudes(double phase) const {
    CVector shifted = probe_;
    for (std::size_t i = 0; i < basis_->size(); ++i) {
        const int n = (*basis_)[i][phase_mode_];
        if (n != 0) shifted(static_cast<Eigen::Index>(i)) *= std::polar(1.0, -n * phase);
    }
    return transfer_ * shifted;
}

std::vector<double> FringeEvaluator::probabilities(double phase) const {
    const CVector out = output_amplitudes(phase);
    std::vector<double> p(static_cast<std::size_t>(out.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(out(i));
    return p;
}

double FringeEvaluator::probability(const FockState& outcome, double phase) const {
    if (outcome.mode_count() != basis_->mode_count() || outcome.photon_number() != basis_->photon_number())
        throw std::invalid_argument("outcome |" + outcome.to_string() + "> does not conserve photon number");
    return std::norm(output_amplitudes(phase)(static_cast<Eigen::Index>(basis_->index_of(outcome))));
}

namespace {

void check_grid(const PhaseGrid& grid, int photons) {
    if (grid.count < static_cast<std::size_t>(2 * photons + 1))
        throw std::invalid_argument("phase grid needs at least 2N + 1 points");
}

void check_outcome(const FockState& input, const FockState& outcome) {
    if (outcome.mode_count() != input.mode_count())
        throw std::invalid_argument("outcome mode count does not match the input");
    if (outcome.photon_number() != input.photon_number())
        throw std::invalid_argument("outcome |" + outcome.to_string() + "> does not conserve the " +
                                    std::to_string(input.photon_number()) + " input photons");
}

}  // namespace

FringePattern fringe_scan(const InterferometerSpec& spec, const FockState& input,
                          const FockState& outcome, const PhaseGrid& grid) {
    check_outcome(input, outcome);
    check_grid(grid, input.photon_number());
    const FringeEvaluator evaluator(spec, input);
    const std::size_t index = evaluator.basis().index_of(outcome);
    FringePattern pattern{outcome, {}, {}};
    std::vector<double> values(grid.count);
    pattern.samples.reserve(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double phi = grid[i];
        values[i] = std::norm(evaluator.output_amplitudes(phi)(static_cast<Eigen::Index>(index)));
        pattern.samples.push_back({phi, values[i]});
    }
    pattern.fourier = FourierSeries::from_samples(grid, values);
    return pattern;
}

std::vector<FringePattern> fringe_scan_all(const InterferometerSpec& spec, const FockState& input,
                                           const PhaseGrid& grid) {
    check_grid(grid, input.photon_number());
    const FringeEvaluator evaluator(spec, input);
    const std::size_t outcomes = evaluator.basis().size();
    std::vector<std::vector<double>> values(outcomes, std::vector<double>(grid.count));
    for (std::size_t i = 0; i < grid.count; ++i) {
        const auto p = evaluator.probabilities(grid[i]);
        for (std::size_t o = 0; o < outcomes; ++o) values[o][i] = p[o];
    }
    std::vector<FringePattern> patterns;
    patterns.reserve(outcomes);
    for (std::size_t o = 0; o < outcomes; ++o) {
        FringePattern pattern{evaluator.basis()[o], {}, {}};
        pattern.samples.reserve(grid.count);
        for (std::size_t i = 0; i < grid.count; ++i) pattern.samples.push_back({grid[i], values[o][i]});
        pattern.fourier = FourierSeries::from_samples(grid, values[o]);
        patterns.push_back(std::move(pattern));
    }
    return patterns;
}

FringeModel::FringeModel(const InterferometerSpec& spec, const FockState& input)
    : photons_(input.photon_number()) {
    const auto patterns = fringe_scan_all(spec, input, PhaseGrid::full_period(kGridPoints));
    outcomes_.reserve(patterns.size());
    series_.reserve(patterns.size());
    for (const FringePattern& p : patterns) {
        outcomes_.push_back(p.outcome);
        series_.push_back(p.fourier.truncated(photons_));
    }
}

std::size_t FringeModel::index_of(const FockState& outcome) const {
    const auto it = std::find(outcomes_.begin(), outcomes_.end(), outcome);
    if (it == outcomes_.end())
        throw std::invalid_argument("outcome |" + outcome.to_string() + "> does not conserve photon number");
    return static_cast<std::size_t>(it - outcomes_.begin());
}

double FringeModel::probability(std::size_t outcome, double phase) const {
    return series_.at(outcome).value(phase);
}

VisibilityReport n_fold_visibility(const FringePattern& pattern) {
    const double a0 = pattern.fourier.amplitude(0);
    if (!(a0 > 1e-15)) throw std::domain_error("fringe pattern has a vanishing constant term");
    return {pattern.outcome, std::abs(pattern.fourier.amplitude(pattern.outcome.photon_number()) / a0),
            std::nullopt, std::nullopt};
}

bool has_closed_form(SplitterKind kind, const FockState& outcome) {
    const FockState key = sorted_descending(outcome);
    if (kind == SplitterKind::tritter) {
        return outcome.mode_count() == 3 &&
               (key == FockState{1, 1, 1} || key == FockState{2, 1, 0} || key == FockState{3, 0, 0});
    }
    return outcome.mode_count() == 4 &&
           (key == FockState{1, 1, 1, 1} || key == FockState{2, 2, 0, 0} || key == FockState{3, 1, 0, 0} ||
            key == FockState{4, 0, 0, 0} || key == FockState{2, 1, 1, 0});
}

double closed_form_probability(SplitterKind kind, const FockState& outcome, double phi) {
    if (!has_closed_form(kind, outcome))
        throw std::invalid_argument("no closed form for outcome |" + outcome.to_string() + "> of the " +
                                    to_string(kind));
    const FockState key = sorted_descending(outcome);
    using std::cos;
    using std::pow;
    using std::sin;
    if (kind == SplitterKind::tritter) {
        if (key == FockState{1, 1, 1})
            return 29.0 / 81 - 24.0 / 81 * cos(phi + kPi / 3) - 12.0 / 81 * cos(2 * phi - kPi / 3) +
                   16.0 / 81 * cos(3 * phi);
        if (key == FockState{2, 1, 0}) return 4.0 / 81 * (1 - cos(3 * phi));
        return 28.0 / 243 - 24.0 / 243 * cos(phi - 2 * kPi / 3) + 12.0 / 243 * cos(2 * phi - kPi / 3) +
               8.0 / 243 * cos(3 * phi);
    }
    if (key == FockState{1, 1, 1, 1})
        return (167 + 168 * cos(phi) + 108 * cos(2 * phi) + 24 * cos(3 * phi) + 45 * cos(4 * phi)) / 512;
    if (key == FockState{2, 2, 0, 0}) return (47 + 60 * cos(phi) + 21 * cos(2 * phi)) * pow(sin(phi / 2), 4) / 128;
    if (key == FockState{3, 1, 0, 0}) return 3 * pow(sin(phi), 4) / 128;
    if (key == FockState{4, 0, 0, 0}) return 3 * (5 + 3 * cos(phi)) * pow(sin(phi / 2), 6) / 64;
    return (17 + 15 * cos(2 * phi)) * pow(sin(phi), 2) / 256;  // {2,1,1,0}
}

double closed_form_check(const FockState& outcome, const InterferometerSpec& spec) {
    if (!has_closed_form(spec.kind(), outcome))
        throw std::invalid_argument("no closed form for outcome |" + outcome.to_string() + "> of the " +
                                    to_string(spec.kind()));
    const FockState input = ones_state(spec.mode_count());
    const FringeEvaluator evaluator(spec, input);
    const PhaseGrid grid = PhaseGrid::full_period(720);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double phi = grid[i];
        worst = std::max(worst, std::abs(evaluator.probability(outcome, phi) -
                                         closed_form_probability(spec.kind(), outcome, phi)));
    }
    return worst;
}

std::vector<FockState> outcome_classes(std::size_t mode_count, int photon_number) {
    const auto basis = enumerate_basis(mode_count, photon_number);
    std::vector<FockState> classes;
    std::set<FockState> seen;
    for (const FockState& s : basis->states()) {
        FockState key = sorted_descending(s);
        if (seen.insert(key).second) classes.push_back(std::move(key));
    }
    return classes;
}

FockState ones_state(std::size_t mode_count) { return FockState(std::vector<int>(mode_count, 1)); }

}  // namespace multiport

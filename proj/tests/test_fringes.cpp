#include <catch_amalgamated.hpp>

#include <algorithm>

#include "multiport/fringes.hpp"
#include "oracles.hpp"

using namespace multiport;
using Catch::Matchers::WithinAbs;

namespace {

const InterferometerSpec kTritter = InterferometerSpec::mach_zehnder(SplitterKind::tritter);
const InterferometerSpec kQuarter = InterferometerSpec::mach_zehnder(SplitterKind::quarter);

}  // namespace

TEST_CASE("phase grids") {
    const PhaseGrid g = parse_phase_grid("0:2pi:720");
    CHECK(g.count == 720);
    CHECK_THAT(g.stop, WithinAbs(2 * oracle::pi, 1e-15));
    CHECK_THAT(g[1], WithinAbs(2 * oracle::pi / 720, 1e-15));
    CHECK(g.points().size() == 720);
    CHECK_THAT(parse_angle("-pi/3"), WithinAbs(-oracle::pi / 3, 1e-15));
    CHECK_THAT(parse_angle("0.5*pi"), WithinAbs(oracle::pi / 2, 1e-15));
    CHECK_THAT(parse_angle("1.25"), WithinAbs(1.25, 0.0));
    CHECK_THROWS_AS(parse_phase_grid("0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_phase_grid("0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_phase_grid("1:0:10"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
}

TEST_CASE("fringe probabilities agree with the creation-operator expansion") {
    for (double phi : {0.0, 0.4, 1.9, 3.3, 5.9}) {
        const FringeEvaluator t(kTritter, {1, 1, 1});
        for (const auto& [occ, p] : oracle::outcome_probabilities(oracle::tritter_matrix(), {0, 0, phi}, {1, 1, 1}))
            CHECK(std::abs(t.probability(FockState(occ), phi) - p) < 1e-13);
        const FringeEvaluator q(kQuarter, {2, 0, 1, 1});
        for (const auto& [occ, p] :
             oracle::outcome_probabilities(oracle::quarter_matrix(), {0, 0, 0, phi}, {2, 0, 1, 1}))
            CHECK(std::abs(q.probability(FockState(occ), phi) - p) < 1e-13);
    }
}

TEST_CASE("probabilities are normalized at every phase") {
    const PhaseGrid grid = PhaseGrid::full_period(720);
    for (const auto& [spec, input] : {std::pair{kTritter, FockState{1, 1, 1}}, std::pair{kQuarter, FockState{1, 1, 1, 1}},
                                     std::pair{kTritter, FockState{2, 0, 1}}, std::pair{kQuarter, FockState{0, 3, 0, 1}}}) {
        const FringeEvaluator e(spec, input);
        double worst = 0.0;
        for (double phi : grid.points()) {
            const auto p = e.probabilities(phi);
            double sum = 0.0;
            for (double x : p) {
                CHECK(x >= -1e-15);
                sum += x;
            }
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("harmonics above the photon number vanish") {
    const PhaseGrid grid = PhaseGrid::full_period(720);
    for (const auto& [spec, input] : {std::pair{kTritter, FockState{1, 1, 1}}, std::pair{kQuarter, FockState{1, 1, 1, 1}},
                                     std::pair{kQuarter, FockState{1, 0, 0, 1}}}) {
        for (const FringePattern& p : fringe_scan_all(spec, input, grid)) {
            double above = 0.0;
            for (int k = input.photon_number() + 1; k <= p.fourier.max_harmonic(); ++k)
                above = std::max(above, p.fourier.amplitude(k));
            CHECK(above < 1e-10);
        }
    }
}

TEST_CASE("closed-form fringes including permuted outcomes") {
    const PhaseGrid grid = PhaseGrid::full_period(720);
    const FringeEvaluator t(kTritter, {1, 1, 1});
    const FringeEvaluator q(kQuarter, {1, 1, 1, 1});
    std::size_t formulas = 0;
    for (const auto& [evaluator, spec] : {std::pair{&t, kTritter}, std::pair{&q, kQuarter}}) {
        const std::size_t m = spec.mode_count();
        for (const FockState& cls : outcome_classes(m, static_cast<int>(m))) {
            REQUIRE(has_closed_form(spec.kind(), cls));
            ++formulas;
            std::vector<int> occ = cls.occupations();
            std::sort(occ.begin(), occ.end());
            double worst = 0.0;
            do {
                for (double phi : grid.points())
                    worst = std::max(worst, std::abs(evaluator->probability(FockState(occ), phi) -
                                                     closed_form_probability(spec.kind(), FockState(occ), phi)));
            } while (std::next_permutation(occ.begin(), occ.end()));
            CHECK(worst < 1e-9);
            CHECK(closed_form_check(cls, spec) < 1e-9);
        }
    }
    CHECK(formulas == 8);
    CHECK_FALSE(has_closed_form(SplitterKind::tritter, {2, 0, 0}));
    CHECK_THROWS_AS(closed_form_probability(SplitterKind::quarter, {3, 0, 0}, 0.1), std::invalid_argument);
}

TEST_CASE("the (2,1,0) tritter fringe") {
    const FringePattern p = fringe_scan(kTritter, {1, 1, 1}, {2, 1, 0}, PhaseGrid::full_period(720));
    CHECK_THAT(p.fourier.amplitude(0), WithinAbs(4.0 / 81.0, 1e-12));
    CHECK_THAT(p.fourier.amplitude(3), WithinAbs(4.0 / 81.0, 1e-12));
    CHECK(p.fourier.amplitude(1) < 1e-12);
    CHECK(p.fourier.amplitude(2) < 1e-12);
    CHECK_THAT(n_fold_visibility(p).visibility, WithinAbs(1.0, 1e-12));
    const auto top = std::max_element(p.samples.begin(), p.samples.end(),
                                      [](const FringeSample& a, const FringeSample& b) { return a.probability < b.probability; });
    CHECK_THAT(top->probability, WithinAbs(8.0 / 81.0, 1e-14));
    CHECK_THAT(top->phase, WithinAbs(oracle::pi / 3, 1e-12));
}

TEST_CASE("Fourier series round trip and derivatives") {
    const PhaseGrid grid = PhaseGrid::full_period(64);
    std::vector<double> samples;
    auto f = [](double x) { return 0.3 + 0.2 * std::cos(x - 0.4) + 0.05 * std::cos(3 * x + 1.0); };
    for (double x : grid.points()) samples.push_back(f(x));
    const FourierSeries s = FourierSeries::from_samples(grid, samples);
    CHECK_THAT(s.amplitude(0), WithinAbs(0.3, 1e-14));
    CHECK_THAT(s.amplitude(1), WithinAbs(0.2, 1e-14));
    CHECK_THAT(s.offset(1), WithinAbs(0.4, 1e-12));
    CHECK_THAT(s.amplitude(3), WithinAbs(0.05, 1e-14));
    CHECK_THAT(s.offset(3), WithinAbs(2 * oracle::pi - 1.0, 1e-12));
    CHECK(s.amplitude(40) == 0.0);
    const double x = 1.234;
    const double h = 1e-5;
    CHECK_THAT(s.value(x), WithinAbs(f(x), 1e-14));
    CHECK_THAT(s.derivative(x), WithinAbs((f(x + h) - f(x - h)) / (2 * h), 1e-9));
    CHECK_THAT(s.second_derivative(x), WithinAbs((f(x + h) - 2 * f(x) + f(x - h)) / (h * h), 1e-5));
    CHECK(s.truncated(1).max_harmonic() == 1);
}

TEST_CASE("fringe scans validate their grid") {
    CHECK_THROWS_AS(fringe_scan(kTritter, {1, 1, 1}, {1, 1, 1}, PhaseGrid{0.0, 2 * oracle::pi, 6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fringe_scan(kTritter, {1, 1, 1}, {1, 1, 1}, PhaseGrid{0.0, oracle::pi, 100}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fringe_scan(kTritter, {1, 1, 1}, {2, 1, 1}, PhaseGrid::full_period(90)), std::invalid_argument);
}

TEST_CASE("fringe model matches direct evaluation") {
    const FringeModel model(kQuarter, {1, 1, 1, 1});
    const FringeEvaluator e(kQuarter, {1, 1, 1, 1});
    CHECK(model.size() == 35);
    CHECK(model.photon_number() == 4);
    for (double phi : {0.0, 1.0, 2.5, 4.0}) {
        const auto p = e.probabilities(phi);
        for (std::size_t i = 0; i < model.size(); ++i)
            CHECK(std::abs(model.probability(i, phi) - p[e.basis().index_of(model.outcomes()[i])]) < 1e-13);
    }
}

TEST_CASE("outcome classes") {
    const auto c = outcome_classes(4, 4);
    REQUIRE(c.size() == 5);
    CHECK(c.front() == FockState{4, 0, 0, 0});
    CHECK(c.back() == FockState{1, 1, 1, 1});
    CHECK(outcome_classes(3, 3).size() == 3);
    CHECK(ones_state(3) == FockState{1, 1, 1});
}

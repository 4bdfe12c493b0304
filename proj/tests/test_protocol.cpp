#include <catch_amalgamated.hpp>

#include <cmath>

#include "multiport/protocol.hpp"
#include "oracles.hpp"

using namespace multiport;
using Catch::Matchers::WithinAbs;

TEST_CASE("measurement budget split") {
    ProtocolConfig c;
    c.measurements = 10000;
    CHECK(c.step1_shots() == 100);
    CHECK(c.step2_shots() == 100);
    CHECK(c.step3_shots() == 9800);
    c.measurements = 99;
    CHECK(c.step1_shots() == 9);
    CHECK(c.step3_shots() == 81);
    c.measurements = 100000;
    CHECK(c.step1_shots() == 316);
    c.measurements = 8;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.measurements = 100;
    c.grid_size = 3000;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("protocol modes parse") {
    CHECK(parse_protocol_mode("adaptive") == ProtocolMode::adaptive);
    CHECK(to_string(ProtocolMode::nonadaptive) == "nonadaptive");
    CHECK_THROWS_AS(parse_protocol_mode("greedy"), std::invalid_argument);
}

TEST_CASE("trials are reproducible per stream") {
    ProtocolConfig c;
    c.measurements = 2000;
    c.seed = 42;
    const ProtocolRunner runner(c);
    const TrialResult a = runner.run(1.0, 3, 5);
    const TrialResult b = runner.run(1.0, 3, 5);
    const TrialResult other = runner.run(1.0, 3, 6);
    CHECK(a.estimate == b.estimate);
    CHECK(a.sigma == b.sigma);
    CHECK(a.steps[2].counts == b.steps[2].counts);
    CHECK(a.steps[2].counts != other.steps[2].counts);
    ProtocolConfig c2 = c;
    c2.seed = 43;
    CHECK(ProtocolRunner(c2).run(1.0, 3, 5).steps[0].counts != a.steps[0].counts);
    CHECK(run_protocol(c, 1.0, 5).estimate == runner.run(1.0, 0, 5).estimate);
}

TEST_CASE("step tallies account for every shot") {
    ProtocolConfig c;
    c.measurements = 5000;
    const TrialResult r = ProtocolRunner(c).run(2.2, 0, 1);
    const std::size_t expected[3] = {c.step1_shots(), c.step2_shots(), c.step3_shots()};
    for (std::size_t s = 0; s < 3; ++s) {
        std::size_t total = 0;
        for (const auto& [outcome, n] : r.steps[s].counts) total += n;
        CHECK(total == expected[s]);
        CHECK(r.steps[s].shots == expected[s]);
    }
    CHECK(r.steps[0].input == FockState{1, 0, 0});
    CHECK(r.steps[1].input == FockState{1, 0, 0});
    CHECK(r.steps[2].input == FockState{1, 1, 1});
    CHECK_THAT(r.steps[1].feedback, WithinAbs(oracle::pi / 4, 1e-15));
    // step III puts the total phase next to the working point
    const double total = wrap_phase(r.true_phase + r.steps[2].feedback);
    CHECK(std::abs(total - 2 * oracle::pi / 3) < c.working_offset_max + 0.1);
}

TEST_CASE("estimates are consistent with their posterior width") {
    ProtocolConfig c;
    c.measurements = 10000;
    const ProtocolRunner runner(c);
    const double qcr = 1.0 / std::sqrt(10000.0 * 16.0 / 3.0);
    int outliers = 0;
    int trials = 0;
    for (double phi : protocol_phase_grid(12)) {
        for (std::uint64_t t = 0; t < 5; ++t) {
            const TrialResult r = runner.run(phi, 100, t);
            ++trials;
            if (std::abs(r.estimate - phi) > 4.0 * r.sigma) ++outliers;
            CHECK(r.sigma > 0.5 * qcr);
            CHECK(r.sigma < 2.0 * qcr);
            CHECK(r.estimate >= kPhaseLower);
            CHECK(r.estimate < kPhaseUpper);
        }
    }
    CHECK(outliers <= 1);
    CHECK(trials == 60);
}

TEST_CASE("non-adaptive control keeps the feedback at zero in step III") {
    ProtocolConfig c;
    c.measurements = 1000;
    c.mode = ProtocolMode::nonadaptive;
    const TrialResult r = ProtocolRunner(c).run(0.5, 0, 0);
    CHECK(r.steps[2].feedback == 0.0);
    CHECK(std::abs(r.estimate - 0.5) < 0.5);
}

TEST_CASE("degeneracy resolution prefers the heavier window") {
    Posterior p(1024);
    std::vector<double> w(1024, 0.0);
    for (std::size_t i = 95; i <= 105; ++i) w[i] = 2.0;
    for (std::size_t i = 600; i <= 602; ++i) w[i] = 2.5;
    p.add_log_likelihood(w);
    CHECK(ProtocolRunner::resolve_degeneracy(p, 601, 100) == 100);
    CHECK(ProtocolRunner::resolve_degeneracy(p, 100, 601) == 100);
}

TEST_CASE("Monte Carlo table layout and bounds") {
    ProtocolConfig c;
    c.measurements = 400;
    const auto phases = protocol_phase_grid(3);
    REQUIRE(phases.size() == 3);
    CHECK_THAT(phases[0], WithinAbs(kPhaseLower + oracle::pi / 3, 1e-14));
    const MonteCarloTable t = monte_carlo(c, phases, 6, true, false);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.adaptive);
    CHECK_FALSE(t.nonadaptive);
    CHECK_THAT(t.qfi, WithinAbs(16.0 / 3.0, 1e-10));
    for (const MonteCarloRow& row : t.rows) {
        CHECK_THAT(row.qcr_bound, WithinAbs(1.0 / std::sqrt(400.0 * 16.0 / 3.0), 1e-14));
        CHECK_THAT(row.sql_bound, WithinAbs(1.0 / std::sqrt(1200.0), 1e-14));
        CHECK(row.cr_bound >= row.qcr_bound - 1e-12);
        CHECK(row.adaptive.rms > 0.0);
        CHECK(row.adaptive.rms_stderr > 0.0);
    }
    const MonteCarloTable again = monte_carlo(c, phases, 6, true, false);
    CHECK(again.rows[1].adaptive.rms == t.rows[1].adaptive.rms);
}

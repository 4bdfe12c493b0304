#include <catch_amalgamated.hpp>

#include "multiport/devices.hpp"
#include "oracles.hpp"

using namespace multiport;
using Catch::Matchers::WithinAbs;

namespace {

double sum_probability(const StateVector& s, const std::vector<FockState>& states) {
    double p = 0.0;
    for (const FockState& f : states) p += s.probability(f);
    return p;
}

}  // namespace

TEST_CASE("splitters match their entrywise definitions") {
    CHECK((tritter().matrix() - oracle::tritter_matrix()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((quarter().matrix() - oracle::quarter_matrix()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(unitarity_residual(tritter().matrix()) < 1e-15);
    CHECK(unitarity_residual(quarter().matrix()) < 1e-15);
    const CMatrix q = quarter().matrix();
    CHECK((q * q - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
    // every single photon leaves any port with probability 1/m
    CHECK((tritter().matrix().cwiseAbs2().array() - 1.0 / 3.0).abs().maxCoeff() < 1e-15);
    CHECK((q.cwiseAbs2().array() - 0.25).abs().maxCoeff() < 1e-15);
}

TEST_CASE("splitter kinds") {
    CHECK(parse_splitter_kind("tritter") == SplitterKind::tritter);
    CHECK(parse_splitter_kind("quarter") == SplitterKind::quarter);
    CHECK(to_string(SplitterKind::quarter) == "quarter");
    CHECK(mode_count(SplitterKind::tritter) == 3);
    CHECK_THROWS_AS(parse_splitter_kind("hexter"), std::invalid_argument);
}

TEST_CASE("single tritter on |1,1,1>") {
    const StateVector out = evolve(tritter(), StateVector::fock({1, 1, 1}));
    const double pi = oracle::pi;
    const Complex c111 = -std::polar(1.0, 2 * pi / 3) / std::sqrt(3.0);
    // |{3,0,0}> = (|300> + |030> + |003>) / sqrt 3
    const Complex c300 = std::polar(1.0, 4 * pi / 3) * std::sqrt(2.0 / 3.0);
    CHECK(std::abs(out.amplitude({1, 1, 1}) - c111) < 1e-14);
    for (const FockState& s : {FockState{3, 0, 0}, FockState{0, 3, 0}, FockState{0, 0, 3}})
        CHECK(std::abs(out.amplitude(s) - c300 / std::sqrt(3.0)) < 1e-14);
    CHECK_THAT(out.probability({1, 1, 1}), WithinAbs(1.0 / 3.0, 1e-14));
    CHECK_THAT(sum_probability(out, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}), WithinAbs(2.0 / 3.0, 1e-14));
    for (const FockState& s : {FockState{2, 1, 0}, FockState{0, 1, 2}, FockState{1, 0, 2}})
        CHECK(out.probability(s) < 1e-12);
}

TEST_CASE("single quarter on |1,1,1,1>") {
    const StateVector out = evolve(quarter(), StateVector::fock({1, 1, 1, 1}));
    CHECK(std::abs(out.amplitude({1, 1, 1, 1}) - 0.5) < 1e-14);
    double p2200 = 0.0;
    double p4000 = 0.0;
    double suppressed = 0.0;
    for (const FockState& s : out.basis().states()) {
        std::vector<int> o = s.occupations();
        std::sort(o.rbegin(), o.rend());
        if (o == std::vector<int>{2, 2, 0, 0}) {
            p2200 += out.probability(s);
            // |{2,2,0,0}> has six terms sharing sqrt6/4
            CHECK(std::abs(out.amplitude(s) - std::sqrt(6.0) / 4.0 / std::sqrt(6.0)) < 1e-14);
        } else if (o == std::vector<int>{4, 0, 0, 0}) {
            p4000 += out.probability(s);
            CHECK(std::abs(out.amplitude(s) + std::sqrt(6.0) / 4.0 / 2.0) < 1e-14);
        } else if (o != std::vector<int>{1, 1, 1, 1}) {
            suppressed = std::max(suppressed, out.probability(s));
        }
    }
    CHECK_THAT(out.probability({1, 1, 1, 1}), WithinAbs(0.25, 1e-14));
    CHECK_THAT(p2200, WithinAbs(3.0 / 8.0, 1e-14));
    CHECK_THAT(p4000, WithinAbs(3.0 / 8.0, 1e-14));
    CHECK(suppressed < 1e-12);
}

TEST_CASE("interferometer is splitter, phases, splitter") {
    const double phi = 0.83;
    const double psi = -0.2;
    for (SplitterKind kind : {SplitterKind::tritter, SplitterKind::quarter}) {
        const auto spec = InterferometerSpec::mach_zehnder(kind);
        const std::size_t m = mode_count(kind);
        CHECK(spec.primary_phase_mode() == m - 1);
        std::vector<double> phases(m, 0.0);
        phases[m - 1] = phi + psi;
        const CMatrix s = kind == SplitterKind::tritter ? oracle::tritter_matrix() : oracle::quarter_matrix();
        const CMatrix expect = oracle::sandwich(s, phases);
        CHECK((build_interferometer(spec, phi, psi).matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
    const auto multi = InterferometerSpec::multi_phase(SplitterKind::tritter, {1, 2});
    PhaseValues v{{{1, PhaseRole::unknown}, 0.3}, {{2, PhaseRole::unknown}, -1.1}};
    CHECK((build_interferometer(multi, v).matrix() - oracle::sandwich(oracle::tritter_matrix(), {0.0, 0.3, -1.1}))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
}

TEST_CASE("interferometer spec errors") {
    const auto multi = InterferometerSpec::multi_phase(SplitterKind::tritter, {1, 2});
    CHECK_THROWS_AS(multi.primary_phase_mode(), std::invalid_argument);
    CHECK_THROWS_AS(build_interferometer(multi, PhaseValues{{{1, PhaseRole::unknown}, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(build_interferometer(multi, PhaseValues{{{1, PhaseRole::unknown}, 0.3},
                                                            {{2, PhaseRole::unknown}, 0.3},
                                                            {{0, PhaseRole::feedback}, 0.1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(InterferometerSpec::multi_phase(SplitterKind::tritter, {3}), std::invalid_argument);
    CHECK_THROWS_AS(InterferometerSpec::multi_phase(SplitterKind::quarter, {2, 2}), std::invalid_argument);
}

TEST_CASE("probe state is the first splitter output") {
    const StateVector p = probe_state(InterferometerSpec::mach_zehnder(SplitterKind::tritter), {1, 1, 1});
    const StateVector q = evolve(tritter(), StateVector::fock({1, 1, 1}));
    CHECK((p.amplitudes() - q.amplitudes()).norm() < 1e-15);
}

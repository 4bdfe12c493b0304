#include <catch_amalgamated.hpp>

#include <random>

#include "multiport/fock.hpp"
#include "oracles.hpp"

using namespace multiport;
using Catch::Matchers::WithinAbs;

TEST_CASE("Ryser permanent agrees with the permutation expansion") {
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 7;
        const CMatrix a = oracle::random_matrix(n, rng);
        worst = std::max(worst, std::abs(permanent(a) - permanent_naive(a)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("permanent of small matrices by hand") {
    CHECK(permanent(CMatrix(0, 0)) == Complex(1.0));
    CMatrix one(1, 1);
    one << Complex(2.0, -1.0);
    CHECK(std::abs(permanent(one) - Complex(2.0, -1.0)) < 1e-15);
    CMatrix two(2, 2);
    two << 1.0, 2.0, 3.0, 4.0;
    CHECK_THAT(permanent(two).real(), WithinAbs(10.0, 1e-14));
    // per(J_n) = n!
    CHECK_THAT(permanent(CMatrix::Ones(6, 6)).real(), WithinAbs(720.0, 1e-9));
}

TEST_CASE("Fock states parse and print") {
    const FockState s = parse_fock_state(" 2, 0 ,1 ");
    CHECK(s == FockState{2, 0, 1});
    CHECK(s.photon_number() == 3);
    CHECK(s.to_string() == "2,0,1");
    CHECK(s.factorial_product() == 2.0);
    CHECK_THROWS_AS(parse_fock_state("1,-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fock_state("1,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fock_state(""), std::invalid_argument);
}

TEST_CASE("basis is complete and lexicographically descending") {
    for (std::size_t m : {1u, 2u, 3u, 4u}) {
        for (int n : {0, 1, 3, 4}) {
            const FockBasis basis(m, n);
            CHECK(basis.size() == basis_size(m, n));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                CHECK(basis[i].photon_number() == n);
                CHECK(basis.index_of(basis[i]) == i);
                if (i > 0) CHECK(basis[i - 1] > basis[i]);
            }
        }
    }
    const FockBasis b(3, 3);
    CHECK(b.size() == 10);
    CHECK(b[0] == FockState{3, 0, 0});
    CHECK(b[9] == FockState{0, 0, 3});
    CHECK_THROWS_AS(b.index_of(FockState{1, 1, 0}), std::out_of_range);
}

TEST_CASE("mode unitary rejects non-unitary matrices") {
    CMatrix a = CMatrix::Identity(3, 3);
    CHECK_NOTHROW(ModeUnitary(a));
    a(0, 1) = 1e-6;
    CHECK(unitarity_residual(a) > 1e-7);
    CHECK_THROWS_AS(ModeUnitary(a), std::invalid_argument);
}

TEST_CASE("transition amplitudes match the creation-operator expansion") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + trial % 3;
        const CMatrix u = oracle::random_unitary(m, rng);
        const ModeUnitary mu(u);
        std::vector<int> in(static_cast<std::size_t>(m), 0);
        in[0] = 2;
        in[static_cast<std::size_t>(m - 1)] += 1;
        const FockState input(in);
        const auto expected = oracle::expand_output(u, in);
        const FockBasis basis(static_cast<std::size_t>(m), input.photon_number());
        for (const FockState& out : basis.states()) {
            const auto it = expected.find(out.occupations());
            const Complex want = it == expected.end() ? Complex(0.0) : it->second;
            CHECK(std::abs(transition_amplitude(mu, input, out) - want) < 1e-12);
        }
    }
}

TEST_CASE("Hong-Ou-Mandel dip on a balanced beam splitter") {
    CMatrix bs(2, 2);
    bs << 1.0, 1.0, 1.0, -1.0;
    const ModeUnitary u(bs / std::sqrt(2.0));
    CHECK(std::abs(transition_amplitude(u, {1, 1}, {1, 1})) < 1e-15);
    CHECK_THAT(std::norm(transition_amplitude(u, {1, 1}, {2, 0})), WithinAbs(0.5, 1e-15));
}

TEST_CASE("transition amplitude argument errors") {
    const ModeUnitary u = ModeUnitary::identity(3);
    CHECK_THROWS_AS(transition_amplitude(u, {1, 1}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(transition_amplitude(u, {1, 1, 1}, {1, 1, 0}), std::invalid_argument);
}

TEST_CASE("evolution preserves the norm and equals the transfer matrix action") {
    std::mt19937_64 rng(5);
    for (int m : {3, 4}) {
        const ModeUnitary u(oracle::random_unitary(m, rng));
        const StateVector in = StateVector::fock(FockState(std::vector<int>(static_cast<std::size_t>(m), 1)));
        const StateVector out = evolve(u, in);
        CHECK_THAT(out.squared_norm(), WithinAbs(1.0, 1e-12));
        const CMatrix t = transfer_matrix(u, in.basis());
        // transfer matrix of a unitary is unitary on the fixed-N sector
        CHECK(unitarity_residual(t) < 1e-12);
        CHECK((t * in.amplitudes() - out.amplitudes()).norm() < 1e-12);
    }
}

TEST_CASE("coherent state photon statistics") {
    CHECK_THAT(poisson_pmf(2.0, 3), WithinAbs(std::exp(-2.0) * 8.0 / 6.0, 1e-15));
    CHECK_THAT(poisson_pmf(0.0, 0), WithinAbs(1.0, 0.0));
    CHECK(poisson_pmf(0.0, 2) == 0.0);

    CVector a(3);
    a << Complex(1.0, 0.0), Complex(0.0, 0.5), Complex(-0.3, 0.2);
    const CoherentState s(a);
    CHECK_THAT(s.mean_photon_number(), WithinAbs(1.0 + 0.25 + 0.13, 1e-15));
    CHECK(s.tail_mass() < 1e-12);

    // U alpha on a beam splitter
    CMatrix bs(2, 2);
    bs << 1.0, 1.0, 1.0, -1.0;
    const ModeUnitary u(bs / std::sqrt(2.0));
    CVector in(2);
    in << 1.0, 0.0;
    const CoherentState out = CoherentState(in).transformed(u);
    CHECK(std::abs(out.alphas()(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK_THAT(coherent_output_probability(u, CoherentState(in), {1, 0}),
               WithinAbs(0.5 * std::exp(-1.0), 1e-15));
}

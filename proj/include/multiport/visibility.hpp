#pragma once

// Classical bound on N-fold fringe visibilities: the largest |A_N / A_0|
// reachable when the interferometer is fed with a product coherent state
// |alpha_1, ..., alpha_m>. Since any classical state is a P-function mixture
// of coherent states, no classical input can exceed it.

#include <complex>
#include <cstddef>
#include <vector>

#include "multiport/devices.hpp"
#include "multiport/fock.hpp"
#include "multiport/fringes.hpp"

namespace multiport {

struct ClassicalBoundOptions {
    double amplitude_max = 3.0;
    double amplitude_step = 0.25;
    int phase_divisions = 16;  // theta step 2 pi / 16 = pi / 8
    std::size_t refinements = 20;
    double final_step = 1e-6;
};

/// One local pattern-search run started from a grid point.
struct RefinementRun {
    std::vector<Complex> start;
    double start_visibility = 0.0;
    std::vector<Complex> best;
    double visibility = 0.0;
};

struct ClassicalBound {
    FockState outcome;
    double gamma = 0.0;
    std::vector<Complex> best_alpha;
    double grid_best = 0.0;
    std::size_t grid_points = 0;
    std::vector<RefinementRun> runs;  // in start order (best grid point first)

    /// max over the first `count` runs (and the grid); non-decreasing in count.
    double gamma_after(std::size_t count) const;
};

/// N-fold visibility of the coherent-state fringe for outcome `outcome`.
/// Coherent photon counting factorizes into Poissonian modes, so
/// P(phi) is proportional to prod_j |a_j + b_j e^{-i phi}|^{2 n_j}; A_N and A_0
/// follow exactly from that product. Throws std::invalid_argument for the vacuum outcome.
double coherent_visibility(const InterferometerSpec& spec, const std::vector<Complex>& alpha,
                           const FockState& outcome);

/// Coherent photon-counting fringe for `outcome` sampled on `grid`, with its
/// Fourier table, from Poissonian probabilities at each phase.
FringePattern coherent_fringe(const InterferometerSpec& spec, const CoherentState& input,
                              const FockState& outcome, const PhaseGrid& grid);

/// Grid search over |alpha_i| and theta_i, then derivative-free refinement
/// from the best grid points. Deterministic. Throws std::invalid_argument for
/// N = 0 outcomes.
ClassicalBound classical_visibility_bound(const InterferometerSpec& spec, const FockState& outcome,
                                          const ClassicalBoundOptions& options = {});

/// Same as above for several outcomes sharing one grid sweep.
std::vector<ClassicalBound> classical_visibility_bounds(const InterferometerSpec& spec,
                                                        const std::vector<FockState>& outcomes,
                                                        const ClassicalBoundOptions& options = {});

}  // namespace multiport

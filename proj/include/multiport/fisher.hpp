#pragma once

// Quantum and classical Fisher information of the single-phase
// interferometers, for Fock probes and for coherent probes with and without
// an external phase reference.

#include <cstddef>
#include <vector>

#include "multiport/devices.hpp"
#include "multiport/fock.hpp"
#include "multiport/fringes.hpp"

namespace multiport {

/// 4 Var(n_mode) on the probe (first splitter applied to the Fock input).
double qfi_fock(const InterferometerSpec& spec, const FockState& input, std::size_t phase_mode);

/// QFI of rho(phi) = e^{-i G phi} rho e^{i G phi} from the eigendecomposition
/// of rho: 2 sum_{ij} (l_i - l_j)^2 / (l_i + l_j) |<i|G|j>|^2. `generator` is
/// the diagonal of G in the same basis as `rho`.
double qfi_mixed(const CMatrix& rho, const Eigen::VectorXd& generator);

/// Phase-averaged coherent state split into orthogonal total-photon-number
/// sectors: rho' = sum_N weight_N |state_N><state_N|.
struct PhotonSector {
    int photons;
    double weight;
    StateVector state;
};

/// Fock expansion of a (post-network) product coherent state up to its
/// truncation. Throws std::domain_error if the truncated tail exceeds
/// CoherentState::kTailTolerance.
std::vector<PhotonSector> coherent_sectors(const CoherentState& state);

/// With `reference`: 4 |beta_mode|^2 on the pure transformed coherent state.
/// Without: the phase-averaged state is block diagonal in photon number and
/// the generator preserves each block, so H = sum_N p_N 4 Var_N(n_mode).
double qfi_coherent(const InterferometerSpec& spec, const CoherentState& input, std::size_t phase_mode,
                    bool reference);

/// Fock versus coherent QFI at matched photon numbers. The coherent
/// amplitudes keep the direction of `alpha_direction` and are rescaled under
/// two normalizations: equal total mean photon number (sum |alpha|^2 = N) and
/// equal mean photon number on the phase-shifter mode.
struct QfiComparison {
    double fock = 0.0;
    int fock_photons = 0;
    double fock_phase_mode_mean = 0.0;
    struct Normalized {
        double scale = 0.0;  // alpha = scale * alpha_direction
        double total_mean = 0.0;
        double phase_mode_mean = 0.0;
        double with_reference = 0.0;
        double without_reference = 0.0;
    };
    Normalized equal_total;
    Normalized equal_phase_mode;
};

QfiComparison compare_qfi(const InterferometerSpec& spec, const FockState& fock_input,
                          const CVector& alpha_direction, std::size_t phase_mode);

/// Photon-counting Fisher information sum_x (dp_x)^2 / p_x with analytic phase
/// derivatives of the Fourier tables. Terms with p < 1e-12 use the second-order
/// limit 2 p'' when p'' > 0 and contribute 0 otherwise.
double cfi_photon_counting(const FringeModel& model, double phase);
double cfi_photon_counting(const InterferometerSpec& spec, const FockState& input, double phase);

/// Photon-counting Fisher information of a coherent input: the modes are
/// independent Poissonians, so I = sum_j (d|beta_j|^2/dphi)^2 / |beta_j|^2.
double cfi_coherent(const InterferometerSpec& spec, const CoherentState& input, double phase);

}  // namespace multiport

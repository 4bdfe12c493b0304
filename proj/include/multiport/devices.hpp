#pragma once

// Canonical multiport splitters and the generalized Mach-Zehnder sandwich
// U_splitter * U_phases * U_splitter built from them.
//
// Phase convention: a phase shift phi on mode k is exp(-i n_k phi), i.e. the
// diagonal entry e^{-i phi}. Every closed-form fringe in this library is
// written for that sign.
//
// Mode indices are 0-based in the C++ API. Text interfaces (CLI, JSON) use
// 1-based indices k_1 ... k_m.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "multiport/fock.hpp"

namespace multiport {

/// (1/sqrt 3) [[1, w, w], [w, 1, w], [w, w, 1]] with w = exp(2 pi i / 3).
ModeUnitary tritter();

/// (1/2) [[1,-1,-1,-1], [-1,1,-1,-1], [-1,-1,1,-1], [-1,-1,-1,1]]; real,
/// symmetric and involutory.
ModeUnitary quarter();

/// Diagonal unitary with e^{-i phase} on `mode` (0-based) and 1 elsewhere.
ModeUnitary phase_shifter(std::size_t mode_count, std::size_t mode, double phase);

/// `then` applied after `first`: the matrix product then * first.
ModeUnitary compose(const ModeUnitary& first, const ModeUnitary& then);

enum class SplitterKind { tritter, quarter };

std::string to_string(SplitterKind kind);
SplitterKind parse_splitter_kind(const std::string& text);
std::size_t mode_count(SplitterKind kind);
ModeUnitary splitter(SplitterKind kind);

/// What a phase slot inside the interferometer stands for.
enum class PhaseRole { unknown, feedback };

struct PhaseSlot {
    std::size_t mode;  // 0-based
    PhaseRole role;

    friend auto operator<=>(const PhaseSlot&, const PhaseSlot&) = default;
};

using PhaseValues = std::map<PhaseSlot, double>;

/// Two identical splitters with phase shifters between them. A mode may carry
/// one unknown and one feedback slot; their phases add.
class InterferometerSpec {
public:
    InterferometerSpec(SplitterKind kind, std::vector<PhaseSlot> slots);

    /// Single-phase Mach-Zehnder: unknown phase and feedback on the last mode
    /// (k_3 for the tritter, k_4 for the quarter).
    static InterferometerSpec mach_zehnder(SplitterKind kind);

    /// Unknown phases on the given 0-based modes, no feedback slots.
    static InterferometerSpec multi_phase(SplitterKind kind, const std::vector<std::size_t>& modes);

    SplitterKind kind() const { return kind_; }
    std::size_t mode_count() const { return multiport::mode_count(kind_); }
    const std::vector<PhaseSlot>& slots() const { return slots_; }
    const ModeUnitary& splitter() const { return splitter_; }

    /// Modes carrying an unknown phase, in slot order.
    std::vector<std::size_t> unknown_modes() const;

    /// The only unknown-phase mode; throws if there is not exactly one.
    std::size_t primary_phase_mode() const;

private:
    SplitterKind kind_;
    std::vector<PhaseSlot> slots_;
    ModeUnitary splitter_;
};

/// U_splitter * diag(e^{-i phi_k}) * U_splitter where phi_k is the sum of the
/// phases of every slot on mode k. Throws std::invalid_argument when a slot
/// has no value or a value names an undeclared slot.
ModeUnitary build_interferometer(const InterferometerSpec& spec, const PhaseValues& phases);

/// Convenience for single-phase Mach-Zehnder specs: unknown phase `phi` and
/// feedback `psi` on the primary phase mode (feedback ignored when the interferometer
/// declares no feedback slot and psi == 0).
ModeUnitary build_interferometer(const InterferometerSpec& spec, double phi, double psi = 0.0);

/// Probe state of an interferometer: the first splitter applied to `input`.
StateVector probe_state(const InterferometerSpec& spec, const FockState& input);

}  // namespace multiport

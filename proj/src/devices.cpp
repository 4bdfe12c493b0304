#include "multiport/devices.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace multiport {

ModeUnitary tritter() {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    CMatrix m(3, 3);
    m << 1.0, w, w,
         w, 1.0, w,
         w, w, 1.0;
    return ModeUnitary(m / std::sqrt(3.0));
}

ModeUnitary quarter() {
    CMatrix m(4, 4);
    m << 1.0, -1.0, -1.0, -1.0,
         -1.0, 1.0, -1.0, -1.0,
         -1.0, -1.0, 1.0, -1.0,
         -1.0, -1.0, -1.0, 1.0;
    return ModeUnitary(m * 0.5);
}

ModeUnitary phase_shifter(std::size_t mode_count, std::size_t mode, double phase) {
    if (mode >= mode_count) throw std::out_of_range("phase shifter mode index out of range");
    const auto n = static_cast<Eigen::Index>(mode_count);
    CMatrix m = CMatrix::Identity(n, n);
    m(static_cast<Eigen::Index>(mode), static_cast<Eigen::Index>(mode)) = std::polar(1.0, -phase);
    return ModeUnitary(m);
}

ModeUnitary compose(const ModeUnitary& first, const ModeUnitary& then) {
    if (first.dimension() != then.dimension())
        throw std::invalid_argument("cannot compose unitaries of different dimension");
    return ModeUnitary(then.matrix() * first.matrix());
}

std::string to_string(SplitterKind kind) {
    return kind == SplitterKind::tritter ? "tritter" : "quarter";
}

SplitterKind parse_splitter_kind(const std::string& text) {
    if (text == "tritter") return SplitterKind::tritter;
    if (text == "quarter") return SplitterKind::quarter;
    throw std::invalid_argument("unknown device '" + text + "' (expected tritter or quarter)");
}

std::size_t mode_count(SplitterKind kind) { return kind == SplitterKind::tritter ? 3 : 4; }

ModeUnitary splitter(SplitterKind kind) {
    return kind == SplitterKind::tritter ? tritter() : quarter();
}

InterferometerSpec::InterferometerSpec(SplitterKind kind, std::vector<PhaseSlot> slots)
    : kind_(kind), slots_(std::move(slots)), splitter_(multiport::splitter(kind)) {
    std::set<PhaseSlot> seen;
    for (const PhaseSlot& slot : slots_) {
        if (slot.mode >= mode_count())
            throw std::invalid_argument("phase mode " + std::to_string(slot.mode + 1) +
                                        " out of range for a " + to_string(kind_));
        if (!seen.insert(slot).second)
            throw std::invalid_argument("phase mode " + std::to_string(slot.mode + 1) +
                                        " listed twice with the same role");
    }
}

InterferometerSpec InterferometerSpec::mach_zehnder(SplitterKind kind) {
    const std::size_t last = multiport::mode_count(kind) - 1;
    return InterferometerSpec(kind, {{last, PhaseRole::unknown}, {last, PhaseRole::feedback}});
}

InterferometerSpec InterferometerSpec::multi_phase(SplitterKind kind,
                                                   const std::vector<std::size_t>& modes) {
    std::vector<PhaseSlot> slots;
    slots.reserve(modes.size());
    for (std::size_t mode : modes) slots.push_back({mode, PhaseRole::unknown});
    return InterferometerSpec(kind, std::move(slots));
}

std::vector<std::size_t> InterferometerSpec::unknown_modes() const {
    std::vector<std::size_t> modes;
    for (const PhaseSlot& slot : slots_)
        if (slot.role == PhaseRole::unknown) modes.push_back(slot.mode);
    return modes;
}

std::size_t InterferometerSpec::primary_phase_mode() const {
    const auto modes = unknown_modes();
    if (modes.size() != 1)
        throw std::invalid_argument("interferometer does not have exactly one unknown phase");
    return modes.front();
}

ModeUnitary build_interferometer(const InterferometerSpec& spec, const PhaseValues& phases) {
    const std::size_t m = spec.mode_count();
    std::vector<double> total(m, 0.0);
    for (const PhaseSlot& slot : spec.slots()) {
        const auto it = phases.find(slot);
        if (it == phases.end())
            throw std::invalid_argument("missing phase value for mode " + std::to_string(slot.mode + 1));
        total[slot.mode] += it->second;
    }
    for (const auto& [slot, value] : phases) {
        (void)value;
        bool declared = false;
        for (const PhaseSlot& s : spec.slots()) declared = declared || s == slot;
        if (!declared)
            throw std::invalid_argument("phase given for undeclared slot on mode " + std::to_string(slot.mode + 1));
    }
    CVector diagonal(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) diagonal(static_cast<Eigen::Index>(k)) = std::polar(1.0, -total[k]);
    const CMatrix& u = spec.splitter().matrix();
    return ModeUnitary(u * diagonal.asDiagonal() * u);
}

ModeUnitary build_interferometer(const InterferometerSpec& spec, double phi, double psi) {
    const std::size_t mode = spec.primary_phase_mode();
    PhaseValues phases;
    bool has_feedback = false;
    for (const PhaseSlot& slot : spec.slots()) {
        if (slot.role == PhaseRole::unknown) phases[slot] = phi;
        if (slot.role == PhaseRole::feedback) {
            if (slot.mode != mode) throw std::invalid_argument("feedback slot is not on the unknown-phase mode");
            phases[slot] = psi;
            has_feedback = true;
        }
    }
    if (!has_feedback && psi != 0.0)
        throw std::invalid_argument("interferometer has no feedback phase slot");
    return build_interferometer(spec, phases);
}

StateVector probe_state(const InterferometerSpec& spec, const FockState& input) {
    if (input.mode_count() != spec.mode_count())
        throw std::invalid_argument("input state has the wrong number of modes for a " + to_string(spec.kind()));
    return evolve(spec.splitter(), StateVector::fock(input));
}

}  // namespace multiport

#pragma once

#include "ryd/gates.hpp"

#include <string>
#include <variant>
#include <vector>

namespace ryd {

/// Static line of n sites: entangling gates only between neighbouring
/// positions, and at most one entangling gate per layer.
struct StaticLine {
    int length = 0;
};

/// Mobile tweezers: any parallel pairing, connectivity changes cost one MOVE
/// layer of fixed duration tau.
struct Reconfigurable {
    double tau_move_us = 100.0;
};

using Modality = std::variant<StaticLine, Reconfigurable>;

enum class ModalityKind { Static, Reconfigurable };

struct Layer {
    std::vector<NativeOp> ops;
    double wall_time_us = 0.0;
};

struct ScheduledCircuit {
    int n_qubits = 0;
    std::vector<Layer> layers;

    double total_wall_time_us() const;
    std::size_t gate_count() const;
    std::size_t entangling_count() const;
};

/// Greedy as-soon-as-possible layering of a lowered native-op sequence.
/// MOVE markers become dedicated whole-circuit barrier layers of duration
/// tau. Within a layer target sets are disjoint; in static mode entangling
/// ops are serialized and must act on adjacent line positions. Idle qubits
/// up to n_qubits-1 are carried along (they still decohere during layers).
ScheduledCircuit schedule(int n_qubits, const std::vector<NativeOp>& ops, const Modality& modality,
                          const DeviceParams& params);

/// Canonical JSON form (layers -> ops -> {kind, targets, angle, duration}).
std::string to_json(const ScheduledCircuit& sc);
ScheduledCircuit scheduled_circuit_from_json(const std::string& text, const DeviceParams& params);

} // namespace ryd

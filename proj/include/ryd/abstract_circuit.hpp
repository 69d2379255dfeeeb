#pragma once

#include "ryd/density_matrix.hpp"

#include <array>
#include <vector>

namespace ryd {

/// Gate vocabulary of the benchmark generators before lowering to the native
/// set. All kinds are exactly unitary; SU4 carries an explicit matrix.
enum class AbstractKind {
    SU4,  // 4x4 special unitary on two qubits
    H,
    X,
    CZ,
    CNOT, // targets = {control, target}
    CCZ,
    CkZ,  // controlled-Z over all listed qubits (phase -1 on |1...1>)
    RZ,
    RX,
    RY,
};

struct AbstractGate {
    AbstractKind kind;
    std::vector<int> targets;
    double angle = 0.0;                  // RZ/RX/RY only
    std::array<cplx, 16> su4{};          // SU4 only, row-major

    static AbstractGate su4_gate(const std::array<cplx, 16>& u, int a, int b);
    static AbstractGate simple(AbstractKind kind, std::vector<int> targets);
    static AbstractGate rotation(AbstractKind kind, double angle, int q);
};

struct AbstractCircuit {
    int n_qubits = 0;
    std::vector<AbstractGate> gates;
};

} // namespace ryd

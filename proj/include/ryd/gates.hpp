#pragma once

#include "ryd/density_matrix.hpp"
#include "ryd/noise.hpp"

#include <string>
#include <vector>

namespace ryd {

enum class NativeKind {
    RX,
    RY,
    RZ_VIRTUAL,
    CZ_ARP,
    CZ_LP,
    CCZ_ARP,
    MOVE,
    INIT,
};

enum class CzProtocol { ARP, LP };

const char* to_string(NativeKind kind);
NativeKind native_kind_from_string(const std::string& s);

/// One primitive device action. Rotations carry a dense 2x2 matrix; the
/// entangling gates and virtual z are diagonal; MOVE/INIT carry no matrix.
struct NativeOp {
    NativeKind kind;
    std::vector<int> targets;
    double angle = 0.0;        // RX/RY/RZ_VIRTUAL only
    double duration_us = 0.0;
    std::vector<cplx> dense;   // 2x2 row-major for RX/RY
    std::vector<cplx> diag;    // diagonal entries for RZ_VIRTUAL/CZ/CCZ

    bool is_gate() const { return kind != NativeKind::MOVE && kind != NativeKind::INIT; }
    bool is_entangling() const {
        return kind == NativeKind::CZ_ARP || kind == NativeKind::CZ_LP || kind == NativeKind::CCZ_ARP;
    }
};

/// Non-unitary CZ operators. Diagonals hold the fixed device constants:
///   ARP: (1, 0.9990 e^{0.9906 i pi}, ..., 0.9986 e^{1.000 i pi})
///   LP:  (1, 0.999320 e^{-0.013 i pi}, ..., 0.999458 e^{0.985 i pi})
NativeOp cz_native(CzProtocol protocol, const DeviceParams& params, int q0, int q1);

/// Non-unitary CCZ operator; diagonal entries depend only on the Hamming
/// weight of the basis state: 1, 0.9981 e^{0.9845 i pi}, 0.9973 e^{0.9934 i pi},
/// 0.9963 e^{0.9911 i pi} for weights 0..3.
NativeOp ccz_native(const DeviceParams& params, int q0, int q1, int q2);

/// Physical rotation about x or y. Angle is normalized to (-2pi, 2pi];
/// duration is |theta| / (2 pi Omega) microseconds.
NativeOp rotation_x(double theta, const DeviceParams& params, int q);
NativeOp rotation_y(double theta, const DeviceParams& params, int q);

/// Virtual frame rotation diag(e^{-i theta/2}, e^{i theta/2}), zero duration.
NativeOp rz_virtual(double theta, int q);

NativeOp move_marker(double tau_us);

/// Ideal unitary the native operator is referenced against:
///   CZ_LP   -> diag(1, 1, 1, -1)
///   CZ_ARP  -> diag(1, -1, -1, -1)
///   CCZ_ARP -> diag(1, -1, -1, -1, -1, -1, -1, -1)
std::vector<cplx> ideal_reference(NativeKind kind);

/// Average gate fidelity of a (possibly trace-non-increasing) operator M
/// against a unitary reference U: F = (Tr(M^dag M) + |Tr(U^dag M)|^2) / (d(d+1)).
double average_gate_fidelity(std::span<const cplx> m, std::span<const cplx> u, std::size_t d);

struct GateFidelityReport {
    NativeKind kind;
    double fidelity;
    std::string reference;
};

/// Fidelities of the three native entangling operators against their ideal
/// references.
std::vector<GateFidelityReport> native_fidelity_report(const DeviceParams& params);

/// 2x2 rotation matrices (unitary, exact).
std::array<cplx, 4> rx_matrix(double theta);
std::array<cplx, 4> ry_matrix(double theta);

} // namespace ryd

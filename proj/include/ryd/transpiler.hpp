#pragma once

#include "ryd/gates.hpp"
#include "ryd/noise.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ryd {

using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

Mat2 mat2_mul(const Mat2& a, const Mat2& b);

/// Haar-distributed SU(4): complex Ginibre, QR with R-diagonal phase
/// normalization, then the global phase fixed to unit determinant.
Mat4 haar_su4(std::mt19937_64& rng);

/// Cartan (KAK) data: u = phase * (k1a (x) k1b) * exp(i(a XX + b YY + c ZZ))
/// * (k2a (x) k2b). Coordinates are not reduced to the Weyl chamber; any
/// consistent representative is fine for synthesis.
struct KakDecomposition {
    Mat2 k1a, k1b, k2a, k2b;
    double a = 0.0, b = 0.0, c = 0.0;
    cplx phase{1.0, 0.0};
};

/// Throws std::runtime_error if the joint diagonalization fails for every
/// perturbation retry (does not happen for unitary input in practice).
KakDecomposition kak_decompose(const Mat4& u);

/// exp(i (a XX + b YY + c ZZ)), built from its Bell-basis spectral form.
Mat4 canonical_gate(double a, double b, double c);

/// Collects lowered native ops. Single-qubit content accumulates as pending
/// 2x2 unitaries that are flushed — as one virtual z when diagonal, else as
/// at most three physical x/y rotations in Ry*Rx*Ry order — right before an
/// entangling gate touches the qubit.
class NativeEmitter {
  public:
    NativeEmitter(int n_qubits, const DeviceParams& params, CzProtocol protocol);

    int n_qubits() const { return n_; }
    CzProtocol protocol() const { return protocol_; }

    /// Compose m after everything currently pending on q.
    void local(int q, const Mat2& m);
    void h(int q);
    void x(int q);
    void rx(int q, double theta);
    void ry(int q, double theta);
    void rz(int q, double theta);

    /// Logical CZ = diag(1,1,1,-1). LP emits the native op directly; ARP
    /// emits the native op and pushes the Z (x) Z frame onto the pendings.
    void cz(int q0, int q1);
    /// Logical CCZ = diag(1,...,1,-1) via Rx(pi) conjugation of the native
    /// CCZ on all three qubits.
    void ccz(int q0, int q1, int q2);

    void cnot(int control, int target);
    void swap(int q0, int q1);
    /// use_ccz: H-conjugated logical CCZ. Otherwise the 6-CNOT construction
    /// with virtual T phases.
    void toffoli(int c1, int c2, int target, bool use_ccz);

    void move();

    void flush(int q);
    void flush_all();
    /// Flushes everything and returns the op stream.
    std::vector<NativeOp> take();

  private:
    int n_;
    DeviceParams params_;
    CzProtocol protocol_;
    std::vector<Mat2> pending_;
    std::vector<bool> dirty_;
    std::vector<NativeOp> ops_;
};

/// Exact synthesis of an SU(4) as three logical CZs plus single-qubit
/// rotations, emitted onto (qa, qb). Reconstruction error is below 1e-9.
void decompose_su4(const Mat4& u, NativeEmitter& em, int qa, int qb);

/// Euler angles with U = phase * Ry(alpha) Rx(beta) Ry(gamma); angles in
/// (-pi, pi].
struct EulerYxy {
    double alpha, beta, gamma;
};
EulerYxy euler_yxy(const Mat2& u);

/// Adjacent-transposition sequence taking the line order `current`
/// (position -> qubit id) into `desired`. Entry i means "swap positions
/// (i, i+1)". Length equals the inversion count of the relative permutation.
std::vector<int> route_static(const std::vector<int>& current, const std::vector<int>& desired);

/// C5Z over six data qubits using three |0>-initialized ancillas: three
/// Toffolis compute pairwise ANDs, one logical CCZ in the middle, three
/// Toffolis uncompute. Seven three-qubit stages, each preceded by a MOVE
/// marker when with_moves is set. use_ccz selects the Toffoli realization.
void multi_controlled_z(NativeEmitter& em, std::span<const int> data, std::span<const int> ancilla,
                        bool use_ccz, bool with_moves);

/// Standalone macro sequences (mainly for verification).
std::vector<NativeOp> macro_swap(const DeviceParams& params, CzProtocol protocol);
std::vector<NativeOp> macro_cnot(const DeviceParams& params, CzProtocol protocol);
std::vector<NativeOp> macro_toffoli(const DeviceParams& params, CzProtocol protocol, bool use_ccz);

} // namespace ryd

#include "ryd/transpiler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ryd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;

const Mat2 kIdentity2 = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
const Mat2 kHadamard = {cplx{kInvSqrt2, 0}, cplx{kInvSqrt2, 0}, cplx{kInvSqrt2, 0},
                        cplx{-kInvSqrt2, 0}};
const Mat2 kPauliX = {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
const Mat2 kPauliZ = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
const Mat2 kSGate = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 1}};

Mat2 exp_ix(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {cplx{c, 0}, cplx{0, s}, cplx{0, s}, cplx{c, 0}};
}

Mat2 exp_iz(double theta) {
    return {std::polar(1.0, theta), cplx{0, 0}, cplx{0, 0}, std::polar(1.0, -theta)};
}

Mat2 rz_matrix(double theta) { return exp_iz(-theta / 2); }

bool near_identity(const Mat2& m) {
    // Up to global phase.
    const double n01 = std::abs(m[1]), n10 = std::abs(m[2]);
    if (n01 > 1e-12 || n10 > 1e-12) return false;
    return std::abs(m[0] - m[3]) < 1e-12;
}

bool near_diagonal(const Mat2& m) { return std::abs(m[1]) < 1e-12 && std::abs(m[2]) < 1e-12; }

} // namespace

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

EulerYxy euler_yxy(const Mat2& u) {
    // Normalize to SU(2), then with p = (alpha+gamma)/2, m = (gamma-alpha)/2:
    //   u00 = cos(b/2)cos(p) - i sin(b/2)sin(m)
    //   u10 = cos(b/2)sin(p) - i sin(b/2)cos(m)
    const cplx det = u[0] * u[3] - u[1] * u[2];
    const cplx scale = cplx{1.0, 0.0} / std::sqrt(det);
    const cplx u00 = u[0] * scale, u10 = u[2] * scale;
    const double cb = std::hypot(u00.real(), u10.real());
    const double sb = std::hypot(u00.imag(), u10.imag());
    const double beta = 2.0 * std::atan2(sb, cb);
    const double p = (cb > 1e-15) ? std::atan2(u10.real(), u00.real()) : 0.0;
    const double m = (sb > 1e-15) ? std::atan2(-u00.imag(), -u10.imag()) : 0.0;
    auto wrap = [](double t) {
        t = std::remainder(t, 2.0 * kPi);
        if (t <= -kPi) t += 2.0 * kPi;
        return t;
    };
    return EulerYxy{wrap(p - m), wrap(beta), wrap(p + m)};
}

NativeEmitter::NativeEmitter(int n_qubits, const DeviceParams& params, CzProtocol protocol)
    : n_(n_qubits), params_(params), protocol_(protocol),
      pending_(static_cast<std::size_t>(n_qubits), kIdentity2),
      dirty_(static_cast<std::size_t>(n_qubits), false) {
    if (n_qubits < 1 || n_qubits > DensityMatrix::kMaxQubits)
        throw std::invalid_argument("NativeEmitter: n_qubits out of range");
}

void NativeEmitter::local(int q, const Mat2& m) {
    if (q < 0 || q >= n_) throw std::invalid_argument("NativeEmitter: qubit out of range");
    pending_[q] = mat2_mul(m, pending_[q]);
    dirty_[q] = true;
}

void NativeEmitter::h(int q) { local(q, kHadamard); }
void NativeEmitter::x(int q) { local(q, kPauliX); }
void NativeEmitter::rx(int q, double theta) {
    const auto m = rx_matrix(theta);
    local(q, {m[0], m[1], m[2], m[3]});
}
void NativeEmitter::ry(int q, double theta) {
    const auto m = ry_matrix(theta);
    local(q, {m[0], m[1], m[2], m[3]});
}
void NativeEmitter::rz(int q, double theta) { local(q, rz_matrix(theta)); }

void NativeEmitter::flush(int q) {
    if (!dirty_[q]) return;
    const Mat2 u = pending_[q];
    pending_[q] = kIdentity2;
    dirty_[q] = false;
    if (near_identity(u)) return;
    if (near_diagonal(u)) {
        const double theta = std::arg(u[3] / u[0]);
        if (std::abs(theta) > 1e-12) ops_.push_back(rz_virtual(theta, q));
        return;
    }
    const EulerYxy e = euler_yxy(u);
    if (std::abs(e.gamma) > 1e-12) ops_.push_back(rotation_y(e.gamma, params_, q));
    if (std::abs(e.beta) > 1e-12) ops_.push_back(rotation_x(e.beta, params_, q));
    if (std::abs(e.alpha) > 1e-12) ops_.push_back(rotation_y(e.alpha, params_, q));
}

void NativeEmitter::flush_all() {
    for (int q = 0; q < n_; ++q) flush(q);
}

void NativeEmitter::cz(int q0, int q1) {
    flush(q0);
    flush(q1);
    ops_.push_back(cz_native(protocol_, params_, q0, q1));
    if (protocol_ == CzProtocol::ARP) {
        // Native ARP targets diag(1,-1,-1,-1); the Z(x)Z frame restores the
        // textbook CZ.
        local(q0, kPauliZ);
        local(q1, kPauliZ);
    }
}

void NativeEmitter::ccz(int q0, int q1, int q2) {
    for (int q : {q0, q1, q2}) local(q, {cplx{0, 0}, cplx{0, -1}, cplx{0, -1}, cplx{0, 0}});
    flush(q0);
    flush(q1);
    flush(q2);
    ops_.push_back(ccz_native(params_, q0, q1, q2));
    for (int q : {q0, q1, q2}) local(q, {cplx{0, 0}, cplx{0, -1}, cplx{0, -1}, cplx{0, 0}});
}

void NativeEmitter::cnot(int control, int target) {
    h(target);
    cz(control, target);
    h(target);
}

void NativeEmitter::swap(int q0, int q1) {
    cnot(q0, q1);
    cnot(q1, q0);
    cnot(q0, q1);
}

void NativeEmitter::toffoli(int c1, int c2, int target, bool use_ccz) {
    if (use_ccz) {
        h(target);
        ccz(c1, c2, target);
        h(target);
        return;
    }
    // Six-CNOT construction; the T phases are virtual z rotations.
    const Mat2 t_gate = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, kPi / 4)};
    const Mat2 t_dag = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, -kPi / 4)};
    h(target);
    cnot(c2, target);
    local(target, t_dag);
    cnot(c1, target);
    local(target, t_gate);
    cnot(c2, target);
    local(target, t_dag);
    cnot(c1, target);
    local(target, t_gate);
    h(target);
    local(c2, t_gate);
    cnot(c1, c2);
    local(c1, t_gate);
    local(c2, t_dag);
    cnot(c1, c2);
}

void NativeEmitter::move() { ops_.push_back(move_marker(0.0)); }

std::vector<NativeOp> NativeEmitter::take() {
    flush_all();
    return std::move(ops_);
}

void decompose_su4(const Mat4& u, NativeEmitter& em, int qa, int qb) {
    const KakDecomposition kak = kak_decompose(u);

    // Exact 3-CZ realization of exp(i(a XX + b YY + c ZZ)), derived from
    //   exp(i(a XX + c ZZ)) = CX_ab (e^{iaX} (x) e^{icZ}) CX_ab
    //   exp(i b YY)        = (S(x)S) CX_ab e^{ibX_a} CX_ab (S(x)S)^dag
    // after fusing the inner CX pair into one CZ plus z frames.
    em.local(qa, kak.k2a);
    em.local(qb, kak.k2b);

    em.h(qb);
    em.cz(qa, qb);
    em.h(qb);

    em.local(qa, exp_ix(kak.a));
    em.local(qb, exp_iz(kak.c));

    em.cz(qa, qb);

    em.local(qa, mat2_mul(exp_ix(kak.b), exp_iz(kPi / 2)));
    em.local(qb, exp_iz(kPi / 4));

    em.h(qb);
    em.cz(qa, qb);
    em.h(qb);

    em.local(qa, mat2_mul(kak.k1a, kSGate));
    em.local(qb, mat2_mul(kak.k1b, kSGate));
}

std::vector<int> route_static(const std::vector<int>& current, const std::vector<int>& desired) {
    const std::size_t n = current.size();
    if (desired.size() != n) throw std::invalid_argument("route_static: size mismatch");
    std::vector<int> target_pos(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (desired[i] < 0 || static_cast<std::size_t>(desired[i]) >= n || target_pos[desired[i]] != -1)
            throw std::invalid_argument("route_static: desired is not a permutation");
        target_pos[desired[i]] = static_cast<int>(i);
    }
    std::vector<int> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (current[i] < 0 || static_cast<std::size_t>(current[i]) >= n)
            throw std::invalid_argument("route_static: current is not a permutation");
        p[i] = target_pos[current[i]];
    }
    // Bubble sort; swap count equals the inversion count of p.
    std::vector<int> swaps;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (p[j] > p[j + 1]) {
                std::swap(p[j], p[j + 1]);
                swaps.push_back(static_cast<int>(j));
                changed = true;
            }
        }
    }
    return swaps;
}

void multi_controlled_z(NativeEmitter& em, std::span<const int> data, std::span<const int> ancilla,
                        bool use_ccz, bool with_moves) {
    if (data.size() != 6 || ancilla.size() != 3)
        throw std::invalid_argument("multi_controlled_z: needs 6 data and 3 ancilla qubits");
    auto stage = [&](int c1, int c2, int t) {
        if (with_moves) em.move();
        em.toffoli(c1, c2, t, use_ccz);
    };
    stage(data[0], data[1], ancilla[0]);
    stage(data[2], data[3], ancilla[1]);
    stage(data[4], data[5], ancilla[2]);
    if (with_moves) em.move();
    if (use_ccz) {
        em.ccz(ancilla[0], ancilla[1], ancilla[2]);
    } else {
        em.h(ancilla[2]);
        em.toffoli(ancilla[0], ancilla[1], ancilla[2], false);
        em.h(ancilla[2]);
    }
    stage(data[4], data[5], ancilla[2]);
    stage(data[2], data[3], ancilla[1]);
    stage(data[0], data[1], ancilla[0]);
}

std::vector<NativeOp> macro_swap(const DeviceParams& params, CzProtocol protocol) {
    NativeEmitter em(2, params, protocol);
    em.swap(0, 1);
    return em.take();
}

std::vector<NativeOp> macro_cnot(const DeviceParams& params, CzProtocol protocol) {
    NativeEmitter em(2, params, protocol);
    em.cnot(0, 1);
    return em.take();
}

std::vector<NativeOp> macro_toffoli(const DeviceParams& params, CzProtocol protocol, bool use_ccz) {
    NativeEmitter em(3, params, protocol);
    em.toffoli(0, 1, 2, use_ccz);
    return em.take();
}

} // namespace ryd

#include "ryd/pure_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ryd {

namespace {

inline std::size_t insert_zero_bit(std::size_t i, std::size_t bit) {
    const std::size_t low = i & (bit - 1);
    return ((i & ~(bit - 1)) << 1) | low;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

} // namespace

AbstractGate AbstractGate::su4_gate(const std::array<cplx, 16>& u, int a, int b) {
    // Unitarity within 1e-12 and unit determinant are part of the contract.
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            cplx acc{0.0, 0.0};
            for (int s = 0; s < 4; ++s) acc += std::conj(u[s * 4 + r]) * u[s * 4 + c];
            const cplx want = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(acc - want) > 1e-12)
                throw std::invalid_argument("AbstractGate: SU4 matrix is not unitary");
        }
    cplx det = u[0] * (u[5] * (u[10] * u[15] - u[11] * u[14]) - u[6] * (u[9] * u[15] - u[11] * u[13]) +
                       u[7] * (u[9] * u[14] - u[10] * u[13]));
    det -= u[1] * (u[4] * (u[10] * u[15] - u[11] * u[14]) - u[6] * (u[8] * u[15] - u[11] * u[12]) +
                   u[7] * (u[8] * u[14] - u[10] * u[12]));
    det += u[2] * (u[4] * (u[9] * u[15] - u[11] * u[13]) - u[5] * (u[8] * u[15] - u[11] * u[12]) +
                   u[7] * (u[8] * u[13] - u[9] * u[12]));
    det -= u[3] * (u[4] * (u[9] * u[14] - u[10] * u[13]) - u[5] * (u[8] * u[14] - u[10] * u[12]) +
                   u[6] * (u[8] * u[13] - u[9] * u[12]));
    if (std::abs(det - cplx{1.0, 0.0}) > 1e-10)
        throw std::invalid_argument("AbstractGate: SU4 determinant is not 1");
    AbstractGate g;
    g.kind = AbstractKind::SU4;
    g.targets = {a, b};
    g.su4 = u;
    return g;
}

AbstractGate AbstractGate::simple(AbstractKind kind, std::vector<int> targets) {
    AbstractGate g;
    g.kind = kind;
    g.targets = std::move(targets);
    return g;
}

AbstractGate AbstractGate::rotation(AbstractKind kind, double angle, int q) {
    AbstractGate g;
    g.kind = kind;
    g.targets = {q};
    g.angle = angle;
    return g;
}

PureState::PureState(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > DensityMatrix::kMaxQubits)
        throw std::invalid_argument("PureState: n_qubits out of range");
    amps_.assign(std::size_t{1} << n_, cplx{0.0, 0.0});
    amps_[0] = cplx{1.0, 0.0};
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto& z : amps_) s += std::norm(z);
    return std::sqrt(s);
}

void PureState::apply_1q(const cplx m[4], int target) {
    const std::size_t bit = mask(target);
    const std::size_t half = amps_.size() / 2;
    for (std::size_t h = 0; h < half; ++h) {
        const std::size_t i0 = insert_zero_bit(h, bit);
        const std::size_t i1 = i0 | bit;
        const cplx x = amps_[i0], y = amps_[i1];
        amps_[i0] = m[0] * x + m[1] * y;
        amps_[i1] = m[2] * x + m[3] * y;
    }
}

void PureState::apply_diagonal(std::span<const cplx> diag, std::span<const int> targets) {
    const std::size_t k = targets.size();
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::size_t sub = 0;
        for (std::size_t t = 0; t < k; ++t)
            sub = (sub << 1) | ((i >> (n_ - 1 - targets[t])) & 1u);
        amps_[i] *= diag[sub];
    }
}

void PureState::apply_unitary(std::span<const cplx> m, std::span<const int> targets) {
    const std::size_t k = targets.size();
    const std::size_t kd = std::size_t{1} << k;
    if (m.size() != kd * kd) throw std::invalid_argument("apply_unitary: size mismatch");
    std::vector<std::size_t> bits(k);
    for (std::size_t t = 0; t < k; ++t) bits[t] = mask(targets[t]);
    std::vector<std::size_t> sorted_bits = bits;
    std::sort(sorted_bits.begin(), sorted_bits.end());
    std::vector<std::size_t> offset(kd);
    for (std::size_t s = 0; s < kd; ++s) {
        std::size_t off = 0;
        for (std::size_t t = 0; t < k; ++t)
            if ((s >> (k - 1 - t)) & 1u) off |= bits[t];
        offset[s] = off;
    }
    const std::size_t rest = amps_.size() >> k;
    std::vector<cplx> g(kd), out(kd);
    for (std::size_t h = 0; h < rest; ++h) {
        std::size_t base = h;
        for (std::size_t b : sorted_bits) base = insert_zero_bit(base, b);
        for (std::size_t s = 0; s < kd; ++s) g[s] = amps_[base | offset[s]];
        for (std::size_t r = 0; r < kd; ++r) {
            cplx acc{0.0, 0.0};
            for (std::size_t s = 0; s < kd; ++s) acc += m[r * kd + s] * g[s];
            out[r] = acc;
        }
        for (std::size_t s = 0; s < kd; ++s) amps_[base | offset[s]] = out[s];
    }
}

OutcomeDistribution PureState::outcome_distribution(std::span<const int> measured) const {
    const std::size_t k = measured.size();
    OutcomeDistribution dist;
    dist.qubit_subset.assign(measured.begin(), measured.end());
    dist.probabilities.assign(std::size_t{1} << k, 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::size_t sub = 0;
        for (std::size_t t = 0; t < k; ++t)
            sub = (sub << 1) | ((i >> (n_ - 1 - measured[t])) & 1u);
        dist.probabilities[sub] += std::norm(amps_[i]);
    }
    return dist;
}

std::vector<double> PureState::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

PureState run_ideal_state(const AbstractCircuit& circuit) {
    PureState psi(circuit.n_qubits);
    for (const auto& g : circuit.gates) {
        for (int q : g.targets)
            if (q < 0 || q >= circuit.n_qubits)
                throw std::invalid_argument("run_ideal: target out of range");
        switch (g.kind) {
            case AbstractKind::SU4: {
                psi.apply_unitary(std::span<const cplx>(g.su4.data(), 16), g.targets);
                break;
            }
            case AbstractKind::H: {
                const cplx m[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
                psi.apply_1q(m, g.targets[0]);
                break;
            }
            case AbstractKind::X: {
                const cplx m[4] = {0.0, 1.0, 1.0, 0.0};
                psi.apply_1q(m, g.targets[0]);
                break;
            }
            case AbstractKind::CZ: {
                const cplx d[4] = {1.0, 1.0, 1.0, -1.0};
                psi.apply_diagonal(std::span<const cplx>(d, 4), g.targets);
                break;
            }
            case AbstractKind::CNOT: {
                const cplx m[16] = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
                psi.apply_unitary(std::span<const cplx>(m, 16), g.targets);
                break;
            }
            case AbstractKind::CCZ: {
                std::vector<cplx> d(8, cplx{1.0, 0.0});
                d[7] = cplx{-1.0, 0.0};
                psi.apply_diagonal(d, g.targets);
                break;
            }
            case AbstractKind::CkZ: {
                std::vector<cplx> d(std::size_t{1} << g.targets.size(), cplx{1.0, 0.0});
                d.back() = cplx{-1.0, 0.0};
                psi.apply_diagonal(d, g.targets);
                break;
            }
            case AbstractKind::RZ: {
                const cplx d[2] = {std::polar(1.0, -g.angle / 2), std::polar(1.0, g.angle / 2)};
                psi.apply_diagonal(std::span<const cplx>(d, 2), g.targets);
                break;
            }
            case AbstractKind::RX: {
                const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
                const cplx m[4] = {c, cplx{0.0, -s}, cplx{0.0, -s}, c};
                psi.apply_1q(m, g.targets[0]);
                break;
            }
            case AbstractKind::RY: {
                const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
                const cplx m[4] = {c, -s, s, c};
                psi.apply_1q(m, g.targets[0]);
                break;
            }
        }
    }
    return psi;
}

OutcomeDistribution run_ideal(const AbstractCircuit& circuit) {
    const PureState psi = run_ideal_state(circuit);
    std::vector<int> all(circuit.n_qubits);
    for (int q = 0; q < circuit.n_qubits; ++q) all[q] = q;
    return psi.outcome_distribution(all);
}

} // namespace ryd

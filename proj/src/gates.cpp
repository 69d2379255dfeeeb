#include "ryd/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ryd {

namespace {

constexpr double kPi = std::numbers::pi;

double normalize_angle(double theta) {
    // Reduce modulo 4*pi into (-2*pi, 2*pi].
    const double period = 4.0 * kPi;
    theta = std::fmod(theta, period);
    if (theta > 2.0 * kPi) theta -= period;
    if (theta <= -2.0 * kPi) theta += period;
    return theta;
}

} // namespace

const char* to_string(NativeKind kind) {
    switch (kind) {
        case NativeKind::RX: return "RX";
        case NativeKind::RY: return "RY";
        case NativeKind::RZ_VIRTUAL: return "RZ_VIRTUAL";
        case NativeKind::CZ_ARP: return "CZ_ARP";
        case NativeKind::CZ_LP: return "CZ_LP";
        case NativeKind::CCZ_ARP: return "CCZ_ARP";
        case NativeKind::MOVE: return "MOVE";
        case NativeKind::INIT: return "INIT";
    }
    return "?";
}

NativeKind native_kind_from_string(const std::string& s) {
    if (s == "RX") return NativeKind::RX;
    if (s == "RY") return NativeKind::RY;
    if (s == "RZ_VIRTUAL") return NativeKind::RZ_VIRTUAL;
    if (s == "CZ_ARP") return NativeKind::CZ_ARP;
    if (s == "CZ_LP") return NativeKind::CZ_LP;
    if (s == "CCZ_ARP") return NativeKind::CCZ_ARP;
    if (s == "MOVE") return NativeKind::MOVE;
    if (s == "INIT") return NativeKind::INIT;
    throw std::invalid_argument("unknown native op kind: " + s);
}

NativeOp cz_native(CzProtocol protocol, const DeviceParams& params, int q0, int q1) {
    NativeOp op;
    op.targets = {q0, q1};
    op.duration_us = params.t_cz_us;
    if (protocol == CzProtocol::ARP) {
        op.kind = NativeKind::CZ_ARP;
        const cplx w1 = std::polar(0.9990, 0.9906 * kPi);
        const cplx w2 = std::polar(0.9986, 1.000 * kPi);
        op.diag = {cplx{1.0, 0.0}, w1, w1, w2};
    } else {
        op.kind = NativeKind::CZ_LP;
        const cplx w1 = std::polar(0.999320, -0.013 * kPi);
        const cplx w2 = std::polar(0.999458, 0.985 * kPi);
        op.diag = {cplx{1.0, 0.0}, w1, w1, w2};
    }
    return op;
}

NativeOp ccz_native(const DeviceParams& params, int q0, int q1, int q2) {
    NativeOp op;
    op.kind = NativeKind::CCZ_ARP;
    op.targets = {q0, q1, q2};
    op.duration_us = params.t_ccz_us;
    const cplx w1 = std::polar(0.9981, 0.9845 * kPi);
    const cplx w2 = std::polar(0.9973, 0.9934 * kPi);
    const cplx w3 = std::polar(0.9963, 0.9911 * kPi);
    op.diag.assign(8, cplx{1.0, 0.0});
    for (int i = 1; i < 8; ++i) {
        const int w = ((i >> 2) & 1) + ((i >> 1) & 1) + (i & 1);
        op.diag[i] = (w == 1) ? w1 : (w == 2) ? w2 : w3;
    }
    return op;
}

std::array<cplx, 4> rx_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {cplx{c, 0.0}, cplx{0.0, -s}, cplx{0.0, -s}, cplx{c, 0.0}};
}

std::array<cplx, 4> ry_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {cplx{c, 0.0}, cplx{-s, 0.0}, cplx{s, 0.0}, cplx{c, 0.0}};
}

namespace {

NativeOp make_rotation(NativeKind kind, double theta, const DeviceParams& params, int q) {
    NativeOp op;
    op.kind = kind;
    op.targets = {q};
    op.angle = normalize_angle(theta);
    op.duration_us = std::abs(op.angle) / (2.0 * kPi * params.rabi_mhz);
    const auto m = (kind == NativeKind::RX) ? rx_matrix(op.angle) : ry_matrix(op.angle);
    op.dense.assign(m.begin(), m.end());
    return op;
}

} // namespace

NativeOp rotation_x(double theta, const DeviceParams& params, int q) {
    return make_rotation(NativeKind::RX, theta, params, q);
}

NativeOp rotation_y(double theta, const DeviceParams& params, int q) {
    return make_rotation(NativeKind::RY, theta, params, q);
}

NativeOp rz_virtual(double theta, int q) {
    NativeOp op;
    op.kind = NativeKind::RZ_VIRTUAL;
    op.targets = {q};
    op.angle = normalize_angle(theta);
    op.duration_us = 0.0;
    op.diag = {std::polar(1.0, -op.angle / 2), std::polar(1.0, op.angle / 2)};
    return op;
}

NativeOp move_marker(double tau_us) {
    NativeOp op;
    op.kind = NativeKind::MOVE;
    op.duration_us = tau_us;
    return op;
}

std::vector<cplx> ideal_reference(NativeKind kind) {
    switch (kind) {
        case NativeKind::CZ_LP:
            return {cplx{1, 0}, cplx{1, 0}, cplx{1, 0}, cplx{-1, 0}};
        case NativeKind::CZ_ARP:
            return {cplx{1, 0}, cplx{-1, 0}, cplx{-1, 0}, cplx{-1, 0}};
        case NativeKind::CCZ_ARP: {
            std::vector<cplx> d(8, cplx{-1.0, 0.0});
            d[0] = cplx{1.0, 0.0};
            return d;
        }
        default:
            throw std::invalid_argument("ideal_reference: entangling kinds only");
    }
}

double average_gate_fidelity(std::span<const cplx> m, std::span<const cplx> u, std::size_t d) {
    if (m.size() != d * d || u.size() != d * d)
        throw std::invalid_argument("average_gate_fidelity: dimension mismatch");
    double tr_mm = 0.0;
    for (const auto& z : m) tr_mm += std::norm(z);
    cplx tr_um{0.0, 0.0};
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) tr_um += std::conj(u[c * d + r]) * m[c * d + r];
    const double dd = static_cast<double>(d);
    return (tr_mm + std::norm(tr_um)) / (dd * (dd + 1.0));
}

namespace {

std::vector<cplx> diag_to_dense(const std::vector<cplx>& diag) {
    const std::size_t d = diag.size();
    std::vector<cplx> m(d * d, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = diag[i];
    return m;
}

} // namespace

std::vector<GateFidelityReport> native_fidelity_report(const DeviceParams& params) {
    std::vector<GateFidelityReport> out;
    const auto arp = cz_native(CzProtocol::ARP, params, 0, 1);
    const auto lp = cz_native(CzProtocol::LP, params, 0, 1);
    const auto ccz = ccz_native(params, 0, 1, 2);
    out.push_back({NativeKind::CZ_ARP,
                   average_gate_fidelity(diag_to_dense(arp.diag),
                                         diag_to_dense(ideal_reference(NativeKind::CZ_ARP)), 4),
                   "diag(1,-1,-1,-1)"});
    out.push_back({NativeKind::CZ_LP,
                   average_gate_fidelity(diag_to_dense(lp.diag),
                                         diag_to_dense(ideal_reference(NativeKind::CZ_LP)), 4),
                   "diag(1,1,1,-1)"});
    out.push_back({NativeKind::CCZ_ARP,
                   average_gate_fidelity(diag_to_dense(ccz.diag),
                                         diag_to_dense(ideal_reference(NativeKind::CCZ_ARP)), 8),
                   "pi phase on all states above |000>"});
    return out;
}

} // namespace ryd

#include "ryd/execute.hpp"

#ifndef NDEBUG
#include <Eigen/Dense>
#endif

#include <stdexcept>

namespace ryd {

namespace {

#ifndef NDEBUG
// Debug-build positivity probe; eigendecomposition is O(8^n) so it is kept
// out of release builds and capped at small registers.
void check_positivity(const DensityMatrix& rho) {
    if (rho.n_qubits() > 5) return;
    const std::size_t d = rho.dim();
    Eigen::MatrixXcd m(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = rho.at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.eigenvalues().minCoeff() < -1e-10)
        throw std::runtime_error("Executor: state lost positivity");
}
#endif

} // namespace

Executor::Executor(int n_qubits, const DeviceParams& params)
    : params_(params), rho_(n_qubits, params.eps_init),
      pending_idle_us_(static_cast<std::size_t>(n_qubits), 0.0) {
    params_.validate();
    for (auto& t : pending_idle_us_) t = params_.t_init_us;
    elapsed_us_ = params_.t_init_us;
}

void Executor::flush_idle(int q) {
    const double t = pending_idle_us_[static_cast<std::size_t>(q)];
    if (t <= 0.0) return;
    pending_idle_us_[static_cast<std::size_t>(q)] = 0.0;
    const KrausSet kraus = idle_channel_us(t, params_);
    const int tq[1] = {q};
    rho_.apply_channel(kraus, tq);
}

void Executor::sync() {
    for (int q = 0; q < rho_.n_qubits(); ++q) flush_idle(q);
}

void Executor::apply_gate(const NativeOp& op) {
    switch (op.kind) {
        case NativeKind::RX:
        case NativeKind::RY: {
            flush_idle(op.targets[0]);
            const cplx m[4] = {op.dense[0], op.dense[1], op.dense[2], op.dense[3]};
            rho_.apply_1q(m, op.targets[0]);
            break;
        }
        case NativeKind::RZ_VIRTUAL:
        case NativeKind::CZ_ARP:
        case NativeKind::CZ_LP:
        case NativeKind::CCZ_ARP:
            for (int q : op.targets) flush_idle(q);
            rho_.apply_diagonal(op.diag, op.targets);
            break;
        case NativeKind::MOVE:
        case NativeKind::INIT:
            break;
    }
}

void Executor::run_layer(const Layer& layer) {
    for (const auto& op : layer.ops) apply_gate(op);
    for (auto& t : pending_idle_us_) t += layer.wall_time_us;
    elapsed_us_ += layer.wall_time_us;
    const double t = rho_.trace();
    if (t <= 0.0 || t > 1.0 + 1e-12)
        throw std::runtime_error("Executor: trace left (0, 1] after layer");
#ifndef NDEBUG
    if (rho_.hermiticity_defect() > 1e-12)
        throw std::runtime_error("Executor: state lost Hermiticity");
    check_positivity(rho_);
#endif
}

void Executor::run(const ScheduledCircuit& sc) {
    if (sc.n_qubits != rho_.n_qubits())
        throw std::invalid_argument("Executor: circuit qubit count mismatch");
    for (const auto& layer : sc.layers) run_layer(layer);
}

ExecutionResult Executor::finish() {
    sync();
    if (rho_.hermiticity_defect() > 1e-10)
        throw std::runtime_error("Executor: final state lost Hermiticity");
    return ExecutionResult{rho_, 1.0 - rho_.trace(), elapsed_us_};
}

ExecutionResult execute(const ScheduledCircuit& sc, const DeviceParams& params) {
    Executor ex(sc.n_qubits, params);
    ex.run(sc);
    return ex.finish();
}

} // namespace ryd

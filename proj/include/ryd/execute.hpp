#pragma once

#include "ryd/density_matrix.hpp"
#include "ryd/noise.hpp"
#include "ryd/schedule.hpp"

namespace ryd {

struct ExecutionResult {
    DensityMatrix rho;
    double p_loss = 0.0;
    double wall_clock_us = 0.0;
};

/// Noisy propagation: initialization (lossy preparation plus one idle block
/// of t_init), then per layer all gate operators followed by the idle channel
/// for the layer's wall time on every qubit. Deterministic; no sampling.
///
/// The incremental interface lets the benchmark harness execute a circuit in
/// segments and read out intermediate states (Grover records one point per
/// iteration without re-running the prefix).
class Executor {
  public:
    Executor(int n_qubits, const DeviceParams& params);

    void run_layer(const Layer& layer);
    void run(const ScheduledCircuit& sc);

    /// Applies any idle time accumulated since the last gate on each qubit.
    /// Exact: the idle channel is a semigroup and commutes with gates on
    /// other qubits, so deferring it until the next gate (or readout) gives
    /// the same state as applying it layer by layer.
    void sync();

    const DensityMatrix& state() { sync(); return rho_; }
    double elapsed_us() const { return elapsed_us_; }
    double p_loss() const { return 1.0 - rho_.trace(); } // idle is trace preserving

    ExecutionResult finish();

  private:
    void apply_gate(const NativeOp& op);
    void flush_idle(int q);

    DeviceParams params_;
    DensityMatrix rho_;
    std::vector<double> pending_idle_us_;
    double elapsed_us_ = 0.0;
};

ExecutionResult execute(const ScheduledCircuit& sc, const DeviceParams& params);

} // namespace ryd

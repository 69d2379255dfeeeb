#pragma once

#include "ryd/abstract_circuit.hpp"
#include "ryd/execute.hpp"
#include "ryd/schedule.hpp"
#include "ryd/transpiler.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace ryd {

/// Runs fn(0..n-1) on a small worker pool. Work items must be independent;
/// results are keyed by index so the worker count never changes any output.
/// workers <= 0 selects the hardware concurrency.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

struct SummaryStats {
    double mean = 0.0;
    double sem = 0.0; // sample standard deviation (n-1) over sqrt(n)
};
SummaryStats summarize(const std::vector<double>& xs);

// ---------------------------------------------------------------- quantum volume

struct QVConfig {
    int depth_min = 2;
    int depth_max = 9;
    int n_circuits = 200;
    ModalityKind modality = ModalityKind::Reconfigurable;
    CzProtocol protocol = CzProtocol::LP;
    std::uint64_t master_seed = 0;
    DeviceParams device;
    int workers = 0;
};

struct QVItemRecord {
    int depth;
    int circuit_index;
    double h_raw;
    double h_corrected;
    double p_loss;
    double wall_us;
};

struct QVDepthSummary {
    int depth;
    int n_circuits;
    double mean_raw, sem_raw;
    double mean_corrected, sem_corrected;
    double mean_loss;
    bool pass_raw, pass_corrected; // mean - 2*SEM > 2/3
};

struct QVResult {
    std::vector<QVItemRecord> items;
    std::vector<QVDepthSummary> depths;
    std::uint64_t vq_raw = 1;
    std::uint64_t vq_corrected = 1;
};

/// Heavy outputs of an ideal distribution: strings strictly above the median
/// probability (mean of the two middle order statistics).
struct HeavySet {
    std::vector<std::uint32_t> strings;
    double median = 0.0;
    double h_ideal = 0.0;
};
HeavySet qv_heavy_set(const std::vector<double>& ideal_probs);

/// Random square-circuit content for one QV instance (exposed for tests).
struct QVCircuitData {
    int n_qubits;
    std::vector<std::vector<int>> perms;       // per layer, qubit order
    std::vector<std::vector<Mat4>> unitaries;  // per layer, one per pair
};
QVCircuitData qv_generate_circuit(int n_qubits, std::mt19937_64& rng);

/// Ideal output probabilities of a QV instance (logical indexing).
std::vector<double> qv_ideal_probabilities(const QVCircuitData& data);

/// Noisy execution: lowering, routing/moves per modality, scheduling, and
/// density-matrix propagation. Probabilities are reported in logical
/// indexing (static routing is unwound).
struct QVNoisyOutcome {
    std::vector<double> probabilities; // unnormalized, logical order
    double trace;
    double wall_us;
};
QVNoisyOutcome qv_execute_noisy(const QVCircuitData& data, ModalityKind modality,
                                CzProtocol protocol, const DeviceParams& device);

QVResult run_qv(const QVConfig& cfg);

// ------------------------------------------------------------ Bernstein-Vazirani

struct BVConfig {
    std::vector<int> n_data_list = {9};
    CzProtocol protocol = CzProtocol::LP;
    int seed_cap = 256;
    std::uint64_t master_seed = 0;
    DeviceParams device;
    int workers = 0;
};

struct BVItemRecord {
    int n_data;
    std::uint64_t seed_string;
    double p_raw;
    double p_corrected;
    double p_loss;
    double wall_us;
};

struct BVSizeSummary {
    int n_data;
    int n_seeds;
    double mean_raw, sem_raw;
    double mean_corrected, sem_corrected;
    double mean_loss;
};

struct BVResult {
    std::vector<BVItemRecord> items;
    std::vector<BVSizeSummary> sizes;
};

/// Oracle seed strings for one size: every n-bit string when 2^n fits the
/// cap, otherwise a seeded sample of cap-2 strings plus the all-zeros and
/// all-ones strings. Sorted ascending.
std::vector<std::uint64_t> bv_seed_strings(int n_data, int cap, std::uint64_t master_seed);

struct BVCircuit {
    AbstractCircuit ideal;           // n_data + 1 qubits, ancilla last
    std::vector<NativeOp> native_ops;
};
BVCircuit bv_circuit(int n_data, std::uint64_t seed_string, CzProtocol protocol,
                     const DeviceParams& device);

BVResult run_bv(const BVConfig& cfg);

// ---------------------------------------------------------------------- Grover

enum class GroverScheme { CCZ, CZ_LP, CZ_ARP };

struct GroverConfig {
    GroverScheme scheme = GroverScheme::CCZ;
    int max_iterations = 6;
    DeviceParams device;
    int workers = 0;
};

struct GroverItemRecord {
    int target;
    int k;
    double p_target_raw, p_target_corrected;
    double p_2nd_raw, p_2nd_corrected;
    double p_loss;
    double wall_us;
};

struct GroverKSummary {
    int k;
    double mean_target_raw, sem_target_raw;
    double mean_target_corrected, sem_target_corrected;
    double mean_2nd_raw, mean_2nd_corrected;
    double mean_loss;
};

struct GroverResult {
    std::vector<GroverItemRecord> items;
    std::vector<GroverKSummary> ks;
};

/// Exact 6-qubit reference circuit (oracle and diffusion as direct C5Z).
AbstractCircuit grover_ideal_circuit(int target, int iterations);

/// Initial Hadamard layer on the data register.
std::vector<NativeOp> grover_prep_ops(GroverScheme scheme, const DeviceParams& device);

/// One oracle + diffusion segment lowered onto 6 data + 3 ancilla qubits,
/// with a MOVE stage before every three-qubit block.
std::vector<NativeOp> grover_iteration_ops(int target, GroverScheme scheme,
                                           const DeviceParams& device);

GroverResult run_grover(const GroverConfig& cfg);

/// Closed-form ideal success probability sin^2((2k+1) asin(1/8)).
double grover_ideal_success(int iterations);

} // namespace ryd

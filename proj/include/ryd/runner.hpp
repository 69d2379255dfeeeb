#pragma once

#include "ryd/bench.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ryd {

enum class BenchmarkKind { QV, BV, Grover };

const char* to_string(BenchmarkKind kind);

/// Fully resolved run description. Built from a JSON config file plus CLI
/// overrides; unspecified device fields take the defaults in DeviceParams.
struct RunConfig {
    BenchmarkKind benchmark = BenchmarkKind::QV;
    DeviceParams device;
    ModalityKind modality = ModalityKind::Reconfigurable;
    CzProtocol protocol = CzProtocol::LP;
    GroverScheme grover_scheme = GroverScheme::CCZ;
    int depth_min = 2;
    int depth_max = 9;
    std::vector<int> n_data_list = {9};
    int max_iterations = 6;
    int n_circuits = 200;
    int seed_cap = 256;
    std::optional<std::uint64_t> master_seed; // mandatory before run()
    std::string out_dir = "out";
    int workers = 0;
};

/// Parses and validates the JSON config; unknown keys and unphysical values
/// are rejected with the offending key named.
RunConfig load_config(const std::string& path);
RunConfig parse_config_json(const std::string& text);

/// Canonical JSON dump of the resolved config (used for run_meta.json and
/// the config digest).
std::string config_to_json(const RunConfig& cfg);

/// FNV-1a hash of the canonical config dump, as fixed-width hex.
std::string config_digest(const RunConfig& cfg);

struct BenchRecord {
    std::string benchmark;
    std::string digest;
    std::string item;
    double raw;
    double corrected;
    double p_loss;
    double wall_clock_us;
};

struct SummaryRow {
    int size;
    int count;
    double mean_raw, mean_corrected, sem, mean_loss;
    bool pass_raw, pass_corrected;
};

struct RunOutput {
    std::vector<BenchRecord> records;
    std::vector<SummaryRow> summary;
    std::string extra; // benchmark-specific lines for run_meta (e.g. V_Q)
};

/// Executes the configured benchmark in memory.
RunOutput run_benchmark(const RunConfig& cfg);

/// Executes and persists records.jsonl, summary.csv and run_meta.json under
/// cfg.out_dir. Returns the process exit status.
int run(const RunConfig& cfg);

std::string records_to_jsonl(const std::vector<BenchRecord>& records);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

} // namespace ryd

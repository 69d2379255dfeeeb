#include "ryd/runner.hpp"
#include "ryd/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

namespace {

constexpr const char* kConfigSchema = R"(Config file schema (JSON object; every key optional unless noted):
  benchmark      "qv" | "bv" | "grover" (usually set by the subcommand)
  device         object with any of:
                   t1_s (4.0), t2_s (1.49), rabi_mhz (1.0), eps_init (0.003),
                   t_init_us (300), v_move_um_per_us (0.55),
                   tau_move_a_us (100), tau_move_b_us (40),
                   t_cz_us (0.5), t_ccz_us (1.0)
  modality       "reconfigurable" | "static"          (qv)
  cz_protocol    "lp" | "arp"                         (qv, bv)
  grover_scheme  "ccz" | "cz_lp" | "cz_arp"           (grover)
  depth_min, depth_max   square-circuit sizes, within [2, 9]   (qv)
  n_data         integer or array of integers in [1, 9]        (bv)
  iterations     maximum Grover iteration count, in [1, 6]     (grover)
  n_circuits     random circuits per depth (200)               (qv)
  seed_cap       maximum number of oracle seeds (256)          (bv)
  master_seed    64-bit integer; REQUIRED (here or via --seed)
  out_dir        output directory ("out")
  workers        worker threads; 0 = hardware concurrency

Outputs written to out_dir:
  records.jsonl  one record per circuit/seed/target+iteration
  summary.csv    size,mean_raw,mean_corrected,sem,mean_loss,pass_raw,pass_corrected
  run_meta.json  resolved config, digest, tool version, timestamp)";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rydsim - virtual neutral-atom processor benchmarks"};
    app.set_version_flag("--version", std::string("rydsim ") + ryd::kVersion);
    app.footer(kConfigSchema);
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> circuits;
    std::optional<std::string> out_dir;
    std::optional<int> workers;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (see schema below)");
        cmd->add_option("--seed", seed, "master seed (overrides config)");
        cmd->add_option("--circuits", circuits, "circuits per depth (overrides config)");
        cmd->add_option("--out", out_dir, "output directory (overrides config)");
        cmd->add_option("--workers", workers, "worker threads (overrides config)");
    };

    CLI::App* qv = app.add_subcommand("qv", "quantum volume on square random circuits");
    CLI::App* bv = app.add_subcommand("bv", "Bernstein-Vazirani oracle identification");
    CLI::App* grover = app.add_subcommand("grover", "6-qubit Grover search, all 64 targets");
    add_common(qv);
    add_common(bv);
    add_common(grover);

    CLI11_PARSE(app, argc, argv);

    try {
        ryd::RunConfig cfg;
        if (!config_path.empty()) cfg = ryd::load_config(config_path);
        if (qv->parsed()) cfg.benchmark = ryd::BenchmarkKind::QV;
        if (bv->parsed()) cfg.benchmark = ryd::BenchmarkKind::BV;
        if (grover->parsed()) cfg.benchmark = ryd::BenchmarkKind::Grover;
        if (seed) cfg.master_seed = *seed;
        if (circuits) cfg.n_circuits = *circuits;
        if (out_dir) cfg.out_dir = *out_dir;
        if (workers) cfg.workers = *workers;
        if (!cfg.master_seed) {
            std::fprintf(stderr, "error: a master seed is required (config master_seed or --seed)\n");
            return 2;
        }
        return ryd::run(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

#include "ryd/runner.hpp"

#include "ryd/version.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ryd {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(BenchmarkKind kind) {
    switch (kind) {
        case BenchmarkKind::QV: return "qv";
        case BenchmarkKind::BV: return "bv";
        case BenchmarkKind::Grover: return "grover";
    }
    return "?";
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

BenchmarkKind benchmark_from_string(const std::string& s) {
    if (s == "qv") return BenchmarkKind::QV;
    if (s == "bv") return BenchmarkKind::BV;
    if (s == "grover") return BenchmarkKind::Grover;
    throw std::invalid_argument("config: unknown benchmark '" + s + "'");
}

void parse_device(const json& j, DeviceParams& d) {
    static const std::set<std::string> known = {
        "t1_s",      "t2_s",          "rabi_mhz",      "eps_init", "t_init_us",
        "v_move_um_per_us", "tau_move_a_us", "tau_move_b_us", "t_cz_us",  "t_ccz_us"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw std::invalid_argument("config: unknown device key '" + key + "'");
        if (!value.is_number())
            throw std::invalid_argument("config: device key '" + key + "' must be a number");
    }
    d.t1_s = j.value("t1_s", d.t1_s);
    d.t2_s = j.value("t2_s", d.t2_s);
    d.rabi_mhz = j.value("rabi_mhz", d.rabi_mhz);
    d.eps_init = j.value("eps_init", d.eps_init);
    d.t_init_us = j.value("t_init_us", d.t_init_us);
    d.v_move_um_per_us = j.value("v_move_um_per_us", d.v_move_um_per_us);
    d.tau_move_a_us = j.value("tau_move_a_us", d.tau_move_a_us);
    d.tau_move_b_us = j.value("tau_move_b_us", d.tau_move_b_us);
    d.t_cz_us = j.value("t_cz_us", d.t_cz_us);
    d.t_ccz_us = j.value("t_ccz_us", d.t_ccz_us);
    try {
        d.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

} // namespace

RunConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    static const std::set<std::string> known = {
        "benchmark", "device",     "modality",   "cz_protocol", "grover_scheme",
        "depth_min", "depth_max",  "n_data",     "iterations",  "n_circuits",
        "seed_cap",  "master_seed", "out_dir",   "workers"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");

    RunConfig cfg;
    if (j.contains("benchmark")) cfg.benchmark = benchmark_from_string(j.at("benchmark"));
    if (j.contains("device")) parse_device(j.at("device"), cfg.device);
    if (j.contains("modality")) {
        const std::string m = j.at("modality");
        if (m == "static")
            cfg.modality = ModalityKind::Static;
        else if (m == "reconfigurable")
            cfg.modality = ModalityKind::Reconfigurable;
        else
            throw std::invalid_argument("config: unknown modality '" + m + "'");
    }
    if (j.contains("cz_protocol")) {
        const std::string p = j.at("cz_protocol");
        if (p == "arp")
            cfg.protocol = CzProtocol::ARP;
        else if (p == "lp")
            cfg.protocol = CzProtocol::LP;
        else
            throw std::invalid_argument("config: unknown cz_protocol '" + p + "'");
    }
    if (j.contains("grover_scheme")) {
        const std::string s = j.at("grover_scheme");
        if (s == "ccz")
            cfg.grover_scheme = GroverScheme::CCZ;
        else if (s == "cz_lp")
            cfg.grover_scheme = GroverScheme::CZ_LP;
        else if (s == "cz_arp")
            cfg.grover_scheme = GroverScheme::CZ_ARP;
        else
            throw std::invalid_argument("config: unknown grover_scheme '" + s + "'");
    }
    if (j.contains("depth_min")) cfg.depth_min = j.at("depth_min").get<int>();
    if (j.contains("depth_max")) cfg.depth_max = j.at("depth_max").get<int>();
    if (j.contains("n_data")) {
        cfg.n_data_list.clear();
        if (j.at("n_data").is_array())
            for (const auto& v : j.at("n_data")) cfg.n_data_list.push_back(v.get<int>());
        else
            cfg.n_data_list.push_back(j.at("n_data").get<int>());
        for (int n : cfg.n_data_list)
            if (n < 1 || n > 9) throw std::invalid_argument("config: n_data must be in [1, 9]");
    }
    if (j.contains("iterations")) cfg.max_iterations = j.at("iterations").get<int>();
    if (j.contains("n_circuits")) cfg.n_circuits = j.at("n_circuits").get<int>();
    if (j.contains("seed_cap")) cfg.seed_cap = j.at("seed_cap").get<int>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();

    if (cfg.depth_min < 2 || cfg.depth_max > 9 || cfg.depth_min > cfg.depth_max)
        throw std::invalid_argument("config: depth range must be within [2, 9]");
    if (cfg.max_iterations < 1 || cfg.max_iterations > 6)
        throw std::invalid_argument("config: iterations must be in [1, 6]");
    if (cfg.n_circuits < 1) throw std::invalid_argument("config: n_circuits must be positive");
    if (cfg.seed_cap < 2) throw std::invalid_argument("config: seed_cap must be at least 2");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

// Canonical content description: execution-only parameters (worker count,
// output directory) are deliberately absent so they can never change the
// produced bytes.
std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["benchmark"] = to_string(cfg.benchmark);
    j["device"] = {{"t1_s", cfg.device.t1_s},
                   {"t2_s", cfg.device.t2_s},
                   {"rabi_mhz", cfg.device.rabi_mhz},
                   {"eps_init", cfg.device.eps_init},
                   {"t_init_us", cfg.device.t_init_us},
                   {"v_move_um_per_us", cfg.device.v_move_um_per_us},
                   {"tau_move_a_us", cfg.device.tau_move_a_us},
                   {"tau_move_b_us", cfg.device.tau_move_b_us},
                   {"t_cz_us", cfg.device.t_cz_us},
                   {"t_ccz_us", cfg.device.t_ccz_us}};
    j["modality"] = cfg.modality == ModalityKind::Static ? "static" : "reconfigurable";
    j["cz_protocol"] = cfg.protocol == CzProtocol::ARP ? "arp" : "lp";
    j["grover_scheme"] = cfg.grover_scheme == GroverScheme::CCZ
                             ? "ccz"
                             : (cfg.grover_scheme == GroverScheme::CZ_LP ? "cz_lp" : "cz_arp");
    j["depth_min"] = cfg.depth_min;
    j["depth_max"] = cfg.depth_max;
    j["n_data"] = cfg.n_data_list;
    j["iterations"] = cfg.max_iterations;
    j["n_circuits"] = cfg.n_circuits;
    j["seed_cap"] = cfg.seed_cap;
    j["master_seed"] = cfg.master_seed.value_or(0);
    return j.dump();
}

std::string config_digest(const RunConfig& cfg) {
    const std::string text = config_to_json(cfg);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

namespace {

std::string bitstring(std::uint64_t value, int bits) {
    std::string s(static_cast<std::size_t>(bits), '0');
    for (int i = 0; i < bits; ++i)
        if ((value >> (bits - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

} // namespace

RunOutput run_benchmark(const RunConfig& cfg) {
    if (!cfg.master_seed)
        throw std::invalid_argument("run: master_seed is mandatory (no entropy defaults)");
    const std::string digest = config_digest(cfg);
    RunOutput out;

    switch (cfg.benchmark) {
        case BenchmarkKind::QV: {
            QVConfig qc;
            qc.depth_min = cfg.depth_min;
            qc.depth_max = cfg.depth_max;
            qc.n_circuits = cfg.n_circuits;
            qc.modality = cfg.modality;
            qc.protocol = cfg.protocol;
            qc.master_seed = *cfg.master_seed;
            qc.device = cfg.device;
            qc.workers = cfg.workers;
            const QVResult r = run_qv(qc);
            for (const auto& it : r.items) {
                char item[32];
                std::snprintf(item, sizeof item, "d%d_c%03d", it.depth, it.circuit_index);
                out.records.push_back(BenchRecord{"qv", digest, item, it.h_raw, it.h_corrected,
                                                  it.p_loss, it.wall_us});
            }
            for (const auto& d : r.depths)
                out.summary.push_back(SummaryRow{d.depth, d.n_circuits, d.mean_raw,
                                                 d.mean_corrected, d.sem_raw, d.mean_loss,
                                                 d.pass_raw, d.pass_corrected});
            std::ostringstream extra;
            extra << "{\"vq_raw\": " << r.vq_raw << ", \"vq_corrected\": " << r.vq_corrected << "}";
            out.extra = extra.str();
            break;
        }
        case BenchmarkKind::BV: {
            BVConfig bc;
            bc.n_data_list = cfg.n_data_list;
            bc.protocol = cfg.protocol;
            bc.seed_cap = cfg.seed_cap;
            bc.master_seed = *cfg.master_seed;
            bc.device = cfg.device;
            bc.workers = cfg.workers;
            const BVResult r = run_bv(bc);
            for (const auto& it : r.items)
                out.records.push_back(BenchRecord{"bv", digest,
                                                  bitstring(it.seed_string, it.n_data), it.p_raw,
                                                  it.p_corrected, it.p_loss, it.wall_us});
            for (const auto& s : r.sizes) {
                // The QV-style pass rule doubles as a generic success flag.
                const bool pr = s.mean_raw - 2.0 * s.sem_raw > 2.0 / 3.0;
                const bool pc = s.mean_corrected - 2.0 * s.sem_corrected > 2.0 / 3.0;
                out.summary.push_back(SummaryRow{s.n_data, s.n_seeds, s.mean_raw, s.mean_corrected,
                                                 s.sem_raw, s.mean_loss, pr, pc});
            }
            break;
        }
        case BenchmarkKind::Grover: {
            GroverConfig gc;
            gc.scheme = cfg.grover_scheme;
            gc.max_iterations = cfg.max_iterations;
            gc.device = cfg.device;
            gc.workers = cfg.workers;
            const GroverResult r = run_grover(gc);
            for (const auto& it : r.items) {
                char item[32];
                std::snprintf(item, sizeof item, "t%s_k%d", bitstring(it.target, 6).c_str(), it.k);
                out.records.push_back(BenchRecord{"grover", digest, item, it.p_target_raw,
                                                  it.p_target_corrected, it.p_loss, it.wall_us});
            }
            for (const auto& k : r.ks) {
                const bool pr = k.mean_target_raw - 2.0 * k.sem_target_raw > 2.0 / 3.0;
                const bool pc =
                    k.mean_target_corrected - 2.0 * k.sem_target_corrected > 2.0 / 3.0;
                out.summary.push_back(SummaryRow{k.k, 64, k.mean_target_raw,
                                                 k.mean_target_corrected, k.sem_target_raw,
                                                 k.mean_loss, pr, pc});
            }
            break;
        }
    }
    return out;
}

std::string records_to_jsonl(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        ordered_json j;
        j["benchmark"] = r.benchmark;
        j["config_digest"] = r.digest;
        j["item"] = r.item;
        j["raw"] = r.raw;
        j["corrected"] = r.corrected;
        j["p_loss"] = r.p_loss;
        j["wall_clock_us"] = r.wall_clock_us;
        out << j.dump() << '\n';
    }
    return out.str();
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "size,mean_raw,mean_corrected,sem,mean_loss,pass_raw,pass_corrected\n";
    for (const auto& r : rows) {
        out << r.size << ',' << format_double(r.mean_raw) << ',' << format_double(r.mean_corrected)
            << ',' << format_double(r.sem) << ',' << format_double(r.mean_loss) << ','
            << (r.pass_raw ? 1 : 0) << ',' << (r.pass_corrected ? 1 : 0) << '\n';
    }
    return out.str();
}

int run(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "error: cannot create output directory '%s': %s\n",
                     cfg.out_dir.c_str(), ec.message().c_str());
        return 2;
    }

    RunOutput out;
    bool partial = false;
    std::string error_text;
    try {
        out = run_benchmark(cfg);
    } catch (const std::exception& e) {
        partial = true;
        error_text = e.what();
    }

    const auto write_file = [&](const std::string& name, const std::string& content) {
        std::ofstream f(fs::path(cfg.out_dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + name);
        f << content;
    };

    try {
        if (!partial) {
            write_file("records.jsonl", records_to_jsonl(out.records));
            write_file("summary.csv", summary_to_csv(out.summary));
        }
        ordered_json meta;
        meta["tool"] = "rydsim";
        meta["version"] = kVersion;
        meta["config"] = nlohmann::ordered_json::parse(config_to_json(cfg));
        meta["config_digest"] = config_digest(cfg);
        meta["out_dir"] = cfg.out_dir;
        meta["workers"] = cfg.workers;
        const auto now = std::chrono::system_clock::now();
        meta["timestamp_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
        meta["partial"] = partial;
        if (partial) meta["error"] = error_text;
        if (!out.extra.empty()) meta["benchmark_extra"] = nlohmann::json::parse(out.extra);
        write_file("run_meta.json", meta.dump(2) + "\n");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    if (partial) {
        std::fprintf(stderr, "error: benchmark failed: %s\n", error_text.c_str());
        return 1;
    }
    return 0;
}

} // namespace ryd

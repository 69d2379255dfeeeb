#include "ryd/bench.hpp"

#include "ryd/pure_state.hpp"
#include "ryd/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ryd {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPassThreshold = 2.0 / 3.0;
} // namespace

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    unsigned int count = workers > 0 ? static_cast<unsigned int>(workers)
                                     : std::max(1u, std::thread::hardware_concurrency());
    if (static_cast<std::size_t>(count) > n) count = static_cast<unsigned int>(n);
    if (count <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = n;
    auto body = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned int t = 0; t < count; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

SummaryStats summarize(const std::vector<double>& xs) {
    SummaryStats s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return s;
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    const double stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    s.sem = stddev / std::sqrt(static_cast<double>(xs.size()));
    return s;
}

// ---------------------------------------------------------------- quantum volume

HeavySet qv_heavy_set(const std::vector<double>& ideal_probs) {
    double total = 0.0;
    for (double p : ideal_probs) total += p;
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("qv_heavy_set: distribution must sum to 1");
    std::vector<double> sorted = ideal_probs;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    HeavySet hs;
    hs.median = 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    for (std::size_t i = 0; i < n; ++i) {
        if (ideal_probs[i] > hs.median) {
            hs.strings.push_back(static_cast<std::uint32_t>(i));
            hs.h_ideal += ideal_probs[i];
        }
    }
    return hs;
}

QVCircuitData qv_generate_circuit(int n_qubits, std::mt19937_64& rng) {
    QVCircuitData data;
    data.n_qubits = n_qubits;
    const int depth = n_qubits;
    const int n_pairs = n_qubits / 2;
    for (int layer = 0; layer < depth; ++layer) {
        std::vector<int> perm(static_cast<std::size_t>(n_qubits));
        for (int q = 0; q < n_qubits; ++q) perm[static_cast<std::size_t>(q)] = q;
        std::shuffle(perm.begin(), perm.end(), rng);
        data.perms.push_back(std::move(perm));
        std::vector<Mat4> us;
        us.reserve(static_cast<std::size_t>(n_pairs));
        for (int j = 0; j < n_pairs; ++j) us.push_back(haar_su4(rng));
        data.unitaries.push_back(std::move(us));
    }
    return data;
}

std::vector<double> qv_ideal_probabilities(const QVCircuitData& data) {
    PureState psi(data.n_qubits);
    const int n_pairs = data.n_qubits / 2;
    for (std::size_t layer = 0; layer < data.perms.size(); ++layer) {
        const auto& perm = data.perms[layer];
        for (int j = 0; j < n_pairs; ++j) {
            const int qa = perm[static_cast<std::size_t>(2 * j)];
            const int qb = perm[static_cast<std::size_t>(2 * j + 1)];
            const int targets[2] = {qa, qb};
            psi.apply_unitary(data.unitaries[layer][static_cast<std::size_t>(j)], targets);
        }
    }
    return psi.probabilities();
}

QVNoisyOutcome qv_execute_noisy(const QVCircuitData& data, ModalityKind modality,
                                CzProtocol protocol, const DeviceParams& device) {
    const int n = data.n_qubits;
    const int n_pairs = n / 2;
    NativeEmitter em(n, device, protocol);
    std::vector<int> position_to_logical(static_cast<std::size_t>(n));

    if (modality == ModalityKind::Reconfigurable) {
        for (std::size_t layer = 0; layer < data.perms.size(); ++layer) {
            if (layer > 0) em.move();
            const auto& perm = data.perms[layer];
            for (int j = 0; j < n_pairs; ++j)
                decompose_su4(data.unitaries[layer][static_cast<std::size_t>(j)], em,
                              perm[static_cast<std::size_t>(2 * j)],
                              perm[static_cast<std::size_t>(2 * j + 1)]);
        }
        const auto ops = em.take();
        const auto sc = schedule(n, ops, Reconfigurable{device.tau_move_a_us}, device);
        auto res = execute(sc, device);
        QVNoisyOutcome out;
        out.probabilities = res.rho.diagonal_probabilities();
        out.trace = 1.0 - res.p_loss;
        out.wall_us = res.wall_clock_us;
        return out;
    }

    // Static line: atoms keep their positions, SWAP macros re-order the
    // labels. The first layer fixes the initial labelling for free. Later
    // layers only need the sampled pairs adjacent (and the leftover qubit at
    // the end of the line), so among all orders realizing the pairing we
    // route to the one with the fewest inversions relative to the current
    // order; pairs placed back to front get their unitary transposed.
    position_to_logical = data.perms.at(0);
    std::vector<char> flipped(static_cast<std::size_t>(n_pairs), 0);
    for (std::size_t layer = 0; layer < data.perms.size(); ++layer) {
        const auto& perm = data.perms[layer];
        if (layer > 0) {
            std::vector<int> pos_of(static_cast<std::size_t>(n));
            for (int p = 0; p < n; ++p)
                pos_of[static_cast<std::size_t>(position_to_logical[static_cast<std::size_t>(p)])] = p;
            std::vector<int> target_pos(static_cast<std::size_t>(n)), rel(static_cast<std::size_t>(n));
            auto inversions_from_current = [&](const std::vector<int>& desired) {
                for (int i = 0; i < n; ++i)
                    target_pos[static_cast<std::size_t>(desired[static_cast<std::size_t>(i)])] = i;
                for (int i = 0; i < n; ++i)
                    rel[static_cast<std::size_t>(i)] =
                        target_pos[static_cast<std::size_t>(position_to_logical[static_cast<std::size_t>(i)])];
                std::size_t inv = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (rel[static_cast<std::size_t>(i)] > rel[static_cast<std::size_t>(j)]) ++inv;
                return inv;
            };
            // Enumerate pair-to-slot assignments and orientations.
            std::vector<int> slot_of(static_cast<std::size_t>(n_pairs));
            for (int j = 0; j < n_pairs; ++j) slot_of[static_cast<std::size_t>(j)] = j;
            std::vector<int> best_order;
            std::vector<char> best_flip;
            std::size_t best_cost = SIZE_MAX;
            std::vector<int> candidate(static_cast<std::size_t>(n));
            if (n % 2 == 1) candidate[static_cast<std::size_t>(n - 1)] = perm[static_cast<std::size_t>(n - 1)];
            do {
                for (unsigned mask = 0; mask < (1u << n_pairs); ++mask) {
                    for (int slot = 0; slot < n_pairs; ++slot) {
                        const int pair = slot_of[static_cast<std::size_t>(slot)];
                        const bool flip = (mask >> pair) & 1u;
                        const int qa = perm[static_cast<std::size_t>(2 * pair)];
                        const int qb = perm[static_cast<std::size_t>(2 * pair + 1)];
                        candidate[static_cast<std::size_t>(2 * slot)] = flip ? qb : qa;
                        candidate[static_cast<std::size_t>(2 * slot + 1)] = flip ? qa : qb;
                    }
                    const std::size_t cost = inversions_from_current(candidate);
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_order = candidate;
                        best_flip.assign(static_cast<std::size_t>(n_pairs), 0);
                        for (int pair = 0; pair < n_pairs; ++pair)
                            best_flip[static_cast<std::size_t>(pair)] = (mask >> pair) & 1u;
                    }
                }
            } while (std::next_permutation(slot_of.begin(), slot_of.end()));

            const auto swaps = route_static(position_to_logical, best_order);
            for (int s : swaps) {
                em.swap(s, s + 1);
                std::swap(position_to_logical[static_cast<std::size_t>(s)],
                          position_to_logical[static_cast<std::size_t>(s + 1)]);
            }
            flipped = best_flip;
        } else {
            std::fill(flipped.begin(), flipped.end(), 0);
        }
        for (int j = 0; j < n_pairs; ++j) {
            // Slot of pair j under the chosen assignment: find where its
            // first qubit ended up.
            const int qa = perm[static_cast<std::size_t>(2 * j)];
            int slot = -1;
            for (int p = 0; p < n - (n % 2); ++p)
                if (position_to_logical[static_cast<std::size_t>(p)] == qa) slot = p / 2;
            Mat4 u = data.unitaries[layer][static_cast<std::size_t>(j)];
            if (flipped[static_cast<std::size_t>(j)]) {
                // Exchange the tensor slots: swap bit patterns 01 <-> 10.
                Mat4 v;
                auto sw = [](int i) { return ((i & 1) << 1) | ((i >> 1) & 1); };
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) v[sw(r) * 4 + sw(c)] = u[r * 4 + c];
                u = v;
            }
            decompose_su4(u, em, 2 * slot, 2 * slot + 1);
        }
    }
    const auto ops = em.take();
    const auto sc = schedule(n, ops, StaticLine{n}, device);
    auto res = execute(sc, device);
    const auto pos_probs = res.rho.diagonal_probabilities();

    QVNoisyOutcome out;
    out.probabilities.assign(pos_probs.size(), 0.0);
    for (std::size_t pidx = 0; pidx < pos_probs.size(); ++pidx) {
        std::size_t lidx = 0;
        for (int p = 0; p < n; ++p) {
            const std::size_t bit = (pidx >> (n - 1 - p)) & 1u;
            lidx |= bit << (n - 1 - position_to_logical[static_cast<std::size_t>(p)]);
        }
        out.probabilities[lidx] = pos_probs[pidx];
    }
    out.trace = 1.0 - res.p_loss;
    out.wall_us = res.wall_clock_us;
    return out;
}

QVResult run_qv(const QVConfig& cfg) {
    cfg.device.validate();
    if (cfg.depth_min < 2 || cfg.depth_max > 9 || cfg.depth_min > cfg.depth_max)
        throw std::invalid_argument("run_qv: depth range must be within [2, 9]");
    if (cfg.n_circuits < 1) throw std::invalid_argument("run_qv: n_circuits must be positive");

    struct Item {
        int depth;
        int circuit;
    };
    std::vector<Item> items;
    for (int d = cfg.depth_min; d <= cfg.depth_max; ++d)
        for (int c = 0; c < cfg.n_circuits; ++c) items.push_back({d, c});

    QVResult result;
    result.items.resize(items.size());
    parallel_for(items.size(), cfg.workers, [&](std::size_t idx) {
        const auto [depth, circuit] = items[idx];
        // Item key: depth and circuit index only, so partial depth ranges
        // reproduce the same circuits.
        const std::uint64_t key =
            static_cast<std::uint64_t>(depth) * 1000000ull + static_cast<std::uint64_t>(circuit);
        auto rng = make_engine(cfg.master_seed, SeedStream::QvCircuit, key);
        const auto data = qv_generate_circuit(depth, rng);
        const auto ideal = qv_ideal_probabilities(data);
        const auto heavy = qv_heavy_set(ideal);
        const auto noisy = qv_execute_noisy(data, cfg.modality, cfg.protocol, cfg.device);
        double h_raw = 0.0;
        for (std::uint32_t s : heavy.strings) h_raw += noisy.probabilities[s];
        result.items[idx] = QVItemRecord{depth,
                                         circuit,
                                         h_raw,
                                         h_raw / noisy.trace,
                                         1.0 - noisy.trace,
                                         noisy.wall_us};
    });

    for (int d = cfg.depth_min; d <= cfg.depth_max; ++d) {
        std::vector<double> raw, corrected, loss;
        for (const auto& it : result.items)
            if (it.depth == d) {
                raw.push_back(it.h_raw);
                corrected.push_back(it.h_corrected);
                loss.push_back(it.p_loss);
            }
        const auto sr = summarize(raw);
        const auto sc = summarize(corrected);
        const auto sl = summarize(loss);
        QVDepthSummary s;
        s.depth = d;
        s.n_circuits = static_cast<int>(raw.size());
        s.mean_raw = sr.mean;
        s.sem_raw = sr.sem;
        s.mean_corrected = sc.mean;
        s.sem_corrected = sc.sem;
        s.mean_loss = sl.mean;
        s.pass_raw = sr.mean - 2.0 * sr.sem > kPassThreshold;
        s.pass_corrected = sc.mean - 2.0 * sc.sem > kPassThreshold;
        result.depths.push_back(s);
    }
    // V_Q = 2^(largest depth with every depth up to it passing); a single
    // qubit passes trivially, hence the floor of 2^1.
    auto vq_of = [&](auto pass_of) {
        int best = 1;
        bool alive = true;
        for (const auto& s : result.depths) {
            alive = alive && pass_of(s);
            if (alive) best = s.depth;
        }
        return std::uint64_t{1} << best;
    };
    result.vq_raw = vq_of([](const QVDepthSummary& s) { return s.pass_raw; });
    result.vq_corrected = vq_of([](const QVDepthSummary& s) { return s.pass_corrected; });
    return result;
}

// ------------------------------------------------------------ Bernstein-Vazirani

std::vector<std::uint64_t> bv_seed_strings(int n_data, int cap, std::uint64_t master_seed) {
    if (n_data < 1 || n_data > 9) throw std::invalid_argument("bv_seed_strings: n_data in [1, 9]");
    const std::uint64_t space = std::uint64_t{1} << n_data;
    std::vector<std::uint64_t> seeds;
    if (space <= static_cast<std::uint64_t>(cap)) {
        seeds.resize(space);
        for (std::uint64_t s = 0; s < space; ++s) seeds[s] = s;
        return seeds;
    }
    // cap-2 distinct random strings plus the all-zeros and all-ones strings.
    auto rng = make_engine(master_seed, SeedStream::BvSampler, static_cast<std::uint64_t>(n_data));
    std::uniform_int_distribution<std::uint64_t> dist(1, space - 2);
    std::vector<bool> chosen(space, false);
    chosen[0] = chosen[space - 1] = true;
    int need = cap - 2;
    while (need > 0) {
        const std::uint64_t s = dist(rng);
        if (!chosen[s]) {
            chosen[s] = true;
            --need;
        }
    }
    for (std::uint64_t s = 0; s < space; ++s)
        if (chosen[s]) seeds.push_back(s);
    return seeds;
}

BVCircuit bv_circuit(int n_data, std::uint64_t seed_string, CzProtocol protocol,
                     const DeviceParams& device) {
    if (n_data < 1 || n_data > 9) throw std::invalid_argument("bv_circuit: n_data in [1, 9]");
    if (seed_string >> n_data) throw std::invalid_argument("bv_circuit: seed string out of range");
    const int ancilla = n_data;

    BVCircuit out;
    out.ideal.n_qubits = n_data + 1;
    for (int q = 0; q < n_data; ++q)
        out.ideal.gates.push_back(AbstractGate::simple(AbstractKind::H, {q}));
    out.ideal.gates.push_back(AbstractGate::simple(AbstractKind::X, {ancilla}));
    for (int q = 0; q < n_data; ++q)
        if ((seed_string >> (n_data - 1 - q)) & 1u)
            out.ideal.gates.push_back(AbstractGate::simple(AbstractKind::CZ, {q, ancilla}));
    for (int q = 0; q < n_data; ++q)
        out.ideal.gates.push_back(AbstractGate::simple(AbstractKind::H, {q}));

    NativeEmitter em(n_data + 1, device, protocol);
    for (int q = 0; q < n_data; ++q) em.h(q);
    em.rx(ancilla, kPi);
    for (int q = 0; q < n_data; ++q) {
        if ((seed_string >> (n_data - 1 - q)) & 1u) {
            em.move(); // the ancilla relocates next to this data qubit
            em.cz(q, ancilla);
        }
    }
    for (int q = 0; q < n_data; ++q) em.h(q);
    out.native_ops = em.take();
    return out;
}

BVResult run_bv(const BVConfig& cfg) {
    cfg.device.validate();
    struct Item {
        int n_data;
        std::uint64_t seed;
    };
    std::vector<Item> items;
    std::vector<std::pair<int, int>> size_spans; // (n_data, count)
    for (int n : cfg.n_data_list) {
        const auto seeds = bv_seed_strings(n, cfg.seed_cap, cfg.master_seed);
        size_spans.emplace_back(n, static_cast<int>(seeds.size()));
        for (std::uint64_t s : seeds) items.push_back({n, s});
    }

    BVResult result;
    result.items.resize(items.size());
    parallel_for(items.size(), cfg.workers, [&](std::size_t idx) {
        const auto [n, seed] = items[idx];
        const auto circ = bv_circuit(n, seed, cfg.protocol, cfg.device);
        const auto sc = schedule(n + 1, circ.native_ops, Reconfigurable{cfg.device.tau_move_b_us},
                                 cfg.device);
        const auto res = execute(sc, cfg.device);
        std::vector<int> data_qubits(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) data_qubits[static_cast<std::size_t>(q)] = q;
        const auto dist = res.rho.outcome_distribution(data_qubits);
        const double trace = 1.0 - res.p_loss;
        const double raw = dist.probabilities[seed];
        result.items[idx] =
            BVItemRecord{n, seed, raw, raw / trace, res.p_loss, res.wall_clock_us};
    });

    for (const auto& [n, count] : size_spans) {
        std::vector<double> raw, corrected, loss;
        for (const auto& it : result.items)
            if (it.n_data == n) {
                raw.push_back(it.p_raw);
                corrected.push_back(it.p_corrected);
                loss.push_back(it.p_loss);
            }
        const auto sr = summarize(raw);
        const auto sc = summarize(corrected);
        const auto sl = summarize(loss);
        result.sizes.push_back(
            BVSizeSummary{n, count, sr.mean, sr.sem, sc.mean, sc.sem, sl.mean});
    }
    return result;
}

// ---------------------------------------------------------------------- Grover

AbstractCircuit grover_ideal_circuit(int target, int iterations) {
    if (target < 0 || target >= 64) throw std::invalid_argument("grover: target in [0, 64)");
    AbstractCircuit circ;
    circ.n_qubits = 6;
    std::vector<int> all = {0, 1, 2, 3, 4, 5};
    for (int q : all) circ.gates.push_back(AbstractGate::simple(AbstractKind::H, {q}));
    for (int k = 0; k < iterations; ++k) {
        for (int q : all)
            if (!((target >> (5 - q)) & 1))
                circ.gates.push_back(AbstractGate::simple(AbstractKind::X, {q}));
        circ.gates.push_back(AbstractGate::simple(AbstractKind::CkZ, all));
        for (int q : all)
            if (!((target >> (5 - q)) & 1))
                circ.gates.push_back(AbstractGate::simple(AbstractKind::X, {q}));
        for (int q : all) circ.gates.push_back(AbstractGate::simple(AbstractKind::H, {q}));
        for (int q : all) circ.gates.push_back(AbstractGate::simple(AbstractKind::X, {q}));
        circ.gates.push_back(AbstractGate::simple(AbstractKind::CkZ, all));
        for (int q : all) circ.gates.push_back(AbstractGate::simple(AbstractKind::X, {q}));
        for (int q : all) circ.gates.push_back(AbstractGate::simple(AbstractKind::H, {q}));
    }
    return circ;
}

std::vector<NativeOp> grover_prep_ops(GroverScheme scheme, const DeviceParams& device) {
    const CzProtocol protocol = scheme == GroverScheme::CZ_ARP ? CzProtocol::ARP : CzProtocol::LP;
    NativeEmitter em(9, device, protocol);
    for (int q = 0; q < 6; ++q) em.h(q);
    return em.take();
}

std::vector<NativeOp> grover_iteration_ops(int target, GroverScheme scheme,
                                           const DeviceParams& device) {
    if (target < 0 || target >= 64) throw std::invalid_argument("grover: target in [0, 64)");
    const bool use_ccz = scheme == GroverScheme::CCZ;
    const CzProtocol protocol = scheme == GroverScheme::CZ_ARP ? CzProtocol::ARP : CzProtocol::LP;
    const int data[6] = {0, 1, 2, 3, 4, 5};
    const int anc[3] = {6, 7, 8};
    NativeEmitter em(9, device, protocol);
    // Oracle: phase flip on |target>.
    for (int q : data)
        if (!((target >> (5 - q)) & 1)) em.x(q);
    multi_controlled_z(em, data, anc, use_ccz, true);
    for (int q : data)
        if (!((target >> (5 - q)) & 1)) em.x(q);
    // Diffusion: phase flip on everything except |0...0>, global sign aside.
    for (int q : data) em.h(q);
    for (int q : data) em.x(q);
    multi_controlled_z(em, data, anc, use_ccz, true);
    for (int q : data) em.x(q);
    for (int q : data) em.h(q);
    return em.take();
}

double grover_ideal_success(int iterations) {
    const double theta = std::asin(1.0 / 8.0);
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

GroverResult run_grover(const GroverConfig& cfg) {
    cfg.device.validate();
    if (cfg.max_iterations < 1 || cfg.max_iterations > 6)
        throw std::invalid_argument("run_grover: iterations in [1, 6]");

    GroverResult result;
    result.items.resize(static_cast<std::size_t>(64 * cfg.max_iterations));
    parallel_for(64, cfg.workers, [&](std::size_t t) {
        const int target = static_cast<int>(t);
        Executor ex(9, cfg.device);
        const std::vector<int> data_qubits = {0, 1, 2, 3, 4, 5};
        const auto prep = grover_prep_ops(cfg.scheme, cfg.device);
        ex.run(schedule(9, prep, Reconfigurable{cfg.device.tau_move_a_us}, cfg.device));
        const auto ops = grover_iteration_ops(target, cfg.scheme, cfg.device);
        for (int k = 1; k <= cfg.max_iterations; ++k) {
            const auto sc = schedule(9, ops, Reconfigurable{cfg.device.tau_move_a_us}, cfg.device);
            ex.run(sc);
            const auto dist = ex.state().outcome_distribution(data_qubits);
            const double trace = ex.state().trace();
            const double p_target = dist.probabilities[static_cast<std::size_t>(target)];
            double p_2nd = 0.0;
            for (std::size_t s = 0; s < dist.probabilities.size(); ++s)
                if (s != static_cast<std::size_t>(target))
                    p_2nd = std::max(p_2nd, dist.probabilities[s]);
            result.items[t * static_cast<std::size_t>(cfg.max_iterations) +
                         static_cast<std::size_t>(k - 1)] =
                GroverItemRecord{target,       k,           p_target, p_target / trace, p_2nd,
                                 p_2nd / trace, 1.0 - trace, ex.elapsed_us()};
        }
    });

    for (int k = 1; k <= cfg.max_iterations; ++k) {
        std::vector<double> tr, tc, sr, sc2, loss;
        for (const auto& it : result.items)
            if (it.k == k) {
                tr.push_back(it.p_target_raw);
                tc.push_back(it.p_target_corrected);
                sr.push_back(it.p_2nd_raw);
                sc2.push_back(it.p_2nd_corrected);
                loss.push_back(it.p_loss);
            }
        const auto str = summarize(tr);
        const auto stc = summarize(tc);
        result.ks.push_back(GroverKSummary{k, str.mean, str.sem, stc.mean, stc.sem,
                                           summarize(sr).mean, summarize(sc2).mean,
                                           summarize(loss).mean});
    }
    return result;
}

} // namespace ryd

// Randomized property suites. Each section runs >= 1000 cases and prints
// one pass/fail line.

#include "property_suite.hpp"

#include "ryd/bench.hpp"
#include "ryd/execute.hpp"
#include "ryd/noise.hpp"
#include "ryd/pure_state.hpp"
#include "ryd/transpiler.hpp"

#include "test_helpers.hpp"

#include <cstdio>
#include <numbers>
#include <random>

using namespace ryd;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(const char* name, bool ok, const char* detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail[0] ? ": " : "", detail);
    if (!ok) ++g_failures;
}

// Random native-ish operation applied to rho; returns false on contract
// violation (should not happen for generated inputs).
void random_step(DensityMatrix& rho, std::mt19937_64& rng, const DeviceParams& params) {
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_int_distribution<int> qd(0, rho.n_qubits() - 1);
    std::uniform_real_distribution<double> ad(-kPi, kPi);
    std::uniform_real_distribution<double> td(0.0, 0.3);
    switch (kind(rng)) {
        case 0: {
            const auto m = rx_matrix(ad(rng));
            const cplx mm[4] = {m[0], m[1], m[2], m[3]};
            rho.apply_1q(mm, qd(rng));
            break;
        }
        case 1: {
            if (rho.n_qubits() < 2) {
                const auto m = ry_matrix(ad(rng));
                const cplx mm[4] = {m[0], m[1], m[2], m[3]};
                rho.apply_1q(mm, 0);
                break;
            }
            int a = qd(rng), b = qd(rng);
            if (a == b) b = (b + 1) % rho.n_qubits();
            const auto op = cz_native(rng() % 2 ? CzProtocol::ARP : CzProtocol::LP, params, a, b);
            const int t[2] = {a, b};
            rho.apply_diagonal(op.diag, t);
            break;
        }
        case 2: {
            const int t[1] = {qd(rng)};
            rho.apply_channel(idle_channel_s(td(rng), params), t);
            break;
        }
        case 3: {
            // Random contraction: unitary scaled by a factor <= 1.
            const auto u = testing::random_unitary(2, rng);
            std::uniform_real_distribution<double> sd(0.9, 1.0);
            const double s = sd(rng);
            std::vector<cplx> m = {u[0] * s, u[1] * s, u[2] * s, u[3] * s};
            const int t[1] = {qd(rng)};
            rho.apply_operator(m, t);
            break;
        }
        default: {
            const int t[1] = {qd(rng)};
            rho.apply_channel(amplitude_damping(td(rng), params.t1_s), t);
            break;
        }
    }
}

void trace_monotonicity() {
    std::mt19937_64 rng(1001);
    DeviceParams params;
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        std::uniform_int_distribution<int> nd(1, 4);
        DensityMatrix rho(nd(rng), 0.001);
        double trace = rho.trace();
        for (int step = 0; step < 8; ++step) {
            random_step(rho, rng, params);
            const double t = rho.trace();
            if (t > trace + 1e-12 || t <= 0.0) {
                ok = false;
                break;
            }
            trace = t;
        }
    }
    report("trace non-increasing over random operator/channel sequences", ok);
}

void hermiticity_positivity() {
    std::mt19937_64 rng(2002);
    DeviceParams params;
    bool ok = true;
    double worst_herm = 0.0, worst_eig = 0.0;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        std::uniform_int_distribution<int> nd(1, 3);
        DensityMatrix rho(nd(rng), 0.002);
        for (int step = 0; step < 6; ++step) random_step(rho, rng, params);
        const double herm = rho.hermiticity_defect();
        const double eig = testing::min_eigenvalue(rho);
        worst_herm = std::max(worst_herm, herm);
        worst_eig = std::min(worst_eig, eig);
        ok = herm < 1e-12 && eig > -1e-10;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "worst hermiticity %.2e, lowest eigenvalue %.2e",
                  worst_herm, worst_eig);
    report("hermiticity within 1e-12 and eigenvalues above -1e-10", ok, detail);
}

void unitary_preserves_trace() {
    std::mt19937_64 rng(3003);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        DensityMatrix rho = testing::random_density_matrix(3, rng);
        const double before = rho.trace();
        std::uniform_int_distribution<int> kd(1, 2);
        const int k = kd(rng);
        std::vector<int> targets;
        std::uniform_int_distribution<int> qd(0, 2);
        while (static_cast<int>(targets.size()) < k) {
            const int q = qd(rng);
            bool dup = false;
            for (int t : targets) dup |= (t == q);
            if (!dup) targets.push_back(q);
        }
        rho.apply_operator(testing::random_unitary(std::size_t{1} << k, rng), targets);
        ok = std::abs(rho.trace() - before) < 1e-12;
    }
    report("unitary operators preserve the trace within 1e-12", ok);
}

void channel_semigroup() {
    std::mt19937_64 rng(4004);
    DeviceParams params;
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        DensityMatrix a = testing::random_density_matrix(1, rng);
        DensityMatrix b = a;
        std::uniform_real_distribution<double> td(0.0, 0.4);
        const double t1 = td(rng), t2 = td(rng);
        const int t[1] = {0};
        a.apply_channel(idle_channel_s(t1 + t2, params), t);
        b.apply_channel(idle_channel_s(t1, params), t);
        b.apply_channel(idle_channel_s(t2, params), t);
        for (std::size_t i = 0; i < a.data().size(); ++i)
            worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
        ok = worst < 1e-10;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "worst deviation %.2e", worst);
    report("idle channel semigroup property", ok, detail);
}

void outcome_sums_to_trace() {
    std::mt19937_64 rng(5005);
    DeviceParams params;
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        std::uniform_int_distribution<int> nd(1, 4);
        const int n = nd(rng);
        DensityMatrix rho(n, 0.004);
        for (int step = 0; step < 5; ++step) random_step(rho, rng, params);
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
        const auto dist = rho.outcome_distribution(all);
        double sum = 0.0;
        for (double p : dist.probabilities) {
            sum += p;
            ok = ok && p >= -1e-12;
        }
        ok = ok && std::abs(sum - rho.trace()) < 1e-12;
    }
    report("outcome distribution sums to the trace", ok);
}

void ideal_vs_density_matrix() {
    std::mt19937_64 rng(6006);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        std::uniform_int_distribution<int> nd(2, 5);
        const int n = nd(rng);
        AbstractCircuit c;
        c.n_qubits = n;
        std::uniform_int_distribution<int> qd(0, n - 1);
        std::uniform_real_distribution<double> ad(-3.0, 3.0);
        for (int g = 0; g < 10; ++g) {
            switch (g % 3) {
                case 0: c.gates.push_back(AbstractGate::simple(AbstractKind::H, {qd(rng)})); break;
                case 1:
                    c.gates.push_back(AbstractGate::rotation(AbstractKind::RX, ad(rng), qd(rng)));
                    break;
                default: {
                    int a = qd(rng), b = qd(rng);
                    if (a == b) b = (b + 1) % n;
                    c.gates.push_back(AbstractGate::simple(AbstractKind::CZ, {a, b}));
                }
            }
        }
        const auto dist = run_ideal(c);

        DensityMatrix rho(n, 0.0);
        const double s = 1.0 / std::sqrt(2.0);
        for (const auto& g : c.gates) {
            if (g.kind == AbstractKind::H) {
                const std::vector<cplx> m = {s, s, s, -s};
                rho.apply_operator(m, g.targets);
            } else if (g.kind == AbstractKind::RX) {
                const auto m = rx_matrix(g.angle);
                rho.apply_operator(std::vector<cplx>(m.begin(), m.end()), g.targets);
            } else {
                const std::vector<cplx> m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
                rho.apply_operator(m, g.targets);
            }
        }
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
        const auto want = rho.outcome_distribution(all);
        for (std::size_t i = 0; i < dist.probabilities.size(); ++i)
            worst = std::max(worst, std::abs(dist.probabilities[i] - want.probabilities[i]));
        ok = worst < 1e-10;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "worst probability deviation %.2e", worst);
    report("pure-state and density-matrix propagation agree", ok, detail);
}

void determinism_across_workers() {
    bool ok = true;
    {
        BVConfig a;
        a.n_data_list = {4};
        a.master_seed = 31337;
        a.workers = 1;
        BVConfig b = a;
        b.workers = 4;
        const auto ra = run_bv(a);
        const auto rb = run_bv(b);
        ok = ra.items.size() == rb.items.size();
        for (std::size_t i = 0; ok && i < ra.items.size(); ++i)
            ok = ra.items[i].p_raw == rb.items[i].p_raw &&
                 ra.items[i].p_corrected == rb.items[i].p_corrected &&
                 ra.items[i].p_loss == rb.items[i].p_loss;
    }
    {
        QVConfig a;
        a.depth_min = 2;
        a.depth_max = 3;
        a.n_circuits = 12;
        a.master_seed = 31337;
        a.workers = 1;
        QVConfig b = a;
        b.workers = 4;
        const auto ra = run_qv(a);
        const auto rb = run_qv(b);
        ok = ok && ra.items.size() == rb.items.size();
        for (std::size_t i = 0; ok && i < ra.items.size(); ++i)
            ok = ra.items[i].h_raw == rb.items[i].h_raw &&
                 ra.items[i].h_corrected == rb.items[i].h_corrected;
        ok = ok && ra.vq_raw == rb.vq_raw;
    }
    report("results are bit-identical across worker counts", ok);
}

} // namespace

int run_property_suites() {
    g_failures = 0;
    trace_monotonicity();
    hermiticity_positivity();
    unitary_preserves_trace();
    channel_semigroup();
    outcome_sums_to_trace();
    ideal_vs_density_matrix();
    determinism_across_workers();
    return g_failures;
}

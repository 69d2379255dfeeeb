#include "ryd/pure_state.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace ryd;

TEST_CASE("run_ideal basics") {
    SUBCASE("empty circuit stays in the ground state") {
        AbstractCircuit c;
        c.n_qubits = 2;
        const auto dist = run_ideal(c);
        CHECK(dist.probabilities[0] == doctest::Approx(1.0));
        CHECK(dist.probabilities[1] == doctest::Approx(0.0));
    }
    SUBCASE("single Hadamard splits the mass") {
        AbstractCircuit c;
        c.n_qubits = 1;
        c.gates.push_back(AbstractGate::simple(AbstractKind::H, {0}));
        const auto dist = run_ideal(c);
        CHECK(dist.probabilities[0] == doctest::Approx(0.5));
        CHECK(dist.probabilities[1] == doctest::Approx(0.5));
    }
    SUBCASE("distribution sums to one") {
        std::mt19937_64 rng(4);
        AbstractCircuit c;
        c.n_qubits = 3;
        for (int layer = 0; layer < 4; ++layer) {
            c.gates.push_back(AbstractGate::simple(AbstractKind::H, {layer % 3}));
            c.gates.push_back(AbstractGate::simple(AbstractKind::CZ, {layer % 3, (layer + 1) % 3}));
        }
        const auto dist = run_ideal(c);
        double sum = 0.0;
        for (double p : dist.probabilities) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("non-unitary SU4 matrices are rejected at construction") {
        std::array<cplx, 16> m{};
        for (int i = 0; i < 4; ++i) m[i * 4 + i] = cplx{0.9, 0.0};
        CHECK_THROWS_AS(AbstractGate::su4_gate(m, 0, 1), std::invalid_argument);
    }
    SUBCASE("unitary with non-unit determinant is rejected") {
        std::array<cplx, 16> m{};
        for (int i = 0; i < 4; ++i) m[i * 4 + i] = cplx{1.0, 0.0};
        m[15] = cplx{0.0, 1.0}; // det = i
        CHECK_THROWS_AS(AbstractGate::su4_gate(m, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("pure-state propagation agrees with density-matrix evolution") {
    std::mt19937_64 rng(21);
    for (int n = 2; n <= 5; ++n) {
        AbstractCircuit c;
        c.n_qubits = n;
        std::uniform_int_distribution<int> qd(0, n - 1);
        std::uniform_real_distribution<double> ad(-3.0, 3.0);
        for (int g = 0; g < 12; ++g) {
            switch (g % 4) {
                case 0: c.gates.push_back(AbstractGate::simple(AbstractKind::H, {qd(rng)})); break;
                case 1: c.gates.push_back(AbstractGate::rotation(AbstractKind::RY, ad(rng), qd(rng))); break;
                case 2: c.gates.push_back(AbstractGate::rotation(AbstractKind::RZ, ad(rng), qd(rng))); break;
                default: {
                    int a = qd(rng), b = qd(rng);
                    if (a == b) b = (b + 1) % n;
                    c.gates.push_back(AbstractGate::simple(AbstractKind::CZ, {a, b}));
                }
            }
        }
        const auto dist = run_ideal(c);

        // Density-matrix oracle via apply_operator on the same gate stream.
        DensityMatrix rho(n, 0.0);
        for (const auto& g : c.gates) {
            switch (g.kind) {
                case AbstractKind::H: {
                    const double s = 1.0 / std::sqrt(2.0);
                    const std::vector<cplx> m = {s, s, s, -s};
                    rho.apply_operator(m, g.targets);
                    break;
                }
                case AbstractKind::RY: {
                    const auto m = ry_matrix(g.angle);
                    rho.apply_operator(std::vector<cplx>(m.begin(), m.end()), g.targets);
                    break;
                }
                case AbstractKind::RZ: {
                    const std::vector<cplx> m = {std::polar(1.0, -g.angle / 2), 0, 0,
                                                 std::polar(1.0, g.angle / 2)};
                    rho.apply_operator(m, g.targets);
                    break;
                }
                default: {
                    const std::vector<cplx> m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
                    rho.apply_operator(m, g.targets);
                }
            }
        }
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
        const auto rho_dist = rho.outcome_distribution(all);
        for (std::size_t i = 0; i < dist.probabilities.size(); ++i)
            CHECK(std::abs(dist.probabilities[i] - rho_dist.probabilities[i]) < 1e-10);
    }
}

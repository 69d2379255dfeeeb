#include "ryd/schedule.hpp"

#include <doctest.h>

#include <numbers>

using namespace ryd;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("greedy layering") {
    DeviceParams params;
    SUBCASE("independent single-qubit gates share a layer in both modalities") {
        std::vector<NativeOp> ops;
        for (int q = 0; q < 3; ++q) ops.push_back(rotation_x(kPi, params, q));
        const auto recon = schedule(3, ops, Reconfigurable{100.0}, params);
        CHECK(recon.layers.size() == 1);
        const auto stat = schedule(3, ops, StaticLine{3}, params);
        CHECK(stat.layers.size() == 1);
        CHECK(stat.layers[0].wall_time_us == doctest::Approx(0.5));
    }
    SUBCASE("disjoint CZs are sequential in static mode, parallel otherwise") {
        std::vector<NativeOp> ops;
        ops.push_back(cz_native(CzProtocol::LP, params, 0, 1));
        ops.push_back(cz_native(CzProtocol::LP, params, 2, 3));
        const auto stat = schedule(4, ops, StaticLine{4}, params);
        CHECK(stat.layers.size() == 2);
        const auto recon = schedule(4, ops, Reconfigurable{100.0}, params);
        CHECK(recon.layers.size() == 1);
        CHECK(recon.layers[0].ops.size() == 2);
    }
    SUBCASE("layer wall time is the longest op") {
        std::vector<NativeOp> ops;
        ops.push_back(rotation_x(kPi, params, 0));       // 0.5 us
        ops.push_back(rotation_x(kPi / 4, params, 1));   // 0.125 us
        const auto sc = schedule(2, ops, Reconfigurable{100.0}, params);
        REQUIRE(sc.layers.size() == 1);
        CHECK(sc.layers[0].wall_time_us == doctest::Approx(0.5));
    }
    SUBCASE("MOVE markers become dedicated barrier layers with tau") {
        std::vector<NativeOp> ops;
        ops.push_back(rotation_x(kPi, params, 0));
        ops.push_back(move_marker(0.0));
        ops.push_back(rotation_x(kPi, params, 1));
        const auto sc = schedule(2, ops, Reconfigurable{40.0}, params);
        REQUIRE(sc.layers.size() == 3);
        CHECK(sc.layers[1].ops.size() == 1);
        CHECK(sc.layers[1].ops[0].kind == NativeKind::MOVE);
        CHECK(sc.layers[1].wall_time_us == doctest::Approx(40.0));
        // The rotation on the untouched qubit 1 may not drift before the move.
        CHECK(sc.layers[2].ops[0].kind == NativeKind::RX);
    }
    SUBCASE("non-adjacent entangling gate in static mode is a scheduling error") {
        std::vector<NativeOp> ops;
        ops.push_back(cz_native(CzProtocol::LP, params, 0, 2));
        CHECK_THROWS_AS(schedule(3, ops, StaticLine{3}, params), std::invalid_argument);
        CHECK_NOTHROW(schedule(3, ops, Reconfigurable{100.0}, params));
    }
    SUBCASE("MOVE marker is rejected in static mode") {
        std::vector<NativeOp> ops;
        ops.push_back(move_marker(0.0));
        CHECK_THROWS_AS(schedule(2, ops, StaticLine{2}, params), std::invalid_argument);
    }
    SUBCASE("zero-duration virtual z packs with its layer") {
        std::vector<NativeOp> ops;
        ops.push_back(rz_virtual(kPi / 2, 0));
        const auto sc = schedule(1, ops, Reconfigurable{100.0}, params);
        REQUIRE(sc.layers.size() == 1);
        CHECK(sc.layers[0].wall_time_us == 0.0);
    }
}

TEST_CASE("scheduled circuit JSON") {
    DeviceParams params;
    std::vector<NativeOp> ops;
    ops.push_back(rotation_y(kPi / 2, params, 0));
    ops.push_back(move_marker(0.0));
    ops.push_back(cz_native(CzProtocol::ARP, params, 0, 1));
    const auto sc = schedule(2, ops, Reconfigurable{100.0}, params);

    SUBCASE("golden serialization") {
        const std::string want =
            R"({"n_qubits":2,"layers":[{"wall_time_us":0.25,"ops":[{"kind":"RY","targets":[0],"angle":1.5707963267948966,"duration_us":0.25}]},{"wall_time_us":100.0,"ops":[{"kind":"MOVE","targets":[],"duration_us":100.0}]},{"wall_time_us":0.5,"ops":[{"kind":"CZ_ARP","targets":[0,1],"duration_us":0.5}]}]})";
        CHECK(to_json(sc) == want);
    }
    SUBCASE("round trip preserves structure and matrices") {
        const auto back = scheduled_circuit_from_json(to_json(sc), params);
        REQUIRE(back.layers.size() == sc.layers.size());
        CHECK(back.n_qubits == sc.n_qubits);
        for (std::size_t l = 0; l < sc.layers.size(); ++l) {
            REQUIRE(back.layers[l].ops.size() == sc.layers[l].ops.size());
            CHECK(back.layers[l].wall_time_us == sc.layers[l].wall_time_us);
            for (std::size_t o = 0; o < sc.layers[l].ops.size(); ++o) {
                const auto& a = sc.layers[l].ops[o];
                const auto& b = back.layers[l].ops[o];
                CHECK(a.kind == b.kind);
                CHECK(a.targets == b.targets);
                CHECK(a.duration_us == b.duration_us);
                REQUIRE(a.diag.size() == b.diag.size());
                for (std::size_t i = 0; i < a.diag.size(); ++i)
                    CHECK(std::abs(a.diag[i] - b.diag[i]) < 1e-15);
                REQUIRE(a.dense.size() == b.dense.size());
                for (std::size_t i = 0; i < a.dense.size(); ++i)
                    CHECK(std::abs(a.dense[i] - b.dense[i]) < 1e-15);
            }
        }
    }
}

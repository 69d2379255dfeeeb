#include "ryd/schedule.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace ryd {

double ScheduledCircuit::total_wall_time_us() const {
    double t = 0.0;
    for (const auto& l : layers) t += l.wall_time_us;
    return t;
}

std::size_t ScheduledCircuit::gate_count() const {
    std::size_t c = 0;
    for (const auto& l : layers)
        for (const auto& op : l.ops)
            if (op.is_gate()) ++c;
    return c;
}

std::size_t ScheduledCircuit::entangling_count() const {
    std::size_t c = 0;
    for (const auto& l : layers)
        for (const auto& op : l.ops)
            if (op.is_entangling()) ++c;
    return c;
}

ScheduledCircuit schedule(int n_qubits, const std::vector<NativeOp>& ops, const Modality& modality,
                          const DeviceParams& params) {
    params.validate();
    for (const auto& op : ops)
        for (int q : op.targets)
            if (q < 0 || q >= n_qubits) throw std::invalid_argument("schedule: target out of range");

    const bool is_static = std::holds_alternative<StaticLine>(modality);
    if (is_static && std::get<StaticLine>(modality).length != n_qubits)
        throw std::invalid_argument("schedule: static line length must equal n_qubits");

    ScheduledCircuit sc;
    sc.n_qubits = n_qubits;

    // frontier[q]: first layer index free for qubit q.
    std::vector<std::size_t> frontier(static_cast<std::size_t>(n_qubits), 0);
    // In static mode entangling gates are sequential and addressable: each
    // claims a layer of its own as far as other entangling gates go.
    std::size_t entangling_frontier = 0;

    auto layer_at = [&sc](std::size_t idx) -> Layer& {
        while (sc.layers.size() <= idx) sc.layers.emplace_back();
        return sc.layers[idx];
    };

    for (const auto& op : ops) {
        if (op.kind == NativeKind::MOVE) {
            if (!std::holds_alternative<Reconfigurable>(modality))
                throw std::invalid_argument("schedule: MOVE marker in static modality");
            const double tau = std::get<Reconfigurable>(modality).tau_move_us;
            // Global barrier: everyone waits for the move block.
            std::size_t start = sc.layers.size();
            for (std::size_t f : frontier) start = std::max(start, f);
            Layer& l = layer_at(start);
            NativeOp m = op;
            m.duration_us = tau;
            l.ops.push_back(std::move(m));
            l.wall_time_us = tau;
            for (auto& f : frontier) f = start + 1;
            entangling_frontier = start + 1;
            continue;
        }
        if (op.kind == NativeKind::INIT) continue; // initialization is the executor's job
        if (op.targets.empty()) throw std::invalid_argument("schedule: gate without targets");

        if (is_static && op.is_entangling()) {
            std::vector<int> t = op.targets;
            std::sort(t.begin(), t.end());
            if (t.back() - t.front() != static_cast<int>(t.size()) - 1)
                throw std::invalid_argument(
                    "schedule: entangling gate on non-adjacent line positions (route first)");
        }

        std::size_t start = 0;
        for (int q : op.targets) start = std::max(start, frontier[static_cast<std::size_t>(q)]);
        if (is_static && op.is_entangling()) start = std::max(start, entangling_frontier);

        Layer& l = layer_at(start);
        l.ops.push_back(op);
        l.wall_time_us = std::max(l.wall_time_us, op.duration_us);
        for (int q : op.targets) frontier[static_cast<std::size_t>(q)] = start + 1;
        if (is_static && op.is_entangling()) entangling_frontier = start + 1;
    }
    return sc;
}

std::string to_json(const ScheduledCircuit& sc) {
    nlohmann::ordered_json j;
    j["n_qubits"] = sc.n_qubits;
    j["layers"] = nlohmann::ordered_json::array();
    for (const auto& l : sc.layers) {
        nlohmann::ordered_json jl;
        jl["wall_time_us"] = l.wall_time_us;
        jl["ops"] = nlohmann::ordered_json::array();
        for (const auto& op : l.ops) {
            nlohmann::ordered_json jo;
            jo["kind"] = to_string(op.kind);
            jo["targets"] = op.targets;
            if (op.kind == NativeKind::RX || op.kind == NativeKind::RY ||
                op.kind == NativeKind::RZ_VIRTUAL)
                jo["angle"] = op.angle;
            jo["duration_us"] = op.duration_us;
            jl["ops"].push_back(std::move(jo));
        }
        j["layers"].push_back(std::move(jl));
    }
    return j.dump();
}

ScheduledCircuit scheduled_circuit_from_json(const std::string& text, const DeviceParams& params) {
    const auto j = nlohmann::json::parse(text);
    ScheduledCircuit sc;
    sc.n_qubits = j.at("n_qubits").get<int>();
    for (const auto& jl : j.at("layers")) {
        Layer l;
        l.wall_time_us = jl.at("wall_time_us").get<double>();
        for (const auto& jo : jl.at("ops")) {
            const NativeKind kind = native_kind_from_string(jo.at("kind").get<std::string>());
            const auto targets = jo.value("targets", std::vector<int>{});
            const double angle = jo.value("angle", 0.0);
            NativeOp op;
            switch (kind) {
                case NativeKind::RX: op = rotation_x(angle, params, targets.at(0)); break;
                case NativeKind::RY: op = rotation_y(angle, params, targets.at(0)); break;
                case NativeKind::RZ_VIRTUAL: op = rz_virtual(angle, targets.at(0)); break;
                case NativeKind::CZ_ARP:
                    op = cz_native(CzProtocol::ARP, params, targets.at(0), targets.at(1));
                    break;
                case NativeKind::CZ_LP:
                    op = cz_native(CzProtocol::LP, params, targets.at(0), targets.at(1));
                    break;
                case NativeKind::CCZ_ARP:
                    op = ccz_native(params, targets.at(0), targets.at(1), targets.at(2));
                    break;
                case NativeKind::MOVE: op = move_marker(jo.at("duration_us").get<double>()); break;
                case NativeKind::INIT: op.kind = NativeKind::INIT; break;
            }
            op.duration_us = jo.at("duration_us").get<double>();
            l.ops.push_back(std::move(op));
        }
        sc.layers.push_back(std::move(l));
    }
    return sc;
}

} // namespace ryd

#pragma once

/**
 * @file
 * JSON formats for circuits, QUBO instances and cut-verification reports.
 *
 *   circuit: {"n": int, "gates": [{"kind":"rot","axis":"x|y|z","q":int,"p":int}
 *                                | {"kind":"cz","q1":int,"q2":int}]}
 *   qubo:    {"n": int, "edges": [{"i":int,"j":int,"w":float}], "seed": int}
 *   cut:     {"cuts": k, "terms_executed": 10^k, "kappa": float, "value": float,
 *             "uncut_value": float|null, "abs_error": float|null}
 */

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "ansatz.hpp"
#include "error.hpp"
#include "gatecut.hpp"
#include "problems.hpp"

namespace seca {

using json = nlohmann::json;

inline json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const auto& g : c.gates) {
        if (const auto* r = std::get_if<RotationGate>(&g)) {
            gates.push_back({{"kind", "rot"}, {"axis", std::string(1, axis_char(r->axis))}, {"q", r->qubit}, {"p", r->param}});
        } else {
            const auto& cz = std::get<CzGate>(g);
            gates.push_back({{"kind", "cz"}, {"q1", cz.q1}, {"q2", cz.q2}});
        }
    }
    return {{"n", c.n_qubits}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const json& j) {
    try {
        Circuit c;
        c.n_qubits = j.at("n").get<std::size_t>();
        for (const auto& g : j.at("gates")) {
            const auto kind = g.at("kind").get<std::string>();
            if (kind == "rot") {
                const auto axis = g.at("axis").get<std::string>();
                if (axis.size() != 1) throw ArgumentError("rotation axis must be one of x, y, z");
                const auto q = g.at("q").get<std::size_t>();
                if (q >= c.n_qubits) throw IndexError("gate qubit out of range");
                c.gates.emplace_back(RotationGate{axis_from_char(axis[0]), q, g.at("p").get<std::size_t>()});
            } else if (kind == "cz") {
                const auto q1 = g.at("q1").get<std::size_t>();
                const auto q2 = g.at("q2").get<std::size_t>();
                if (q1 >= c.n_qubits || q2 >= c.n_qubits) throw IndexError("gate qubit out of range");
                if (q1 == q2) throw ArgumentError("CZ requires two distinct qubits");
                c.gates.emplace_back(CzGate{q1, q2});
            } else {
                throw ArgumentError("unknown gate kind '" + kind + "'");
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed circuit JSON: ") + e.what());
    }
}

inline json qubo_to_json(const QuboInstance& m) {
    json edges = json::array();
    for (const auto& e : m.edges()) edges.push_back({{"i", e.i}, {"j", e.j}, {"w", e.w}});
    return {{"n", m.n()}, {"edges", std::move(edges)}, {"seed", m.seed()}};
}

inline QuboInstance qubo_from_json(const json& j) {
    try {
        QuboInstance m(j.at("n").get<std::size_t>(), j.value("seed", std::uint64_t{0}));
        for (const auto& e : j.at("edges")) {
            m.set_edge(e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(), e.at("w").get<double>());
        }
        return m;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed QUBO JSON: ") + e.what());
    }
}

struct CutReport {
    std::size_t cuts = 0;
    std::uint64_t terms_executed = 0;
    double kappa = 0.0;
    double value = 0.0;
    std::optional<double> uncut_value;
    std::optional<double> abs_error;
};

inline json cut_report_to_json(const CutReport& r) {
    json j = {{"cuts", r.cuts}, {"terms_executed", r.terms_executed}, {"kappa", r.kappa}, {"value", r.value}};
    j["uncut_value"] = r.uncut_value ? json(*r.uncut_value) : json(nullptr);
    j["abs_error"] = r.abs_error ? json(*r.abs_error) : json(nullptr);
    return j;
}

}  // namespace seca

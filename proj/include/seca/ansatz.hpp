#pragma once

/**
 * @file
 * Bipartite multi-layer hardware-efficient ansatz.
 *
 * The register is split into two blocks, HEA1 = qubits [0, n/2) and
 * HEA2 = qubits [n/2, n). Every unit layer applies Rx, Ry, Rz to each qubit
 * (three fresh parameters per qubit), then a nearest-neighbour CZ chain inside
 * each block, then a single boundary CZ(n/2 - 1, n/2) if the connection scheme
 * selects that layer.
 *
 * Parameter index of (layer l, qubit q, axis a), l 1-based: 3 * (n * (l - 1) + q) + a.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "statevec.hpp"

namespace seca {

enum class SchemeKind { feca, seca, nocz, custom };

/// Which unit layers carry the boundary CZ.
class ConnectionScheme {
public:
    static ConnectionScheme feca() { return ConnectionScheme(SchemeKind::feca, {}); }
    static ConnectionScheme seca() { return ConnectionScheme(SchemeKind::seca, {}); }
    static ConnectionScheme nocz() { return ConnectionScheme(SchemeKind::nocz, {}); }
    /// 1-based layer indices.
    static ConnectionScheme custom(std::set<std::size_t> layers) {
        return ConnectionScheme(SchemeKind::custom, std::move(layers));
    }

    [[nodiscard]] SchemeKind kind() const noexcept { return kind_; }

    /// Middle layer used by SECA: (L + 1) / 2 for odd L, L / 2 for even L.
    static std::size_t middle_layer(std::size_t layers) noexcept { return (layers + 1) / 2; }

    /// Resolves the scheme to its concrete layer set for a circuit of `layers` layers.
    [[nodiscard]] std::set<std::size_t> connected_layers(std::size_t layers) const {
        switch (kind_) {
            case SchemeKind::feca: {
                std::set<std::size_t> all;
                for (std::size_t l = 1; l <= layers; ++l) all.insert(l);
                return all;
            }
            case SchemeKind::seca: return {middle_layer(layers)};
            case SchemeKind::nocz: return {};
            case SchemeKind::custom: break;
        }
        for (std::size_t l : custom_) {
            if (l < 1 || l > layers) {
                throw ArgumentError("custom connection layer " + std::to_string(l) +
                                    " outside 1.." + std::to_string(layers));
            }
        }
        return custom_;
    }

    [[nodiscard]] std::string name() const {
        switch (kind_) {
            case SchemeKind::feca: return "FECA";
            case SchemeKind::seca: return "SECA";
            case SchemeKind::nocz: return "NoCZ";
            case SchemeKind::custom: break;
        }
        std::string s = "Custom{";
        bool first = true;
        for (std::size_t l : custom_) {
            if (!first) s += ',';
            s += std::to_string(l);
            first = false;
        }
        return s + "}";
    }

    /// Accepts "FECA", "SECA", "NoCZ" (case-insensitive).
    static ConnectionScheme parse(std::string name) {
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (name == "feca") return feca();
        if (name == "seca") return seca();
        if (name == "nocz") return nocz();
        throw ArgumentError("unknown connection scheme '" + name + "'");
    }

private:
    ConnectionScheme(SchemeKind kind, std::set<std::size_t> layers)
        : kind_(kind), custom_(std::move(layers)) {}

    SchemeKind kind_;
    std::set<std::size_t> custom_;
};

/// Spread `n_cz` connected layers evenly over 1..L.
///
/// Connection k (0-based) sits at the layer containing the point
/// (k + 1/2) L / n_cz. Adjacent points are at least one layer apart, so the
/// layers are distinct; n_cz == 1 lands on the SECA middle layer and
/// n_cz == L yields every layer.
inline ConnectionScheme ncz_sweep_scheme(std::size_t layers, std::size_t n_cz) {
    if (n_cz > layers) {
        throw ArgumentError("cannot place " + std::to_string(n_cz) + " connections in " +
                            std::to_string(layers) + " layers");
    }
    std::set<std::size_t> chosen;
    for (std::size_t k = 0; k < n_cz; ++k) {
        // Integer form of ceil((2k + 1) L / (2 n_cz)).
        const std::size_t num = (2 * k + 1) * layers;
        const std::size_t den = 2 * n_cz;
        chosen.insert((num + den - 1) / den);
    }
    return ConnectionScheme::custom(std::move(chosen));
}

enum class IntraEntangler { linear_chain, none };

struct AnsatzSpec {
    std::size_t n_qubits = 4;
    std::size_t layers = 1;
    ConnectionScheme scheme = ConnectionScheme::seca();
    IntraEntangler intra = IntraEntangler::linear_chain;

    void validate() const {
        if (n_qubits < 2 || n_qubits % 2 != 0) {
            throw ArgumentError("bipartite ansatz needs an even qubit count >= 2, got " +
                                std::to_string(n_qubits));
        }
        if (n_qubits > kMaxQubits) throw CapacityError("ansatz qubit count exceeds simulator capacity");
        if (layers < 1) throw ArgumentError("ansatz needs at least one layer");
        (void)scheme.connected_layers(layers);
    }

    [[nodiscard]] std::size_t half() const noexcept { return n_qubits / 2; }

    [[nodiscard]] std::string descriptor() const {
        std::string s = scheme.name() + " n=" + std::to_string(n_qubits) + " L=" + std::to_string(layers);
        if (intra == IntraEntangler::none) s += " intra=none";
        return s;
    }
};

inline std::size_t param_count(const AnsatzSpec& spec) { return 3 * spec.n_qubits * spec.layers; }

inline std::size_t param_index(const AnsatzSpec& spec, std::size_t layer, std::size_t qubit, Axis axis) {
    return 3 * (spec.n_qubits * (layer - 1) + qubit) + static_cast<std::size_t>(axis);
}

struct RotationGate {
    Axis axis;
    std::size_t qubit;
    std::size_t param;
    friend bool operator==(const RotationGate&, const RotationGate&) = default;
};

struct CzGate {
    std::size_t q1;
    std::size_t q2;
    friend bool operator==(const CzGate&, const CzGate&) = default;
};

using Gate = std::variant<RotationGate, CzGate>;

/// Executable gate list. Parameters are referenced by index into theta.
struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;

    [[nodiscard]] std::size_t param_count() const {
        std::size_t count = 0;
        for (const auto& g : gates) {
            if (const auto* r = std::get_if<RotationGate>(&g)) count = std::max(count, r->param + 1);
        }
        return count;
    }

    [[nodiscard]] std::size_t cz_count() const {
        return static_cast<std::size_t>(std::count_if(
            gates.begin(), gates.end(), [](const Gate& g) { return std::holds_alternative<CzGate>(g); }));
    }

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

inline Circuit build(const AnsatzSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n_qubits;
    const std::size_t h = spec.half();
    const auto connected = spec.scheme.connected_layers(spec.layers);
    Circuit c;
    c.n_qubits = n;
    c.gates.reserve(param_count(spec) + spec.layers * n);
    for (std::size_t l = 1; l <= spec.layers; ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            for (Axis a : {Axis::x, Axis::y, Axis::z}) {
                c.gates.emplace_back(RotationGate{a, q, param_index(spec, l, q, a)});
            }
        }
        if (spec.intra == IntraEntangler::linear_chain) {
            for (std::size_t q = 0; q + 1 < h; ++q) c.gates.emplace_back(CzGate{q, q + 1});
            for (std::size_t q = h; q + 1 < n; ++q) c.gates.emplace_back(CzGate{q, q + 1});
        }
        if (connected.contains(l)) c.gates.emplace_back(CzGate{h - 1, h});
    }
    return c;
}

/// Intra-block chains plus boundary connections.
inline std::size_t cz_count(const AnsatzSpec& spec) {
    spec.validate();
    const std::size_t intra = spec.intra == IntraEntangler::linear_chain ? 2 * (spec.half() - 1) : 0;
    return spec.layers * intra + spec.scheme.connected_layers(spec.layers).size();
}

inline void apply_circuit(const Circuit& circuit, std::span<const double> theta, StateVector& state) {
    if (state.n_qubits() != circuit.n_qubits) throw ArgumentError("circuit / state size mismatch");
    for (const auto& g : circuit.gates) {
        if (const auto* r = std::get_if<RotationGate>(&g)) {
            if (r->param >= theta.size()) throw IndexError("parameter index out of range");
            apply_rotation(state, r->axis, r->qubit, theta[r->param]);
        } else {
            const auto& cz = std::get<CzGate>(g);
            apply_cz(state, cz.q1, cz.q2);
        }
    }
}

inline StateVector prepare(const Circuit& circuit, std::span<const double> theta) {
    if (theta.size() != circuit.param_count()) {
        throw ArgumentError("expected " + std::to_string(circuit.param_count()) + " parameters, got " +
                            std::to_string(theta.size()));
    }
    StateVector s(circuit.n_qubits);
    apply_circuit(circuit, theta, s);
    return s;
}

inline StateVector prepare(const AnsatzSpec& spec, std::span<const double> theta) {
    if (theta.size() != param_count(spec)) {
        throw ArgumentError("expected " + std::to_string(param_count(spec)) + " parameters, got " +
                            std::to_string(theta.size()));
    }
    return prepare(build(spec), theta);
}

/// Uniform [0, 2pi) parameter vector.
inline std::vector<double> sample_parameters(std::size_t count, Rng& rng) {
    std::vector<double> theta(count);
    for (auto& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return theta;
}

}  // namespace seca

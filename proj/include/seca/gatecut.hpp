#pragma once

/**
 * @file
 * Gate cutting of the boundary CZ.
 *
 * Up to a global phase CZ = exp(i pi Z_a / 4) exp(i pi Z_b / 4) exp(-i pi Z_a Z_b / 4).
 * The two single-qubit phases stay in each half as fixed Rz(-pi/2) gates. The
 * ZZ rotation (theta = -pi/4) is replaced by the quasi-probability expansion
 *
 *   S(e^{i theta Z Z}) = cos^2 S(I x I) + sin^2 S(Z x Z)
 *     + (cos sin / 8) sum_{a1,a2 = +-1} a1 a2 [ S((I + a1 Z) x (I + i a2 Z))
 *                                             + S((I + i a1 Z) x (I + a2 Z)) ]
 *
 * with S(I + a Z) = 4 S(P_a), P_a = (I + a Z)/2, and S(I + i a Z) = 2 S(Rz(-a pi/2)).
 * Every term is a product of single-Kraus local maps, so each half stays a
 * pure (unnormalized) statevector and per-half expectations multiply.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "ansatz.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "statevec.hpp"

namespace seca {

enum class LocalOpKind { identity, pauli_z, proj_z, rot_z_quarter };

/// Single-qubit map applied on one side of a cut. `sign` selects the
/// projector P_sign = (I + sign Z)/2 or the rotation exp(i sign pi Z / 4).
struct LocalCutOp {
    LocalOpKind kind = LocalOpKind::identity;
    int sign = 1;

    void apply(StateVector& s, std::size_t qubit) const {
        switch (kind) {
            case LocalOpKind::identity: break;
            case LocalOpKind::pauli_z: apply_z(s, qubit); break;
            case LocalOpKind::proj_z: apply_z_projector(s, qubit, sign); break;
            case LocalOpKind::rot_z_quarter:
                apply_rotation(s, Axis::z, qubit, -static_cast<double>(sign) * std::numbers::pi / 2.0);
                break;
        }
    }

    [[nodiscard]] std::string name() const {
        const char* sg = sign > 0 ? "+" : "-";
        switch (kind) {
            case LocalOpKind::identity: return "I";
            case LocalOpKind::pauli_z: return "Z";
            case LocalOpKind::proj_z: return std::string("P") + sg;
            case LocalOpKind::rot_z_quarter: return std::string("R") + sg;
        }
        return "?";
    }
};

struct CutTerm {
    double coefficient;
    LocalCutOp op_a;
    LocalCutOp op_b;
};

struct CutEnsemble {
    std::vector<CutTerm> terms;

    /// Sampling-overhead factor sum |c_i|.
    [[nodiscard]] double kappa() const {
        double k = 0.0;
        for (const auto& t : terms) k += std::abs(t.coefficient);
        return k;
    }
};

/// The ten local terms replacing exp(-i pi Z Z / 4) (the CZ core).
inline CutEnsemble cz_cut_ensemble() {
    constexpr double theta = -std::numbers::pi / 4.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // 1/8 from the expansion, 4 from S(I + aZ) = 4 S(P_a), 2 from S(I + iaZ) = 2 S(R_a).
    const double cross = c * s / 8.0 * 4.0 * 2.0;
    CutEnsemble e;
    e.terms.push_back({c * c, {LocalOpKind::identity, 1}, {LocalOpKind::identity, 1}});
    e.terms.push_back({s * s, {LocalOpKind::pauli_z, 1}, {LocalOpKind::pauli_z, 1}});
    for (int a1 : {1, -1}) {
        for (int a2 : {1, -1}) {
            const double w = cross * a1 * a2;
            e.terms.push_back({w, {LocalOpKind::proj_z, a1}, {LocalOpKind::rot_z_quarter, a2}});
            e.terms.push_back({w, {LocalOpKind::rot_z_quarter, a1}, {LocalOpKind::proj_z, a2}});
        }
    }
    return e;
}

// ---------------------------------------------------------------------------
// Half circuits

struct FixedRotation {
    Axis axis;
    std::size_t qubit;
    double angle;
};

/// Placeholder where the selected term's local op for cut `cut` is applied.
struct CutSlot {
    std::size_t qubit;
    std::size_t cut;
};

using HalfGate = std::variant<RotationGate, CzGate, FixedRotation, CutSlot>;

/// One block of the bipartition with qubits renumbered from 0. Rotation gates
/// keep their global parameter index.
struct HalfCircuit {
    std::size_t n_qubits = 0;
    std::size_t offset = 0;  // global index of local qubit 0
    std::vector<HalfGate> gates;

    /// Runs the half with `choice[c]` as the local op of cut c.
    [[nodiscard]] StateVector run(std::span<const double> theta, std::span<const LocalCutOp> choice) const {
        StateVector s(n_qubits);
        for (const auto& g : gates) {
            if (const auto* r = std::get_if<RotationGate>(&g)) {
                apply_rotation(s, r->axis, r->qubit, theta[r->param]);
            } else if (const auto* cz = std::get_if<CzGate>(&g)) {
                apply_cz(s, cz->q1, cz->q2);
            } else if (const auto* f = std::get_if<FixedRotation>(&g)) {
                apply_rotation(s, f->axis, f->qubit, f->angle);
            } else {
                const auto& slot = std::get<CutSlot>(g);
                choice[slot.cut].apply(s, slot.qubit);
            }
        }
        return s;
    }
};

struct SplitCircuit {
    HalfCircuit a;
    HalfCircuit b;
    std::size_t n_qubits = 0;
    std::size_t param_count = 0;
    std::size_t cuts = 0;
    std::vector<std::size_t> cut_layers;  // filled when split from an AnsatzSpec
};

/// Splits a circuit at n/2. Every CZ crossing the bipartition becomes a cut.
inline SplitCircuit split(const Circuit& circuit) {
    const std::size_t n = circuit.n_qubits;
    if (n < 2 || n % 2 != 0) throw ArgumentError("splitting needs an even qubit count");
    const std::size_t h = n / 2;
    SplitCircuit out;
    out.n_qubits = n;
    out.param_count = circuit.param_count();
    out.a.n_qubits = h;
    out.a.offset = 0;
    out.b.n_qubits = h;
    out.b.offset = h;
    auto side = [h](std::size_t q) { return q >= h; };
    for (const auto& g : circuit.gates) {
        if (const auto* r = std::get_if<RotationGate>(&g)) {
            HalfCircuit& half = side(r->qubit) ? out.b : out.a;
            half.gates.emplace_back(RotationGate{r->axis, r->qubit - half.offset, r->param});
            continue;
        }
        const auto& cz = std::get<CzGate>(g);
        if (side(cz.q1) == side(cz.q2)) {
            HalfCircuit& half = side(cz.q1) ? out.b : out.a;
            half.gates.emplace_back(CzGate{cz.q1 - half.offset, cz.q2 - half.offset});
            continue;
        }
        const std::size_t qa = side(cz.q1) ? cz.q2 : cz.q1;
        const std::size_t qb = (side(cz.q1) ? cz.q1 : cz.q2) - h;
        const double phase = -std::numbers::pi / 2.0;  // exp(i pi Z / 4) == Rz(-pi/2)
        out.a.gates.emplace_back(FixedRotation{Axis::z, qa, phase});
        out.a.gates.emplace_back(CutSlot{qa, out.cuts});
        out.b.gates.emplace_back(FixedRotation{Axis::z, qb, phase});
        out.b.gates.emplace_back(CutSlot{qb, out.cuts});
        ++out.cuts;
    }
    return out;
}

inline SplitCircuit split(const AnsatzSpec& spec) {
    SplitCircuit out = split(build(spec));
    const auto layers = spec.scheme.connected_layers(spec.layers);
    out.cut_layers.assign(layers.begin(), layers.end());
    return out;
}

/// True if no gate of either half reaches outside its register.
inline bool halves_are_local(const SplitCircuit& sc) {
    for (const HalfCircuit* half : {&sc.a, &sc.b}) {
        for (const auto& g : half->gates) {
            const bool ok = std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, CzGate>) return x.q1 < half->n_qubits && x.q2 < half->n_qubits;
                    else return x.qubit < half->n_qubits;
                },
                g);
            if (!ok) return false;
        }
    }
    return true;
}

inline constexpr std::size_t kMaxOverheadCuts = 18;

/// Number of sub-circuit combinations for k cuts with `terms` terms each.
inline std::uint64_t overhead(std::size_t k_cuts, std::size_t terms = 10) {
    if (k_cuts > kMaxOverheadCuts) {
        throw CapacityError("overhead for " + std::to_string(k_cuts) + " cuts overflows (limit " +
                            std::to_string(kMaxOverheadCuts) + ")");
    }
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k_cuts; ++i) r *= terms;
    return r;
}

struct CutResult {
    double value = 0.0;
    std::size_t cuts = 0;
    std::uint64_t terms_executed = 0;
    double kappa = 0.0;
};

namespace detail {

/// Restriction of a Pauli string to qubits [offset, offset + count).
inline PauliString restrict_pauli(const PauliString& p, std::size_t offset, std::size_t count) {
    const auto letters = p.letters();
    return PauliString(1.0, std::vector<Pauli>(letters.begin() + static_cast<std::ptrdiff_t>(offset),
                                               letters.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

struct FactorizedTerm {
    double coefficient;
    PauliString a;
    PauliString b;
};

inline std::vector<FactorizedTerm> factorize(const SplitCircuit& sc, const PauliObservable& obs) {
    if (obs.n_qubits() != sc.n_qubits) throw ArgumentError("observable / circuit size mismatch");
    std::vector<FactorizedTerm> out;
    for (const auto& t : obs.terms()) {
        out.push_back({t.coefficient(), restrict_pauli(t, 0, sc.a.n_qubits),
                       restrict_pauli(t, sc.a.n_qubits, sc.b.n_qubits)});
    }
    return out;
}

/// sum_t c_t <P_t^a><P_t^b> for one combination of local ops.
inline double combination_value(const SplitCircuit& sc, const std::vector<FactorizedTerm>& fterms,
                                 std::span<const double> theta, std::span<const LocalCutOp> ops_a,
                                 std::span<const LocalCutOp> ops_b) {
    const StateVector sa = sc.a.run(theta, ops_a);
    const StateVector sb = sc.b.run(theta, ops_b);
    complex_t v{0.0, 0.0};
    for (const auto& ft : fterms) v += ft.coefficient * pauli_expectation_raw(sa, ft.a) * pauli_expectation_raw(sb, ft.b);
    return v.real();
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultCutBudget = 1'000'000;

/// Exact reconstruction: evaluates all terms^k combinations.
inline CutResult execute_cut(const SplitCircuit& sc, const CutEnsemble& ensemble, std::span<const double> theta,
                             const PauliObservable& obs, std::uint64_t budget = kDefaultCutBudget,
                             unsigned threads = 0) {
    if (theta.size() != sc.param_count) {
        throw ArgumentError("expected " + std::to_string(sc.param_count) + " parameters, got " +
                            std::to_string(theta.size()));
    }
    if (ensemble.terms.empty()) throw ArgumentError("empty cut ensemble");
    const std::size_t k = sc.cuts;
    const std::size_t n_terms = ensemble.terms.size();
    if (k > kMaxOverheadCuts) throw CapacityError("cut count " + std::to_string(k) + " exceeds overhead limit");
    const std::uint64_t combos = overhead(k, n_terms);
    if (combos > budget) {
        throw CapacityError(std::to_string(n_terms) + "^" + std::to_string(k) + " = " + std::to_string(combos) +
                            " sub-circuit combinations exceed the budget of " + std::to_string(budget));
    }
    const auto fterms = detail::factorize(sc, obs);
    std::vector<double> contrib(combos);
    parallel_for(
        combos,
        [&](std::size_t idx) {
            std::vector<LocalCutOp> ops_a(k);
            std::vector<LocalCutOp> ops_b(k);
            double coef = 1.0;
            std::size_t rest = idx;
            for (std::size_t c = 0; c < k; ++c) {
                const auto& term = ensemble.terms[rest % n_terms];
                rest /= n_terms;
                coef *= term.coefficient;
                ops_a[c] = term.op_a;
                ops_b[c] = term.op_b;
            }
            contrib[idx] = coef * detail::combination_value(sc, fterms, theta, ops_a, ops_b);
        },
        threads);
    CutResult r;
    for (double x : contrib) r.value += x;
    r.cuts = k;
    r.terms_executed = combos;
    r.kappa = ensemble.kappa();
    return r;
}

/// Monte-Carlo estimate: each sample draws one term per cut with probability
/// |c| / kappa and weights the result by kappa^k times the sign product.
inline CutResult sample_cut(const SplitCircuit& sc, const CutEnsemble& ensemble, std::span<const double> theta,
                            const PauliObservable& obs, std::size_t n_samples, std::uint64_t seed) {
    if (theta.size() != sc.param_count) throw ArgumentError("parameter count mismatch");
    if (n_samples < 1) throw ArgumentError("need at least one sample");
    const std::size_t k = sc.cuts;
    const double kappa = ensemble.kappa();
    const auto fterms = detail::factorize(sc, obs);
    double sum = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng(seed, "cut-sample", i);
        std::vector<LocalCutOp> ops_a(k);
        std::vector<LocalCutOp> ops_b(k);
        double weight = 1.0;
        for (std::size_t c = 0; c < k; ++c) {
            double u = rng.uniform() * kappa;
            std::size_t pick = ensemble.terms.size() - 1;
            for (std::size_t t = 0; t < ensemble.terms.size(); ++t) {
                u -= std::abs(ensemble.terms[t].coefficient);
                if (u < 0.0) {
                    pick = t;
                    break;
                }
            }
            const auto& term = ensemble.terms[pick];
            weight *= kappa * (term.coefficient < 0.0 ? -1.0 : 1.0);
            ops_a[c] = term.op_a;
            ops_b[c] = term.op_b;
        }
        sum += weight * detail::combination_value(sc, fterms, theta, ops_a, ops_b);
    }
    return {sum / static_cast<double>(n_samples), k, n_samples, kappa};
}

struct CzRatio {
    std::size_t s_cz;
    std::size_t s_feca;
    double ratio;
};

/// CZ count relative to FECA at the same (n, L).
inline CzRatio r_cz(const AnsatzSpec& spec) {
    AnsatzSpec full = spec;
    full.scheme = ConnectionScheme::feca();
    const std::size_t s = cz_count(spec);
    const std::size_t f = cz_count(full);
    return {s, f, static_cast<double>(s) / static_cast<double>(f)};
}

}  // namespace seca

#pragma once

/**
 * @file
 * Circuit characterization: expressibility (KL divergence of the sampled
 * fidelity distribution from the Haar one), entangling capability (mean
 * Meyer-Wallach measure) and the variance of one cost-gradient component.
 *
 * Every estimator derives an independent RNG stream per sample from
 * (seed, purpose, sample index), so results do not depend on the worker count.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ansatz.hpp"
#include "error.hpp"
#include "gradient.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "statevec.hpp"

namespace seca {

inline constexpr std::size_t kDefaultBins = 50;
inline constexpr std::size_t kDefaultExpPairs = 5000;
inline constexpr std::size_t kDefaultEntSamples = 1000;
inline constexpr std::size_t kDefaultGradSamples = 500;

// ---------------------------------------------------------------------------
// Expressibility

/// Haar fidelity density (N - 1)(1 - F)^(N - 2) for Hilbert dimension N.
inline double haar_fidelity_pdf(double fidelity, std::size_t dim) {
    if (dim < 2) throw ArgumentError("Hilbert dimension must be at least 2");
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ArgumentError("fidelity must lie in [0, 1]");
    const double n = static_cast<double>(dim);
    return (n - 1.0) * std::pow(1.0 - fidelity, n - 2.0);
}

/// Haar probability mass of [lo, hi]: (1 - lo)^(N-1) - (1 - hi)^(N-1).
inline double haar_bin_probability(double lo, double hi, std::size_t dim) {
    if (dim < 2) throw ArgumentError("Hilbert dimension must be at least 2");
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) throw ArgumentError("bin bounds must satisfy 0 <= lo < hi <= 1");
    const double e = static_cast<double>(dim) - 1.0;
    return std::pow(1.0 - lo, e) - std::pow(1.0 - hi, e);
}

/// Counts of fidelities in `bins` equal-width bins over [0, 1]. F == 1 (and
/// round-off above it) falls in the last bin.
inline std::vector<std::size_t> fidelity_histogram(std::span<const double> fidelities, std::size_t bins) {
    if (bins < 2) throw ArgumentError("need at least 2 bins");
    std::vector<std::size_t> counts(bins, 0);
    for (double f : fidelities) {
        if (!std::isfinite(f)) throw NumericalError("non-finite fidelity");
        const double clamped = std::min(std::max(f, 0.0), 1.0);
        const auto b = std::min(static_cast<std::size_t>(clamped * static_cast<double>(bins)), bins - 1);
        ++counts[b];
    }
    return counts;
}

/// D_KL(P_sample || P_Haar) over equal-width bins with analytic Haar masses.
/// Empty sample bins contribute 0.
inline double kl_from_fidelities(std::span<const double> fidelities, std::size_t bins, std::size_t dim) {
    if (fidelities.empty()) throw ArgumentError("no fidelity samples");
    const auto counts = fidelity_histogram(fidelities, bins);
    const double total = static_cast<double>(fidelities.size());
    double kl = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        if (counts[b] == 0) continue;
        const double p = static_cast<double>(counts[b]) / total;
        const double lo = static_cast<double>(b) / static_cast<double>(bins);
        const double hi = static_cast<double>(b + 1) / static_cast<double>(bins);
        const double q = haar_bin_probability(lo, hi, dim);
        if (!(q > 0.0)) {
            // (1 - lo)^(N-1) underflows for very large N; the divergence is then unbounded.
            throw NumericalError("Haar bin mass underflowed to zero");
        }
        kl += p * std::log(p / q);
    }
    return std::max(kl, 0.0);
}

struct ExpressibilityReport {
    double kl_divergence = 0.0;
    std::size_t bins = kDefaultBins;
    std::size_t n_pairs = 0;
    std::size_t n_qubits = 0;
    std::string spec;
};

/// Samples n_pairs independent (theta, phi) pairs uniformly from [0, 2pi)^P
/// and compares the fidelity histogram with the Haar distribution.
inline ExpressibilityReport estimate_expressibility(const AnsatzSpec& spec, std::size_t n_pairs,
                                                    std::size_t bins, std::uint64_t seed,
                                                    unsigned threads = 0) {
    if (bins < 2) throw ArgumentError("need at least 2 bins");
    if (n_pairs < 1) throw ArgumentError("need at least one fidelity pair");
    const Circuit circuit = build(spec);
    const std::size_t p = param_count(spec);
    std::vector<double> fidelities(n_pairs);
    parallel_for(
        n_pairs,
        [&](std::size_t i) {
            Rng rng(seed, "expressibility", i);
            const auto theta = sample_parameters(p, rng);
            const auto phi = sample_parameters(p, rng);
            fidelities[i] = fidelity(prepare(circuit, theta), prepare(circuit, phi));
        },
        threads);
    return {kl_from_fidelities(fidelities, bins, std::size_t{1} << spec.n_qubits), bins, n_pairs,
            spec.n_qubits, spec.descriptor()};
}

// ---------------------------------------------------------------------------
// Entangling capability

/// Meyer-Wallach measure (4/n) sum_k D(Gamma_k(0)|psi>, Gamma_k(1)|psi>).
///
/// Gamma_k(b) keeps the amplitudes whose bit k equals b and deletes that bit.
/// The generalized distance (1/2) sum_ij |u_i v_j - u_j v_i|^2 is evaluated
/// through the Lagrange identity |u|^2 |v|^2 - |<u, v>|^2.
inline double meyer_wallach(const StateVector& s) {
    const std::size_t n = s.n_qubits();
    if (n < 2) throw ArgumentError("Meyer-Wallach measure needs at least 2 qubits");
    const auto amp = s.amplitudes();
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t stride = std::size_t{1} << k;
        double nu = 0.0;
        double nv = 0.0;
        complex_t overlap{0.0, 0.0};
        for (std::size_t block = 0; block < amp.size(); block += 2 * stride) {
            for (std::size_t i0 = block; i0 < block + stride; ++i0) {
                const complex_t u = amp[i0];
                const complex_t v = amp[i0 + stride];
                nu += std::norm(u);
                nv += std::norm(v);
                overlap += std::conj(u) * v;
            }
        }
        total += nu * nv - std::norm(overlap);
    }
    const double mw = 4.0 / static_cast<double>(n) * total;
    return std::min(std::max(mw, 0.0), 1.0);
}

struct EntReport {
    double ent = 0.0;
    std::size_t n_samples = 0;
    std::string spec;
};

inline EntReport estimate_entangling_capability(const AnsatzSpec& spec, std::size_t n_samples,
                                                std::uint64_t seed, unsigned threads = 0) {
    if (n_samples < 1) throw ArgumentError("need at least one sample");
    spec.validate();
    const Circuit circuit = build(spec);
    const std::size_t p = param_count(spec);
    std::vector<double> values(n_samples);
    parallel_for(
        n_samples,
        [&](std::size_t i) {
            Rng rng(seed, "entangling", i);
            values[i] = meyer_wallach(prepare(circuit, sample_parameters(p, rng)));
        },
        threads);
    double sum = 0.0;
    for (double v : values) sum += v;
    return {sum / static_cast<double>(n_samples), n_samples, spec.descriptor()};
}

// ---------------------------------------------------------------------------
// Gradient variance

/// Z on the two boundary qubits (n/2 - 1, n/2).
inline PauliObservable boundary_zz_observable(std::size_t n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0) throw ArgumentError("boundary probe needs an even qubit count");
    PauliObservable obs(n_qubits);
    obs.add(PauliString::sparse(n_qubits, 1.0, {{n_qubits / 2 - 1, Pauli::Z}, {n_qubits / 2, Pauli::Z}}));
    return obs;
}

struct GradVarReport {
    double variance = 0.0;
    double mean = 0.0;
    std::size_t param_index = 0;
    std::string observable;
    std::size_t n_samples = 0;
    std::string spec;
};

/// Population mean and variance of dC/dtheta_k over uniform random theta.
inline GradVarReport estimate_gradient_variance(const AnsatzSpec& spec, const PauliObservable& obs,
                                                std::size_t param_idx, std::size_t n_samples,
                                                std::uint64_t seed, unsigned threads = 0,
                                                std::string observable_name = "custom") {
    const std::size_t p = param_count(spec);
    if (param_idx >= p) {
        throw ArgumentError("parameter index " + std::to_string(param_idx) + " out of range for " +
                            std::to_string(p) + " parameters");
    }
    if (n_samples < 1) throw ArgumentError("need at least one sample");
    if (obs.n_qubits() != spec.n_qubits) throw ArgumentError("observable / ansatz size mismatch");
    const Circuit circuit = build(spec);
    std::vector<double> grads(n_samples);
    parallel_for(
        n_samples,
        [&](std::size_t i) {
            Rng rng(seed, "gradient", i);
            const auto theta = sample_parameters(p, rng);
            grads[i] = parameter_shift_component(circuit, obs, theta, param_idx);
        },
        threads);
    double mean = 0.0;
    for (double g : grads) mean += g;
    mean /= static_cast<double>(n_samples);
    double var = 0.0;
    for (double g : grads) var += (g - mean) * (g - mean);
    var /= static_cast<double>(n_samples);
    return {var, mean, param_idx, std::move(observable_name), n_samples, spec.descriptor()};
}

/// Relative change of a metric against a baseline, in percent.
inline double growth_rate(double candidate, double baseline) {
    if (baseline == 0.0) throw DomainError("growth rate undefined for a zero baseline");
    return (candidate - baseline) / baseline * 100.0;
}

}  // namespace seca

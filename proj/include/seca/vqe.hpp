#pragma once

/**
 * @file
 * Variational eigensolver loop on exact statevector energies.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "ansatz.hpp"
#include "error.hpp"
#include "gradient.hpp"
#include "parallel.hpp"
#include "problems.hpp"
#include "rng.hpp"
#include "statevec.hpp"

namespace seca {

enum class Optimizer { adam, vanilla_gd };
enum class InitPolicy { uniform_0_2pi, small_normal };

struct TrainConfig {
    std::size_t max_steps = 500;
    double learning_rate = 0.05;
    Optimizer optimizer = Optimizer::adam;
    std::uint64_t seed = 0;
    InitPolicy init = InitPolicy::uniform_0_2pi;
    // Adam moments.
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    // Standard deviation for InitPolicy::small_normal.
    double init_scale = 0.1;

    void validate() const {
        if (max_steps < 1) throw ArgumentError("max_steps must be at least 1");
        if (!(learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
    }
};

/// Constants of the V-score: degrees of freedom and energy zero point.
struct VScoreConvention {
    std::size_t n_dof = 0;  // 0 selects the qubit count
    double e_inf = 0.0;
};

struct TrainRecord {
    std::size_t step;
    double energy;
    double e_var;
    double v_score;  // NaN when energy == e_inf
};

struct TrainTrace {
    TrainRecord initial;              // step 0, before any update
    std::vector<TrainRecord> records;  // one per optimizer step, evaluated after the update
    std::vector<double> final_theta;
    std::size_t n_dof = 0;
    double e_inf = 0.0;

    [[nodiscard]] const TrainRecord& final_record() const { return records.empty() ? initial : records.back(); }
};

/// V-score that reports NaN instead of throwing when the score is undefined.
inline double v_score_or_nan(double energy, double e_var, std::size_t n_dof, double e_inf) {
    if (energy == e_inf) return std::numeric_limits<double>::quiet_NaN();
    return v_score({energy, e_var, n_dof, e_inf});
}

inline std::vector<double> initial_parameters(std::size_t count, const TrainConfig& config) {
    Rng rng(config.seed, "init");
    std::vector<double> theta(count);
    for (auto& t : theta) {
        t = config.init == InitPolicy::uniform_0_2pi ? rng.uniform(0.0, 2.0 * std::numbers::pi)
                                                     : config.init_scale * rng.normal();
    }
    return theta;
}

inline TrainRecord evaluate_record(const Circuit& circuit, const PauliObservable& obs,
                                   std::span<const double> theta, std::size_t step, std::size_t n_dof,
                                   double e_inf) {
    const auto m = energy_moments(prepare(circuit, theta), obs);
    if (!std::isfinite(m.energy) || !std::isfinite(m.variance)) {
        throw NumericalError("non-finite energy at step " + std::to_string(step));
    }
    const double e_var = std::max(m.variance, 0.0);
    return {step, m.energy, e_var, v_score_or_nan(m.energy, e_var, n_dof, e_inf)};
}

inline TrainTrace train(const AnsatzSpec& spec, const PauliObservable& obs, const TrainConfig& config,
                        VScoreConvention vs = {}) {
    config.validate();
    if (obs.n_qubits() != spec.n_qubits) throw ArgumentError("observable / ansatz size mismatch");
    const Circuit circuit = build(spec);
    const std::size_t p = param_count(spec);
    const std::size_t n_dof = vs.n_dof == 0 ? spec.n_qubits : vs.n_dof;

    TrainTrace trace;
    trace.n_dof = n_dof;
    trace.e_inf = vs.e_inf;
    trace.records.reserve(config.max_steps);

    std::vector<double> theta = initial_parameters(p, config);
    trace.initial = evaluate_record(circuit, obs, theta, 0, n_dof, vs.e_inf);

    std::vector<double> m(p, 0.0);
    std::vector<double> v(p, 0.0);
    double b1t = 1.0;
    double b2t = 1.0;
    for (std::size_t step = 1; step <= config.max_steps; ++step) {
        const auto grad = parameter_shift_grad(circuit, obs, theta);
        if (config.optimizer == Optimizer::adam) {
            b1t *= config.beta1;
            b2t *= config.beta2;
            for (std::size_t k = 0; k < p; ++k) {
                m[k] = config.beta1 * m[k] + (1.0 - config.beta1) * grad[k];
                v[k] = config.beta2 * v[k] + (1.0 - config.beta2) * grad[k] * grad[k];
                const double mh = m[k] / (1.0 - b1t);
                const double vh = v[k] / (1.0 - b2t);
                theta[k] -= config.learning_rate * mh / (std::sqrt(vh) + config.epsilon);
            }
        } else {
            for (std::size_t k = 0; k < p; ++k) theta[k] -= config.learning_rate * grad[k];
        }
        trace.records.push_back(evaluate_record(circuit, obs, theta, step, n_dof, vs.e_inf));
    }
    trace.final_theta = std::move(theta);
    return trace;
}

/// Basis index with the largest probability (lowest index on ties).
inline std::uint64_t most_probable_basis_state(const StateVector& s) {
    std::uint64_t best = 0;
    double best_p = -1.0;
    const auto amp = s.amplitudes();
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const double p = std::norm(amp[i]);
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Repeated trials

/// One training setup. `observable` receives the repetition seed so problems
/// with random instances (QUBO) draw a fresh instance per repetition.
struct Experiment {
    AnsatzSpec ansatz;
    std::function<PauliObservable(std::uint64_t seed)> observable;
    TrainConfig config;
    VScoreConvention vscore;
};

struct RepeatEntry {
    std::size_t rep;
    std::uint64_t seed;
    double final_energy;
    double final_v_score;
};

struct RepeatStats {
    std::vector<RepeatEntry> entries;
    std::vector<TrainTrace> traces;
    double mean_energy = 0.0;
    double var_energy = 0.0;
    double mean_v_score = 0.0;
    double var_v_score = 0.0;
};

namespace detail {

inline std::pair<double, double> mean_and_variance(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return {mean, var / static_cast<double>(xs.size())};
}

}  // namespace detail

/// Runs `reps` trainings with seeds base_seed .. base_seed + reps - 1.
/// Mean and (population) variance are taken over the final records.
inline RepeatStats repeat_experiment(const Experiment& exp, std::size_t reps, std::uint64_t base_seed,
                                     unsigned threads = 0) {
    if (reps < 1) throw ArgumentError("need at least one repetition");
    if (!exp.observable) throw ArgumentError("experiment has no observable factory");
    RepeatStats stats;
    stats.entries.resize(reps);
    stats.traces.resize(reps);
    parallel_for(
        reps,
        [&](std::size_t r) {
            const std::uint64_t seed = base_seed + r;
            TrainConfig cfg = exp.config;
            cfg.seed = seed;
            stats.traces[r] = train(exp.ansatz, exp.observable(seed), cfg, exp.vscore);
            const auto& last = stats.traces[r].final_record();
            stats.entries[r] = {r, seed, last.energy, last.v_score};
        },
        threads);
    std::vector<double> energies;
    std::vector<double> scores;
    for (const auto& e : stats.entries) {
        energies.push_back(e.final_energy);
        scores.push_back(e.final_v_score);
    }
    std::tie(stats.mean_energy, stats.var_energy) = detail::mean_and_variance(energies);
    std::tie(stats.mean_v_score, stats.var_v_score) = detail::mean_and_variance(scores);
    return stats;
}

}  // namespace seca

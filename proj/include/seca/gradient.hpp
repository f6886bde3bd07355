#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ansatz.hpp"
#include "statevec.hpp"

namespace seca {

/// C(theta) = <psi(theta)|H|psi(theta)>.
inline double cost(const Circuit& circuit, const PauliObservable& obs, std::span<const double> theta) {
    return expectation(prepare(circuit, theta), obs);
}

/// dC/dtheta_k by the two-term shift rule, exact for exp(-i theta sigma / 2)
/// rotations: [C(theta + pi/2 e_k) - C(theta - pi/2 e_k)] / 2.
///
/// Each parameter appears in exactly one gate of an ansatz circuit, so the
/// two-term rule applies without summing over gate occurrences.
inline double parameter_shift_component(const Circuit& circuit, const PauliObservable& obs,
                                        std::span<const double> theta, std::size_t k) {
    if (k >= theta.size()) {
        throw ArgumentError("parameter index " + std::to_string(k) + " out of range for " +
                            std::to_string(theta.size()) + " parameters");
    }
    std::vector<double> shifted(theta.begin(), theta.end());
    constexpr double shift = std::numbers::pi / 2.0;
    shifted[k] = theta[k] + shift;
    const double plus = cost(circuit, obs, shifted);
    shifted[k] = theta[k] - shift;
    const double minus = cost(circuit, obs, shifted);
    return 0.5 * (plus - minus);
}

inline std::vector<double> parameter_shift_grad(const Circuit& circuit, const PauliObservable& obs,
                                                std::span<const double> theta) {
    if (theta.size() != circuit.param_count()) {
        throw ArgumentError("expected " + std::to_string(circuit.param_count()) + " parameters, got " +
                            std::to_string(theta.size()));
    }
    std::vector<double> grad(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) grad[k] = parameter_shift_component(circuit, obs, theta, k);
    return grad;
}

inline std::vector<double> parameter_shift_grad(const AnsatzSpec& spec, const PauliObservable& obs,
                                                std::span<const double> theta) {
    if (theta.size() != param_count(spec)) {
        throw ArgumentError("expected " + std::to_string(param_count(spec)) + " parameters, got " +
                            std::to_string(theta.size()));
    }
    return parameter_shift_grad(build(spec), obs, theta);
}

}  // namespace seca

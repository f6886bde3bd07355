#pragma once

/**
 * @file
 * Benchmark Hamiltonians (1D Heisenberg chain, QUBO mapped to Ising form),
 * exact reference solvers and the V-score accuracy metric.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "rng.hpp"
#include "statevec.hpp"

namespace seca {

// ---------------------------------------------------------------------------
// Heisenberg chain

enum class Boundary { periodic, open };

struct HeisenbergSpec {
    std::size_t n_sites = 2;
    double coupling = 1.0;
    Boundary boundary = Boundary::periodic;
};

/// H = J sum_i S_i . S_{i+1} with S = sigma / 2, i.e. (J/4)(XX + YY + ZZ) per bond.
/// A periodic two-site chain has a single bond.
inline PauliObservable heisenberg(const HeisenbergSpec& spec) {
    const std::size_t n = spec.n_sites;
    if (n < 2) throw ArgumentError("Heisenberg chain needs at least 2 sites");
    std::vector<std::pair<std::size_t, std::size_t>> bonds;
    for (std::size_t i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
    if (spec.boundary == Boundary::periodic && n > 2) bonds.emplace_back(n - 1, 0);
    PauliObservable obs(n);
    const double c = spec.coupling / 4.0;
    for (auto [a, b] : bonds) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) obs.add(PauliString::sparse(n, c, {{a, p}, {b, p}}));
    }
    return obs;
}

// ---------------------------------------------------------------------------
// QUBO

struct QuboEdge {
    std::size_t i;
    std::size_t j;
    double w;
};

/// Symmetric weight matrix with zero diagonal; C(x) = sum_{i,j} x_i M_ij x_j.
class QuboInstance {
public:
    explicit QuboInstance(std::size_t n, std::uint64_t seed = 0) : n_(n), seed_(seed), m_(n * n, 0.0) {
        if (n < 1) throw ArgumentError("QUBO needs at least one vertex");
    }

    QuboInstance(std::size_t n, std::span<const QuboEdge> edges, std::uint64_t seed = 0) : QuboInstance(n, seed) {
        for (const auto& e : edges) set_edge(e.i, e.j, e.w);
    }

    void set_edge(std::size_t i, std::size_t j, double w) {
        if (i >= n_ || j >= n_) throw IndexError("QUBO edge endpoint out of range");
        if (i == j) throw ArgumentError("QUBO weight matrix must have a zero diagonal");
        m_[i * n_ + j] = w;
        m_[j * n_ + i] = w;
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] double weight(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }

    /// Nonzero pairs with i < j, in row-major order.
    [[nodiscard]] std::vector<QuboEdge> edges() const {
        std::vector<QuboEdge> out;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (m_[i * n_ + j] != 0.0) out.push_back({i, j, m_[i * n_ + j]});
            }
        }
        return out;
    }

    /// 2E / (n(n-1)).
    [[nodiscard]] double density() const {
        if (n_ < 2) return 0.0;
        return 2.0 * static_cast<double>(edges().size()) / static_cast<double>(n_ * (n_ - 1));
    }

private:
    std::size_t n_;
    std::uint64_t seed_;
    std::vector<double> m_;
};

/// Edge count for a target density: round(D n (n - 1) / 2).
inline std::size_t qubo_edge_count(std::size_t n, double density) {
    if (!(density > 0.0 && density <= 1.0)) throw ArgumentError("graph density must lie in (0, 1]");
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<std::size_t>(std::llround(density * pairs));
}

/// Random instance with exactly qubo_edge_count(n, D) distinct edges and
/// weights uniform on [w_lo, w_hi].
inline QuboInstance random_qubo(std::size_t n, double density, std::uint64_t seed, double w_lo = -1.0,
                                double w_hi = 1.0) {
    if (n < 2) throw ArgumentError("random QUBO needs at least 2 vertices");
    if (!(w_lo < w_hi)) throw ArgumentError("weight range must satisfy lo < hi");
    const std::size_t e = qubo_edge_count(n, density);
    if (e < 1) throw ArgumentError("density " + std::to_string(density) + " yields no edges for n = " + std::to_string(n));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    Rng rng(seed, "qubo");
    // Partial Fisher-Yates: the first e slots become a uniform random subset.
    for (std::size_t k = 0; k < e; ++k) {
        const std::size_t r = k + static_cast<std::size_t>(rng.below(pairs.size() - k));
        std::swap(pairs[k], pairs[r]);
    }
    QuboInstance inst(n, seed);
    for (std::size_t k = 0; k < e; ++k) {
        double w = 0.0;
        while (w == 0.0) w = rng.uniform(w_lo, w_hi);
        inst.set_edge(pairs[k].first, pairs[k].second, w);
    }
    return inst;
}

/// Cost of a bitmask assignment (bit i = x_i).
inline double qubo_cost_bits(const QuboInstance& m, std::uint64_t x) {
    double c = 0.0;
    const std::size_t n = m.n();
    for (std::size_t i = 0; i < n; ++i) {
        if (!((x >> i) & 1U)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if ((x >> j) & 1U) c += m.weight(i, j);
        }
    }
    return c;
}

inline double qubo_cost(std::span<const int> x, const QuboInstance& m) {
    if (x.size() != m.n()) throw ArgumentError("assignment length must equal the vertex count");
    if (m.n() > 64) throw CapacityError("QUBO assignments are limited to 64 variables");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0 && x[i] != 1) throw ArgumentError("QUBO assignment entries must be 0 or 1");
        if (x[i]) bits |= std::uint64_t{1} << i;
    }
    return qubo_cost_bits(m, bits);
}

/// Ising form of a QUBO instance.
///
/// couplings/fields follow J_ij = -M_ij and h_i = -sum_j M_ij. Basis state
/// |x> has Z_i = 1 - 2 x_i, so the substitution used is x_i = (1 - Z_i)/2 and
/// `observable` = sum_{i<j} (M_ij/2) Z_i Z_j - sum_i (r_i/2) Z_i with
/// r_i = sum_j M_ij. `observable + offset` evaluated on |x> equals C(x).
struct IsingForm {
    PauliObservable observable;
    double offset = 0.0;
    std::vector<double> couplings;  // n x n, J_ij for i < j (row-major)
    std::vector<double> fields;     // h_i
};

inline IsingForm to_ising(const QuboInstance& m) {
    const std::size_t n = m.n();
    IsingForm f{PauliObservable(n), 0.0, std::vector<double>(n * n, 0.0), std::vector<double>(n, 0.0)};
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += m.weight(i, j);
        total += row;
        f.fields[i] = -row;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = m.weight(i, j);
            f.couplings[i * n + j] = -w;
            if (w != 0.0) f.observable.add(PauliString::sparse(n, 0.5 * w, {{i, Pauli::Z}, {j, Pauli::Z}}));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (f.fields[i] != 0.0) f.observable.add(PauliString::sparse(n, 0.5 * f.fields[i], {{i, Pauli::Z}}));
    }
    f.offset = 0.25 * total;
    return f;
}

/// Diagonal of a Z-only observable evaluated on basis index x.
inline double diagonal_energy(const PauliObservable& obs, std::uint64_t x) {
    double e = 0.0;
    for (const auto& t : obs.terms()) {
        if (!t.is_diagonal()) throw ArgumentError("diagonal_energy requires a Z-only observable");
        e += (std::popcount(x & t.z_mask()) & 1U) ? -t.coefficient() : t.coefficient();
    }
    return e;
}

inline constexpr std::size_t kMaxBruteForce = 20;

struct QuboSolution {
    std::vector<int> x;
    double cost;
};

/// Exhaustive minimum; ties go to the smallest integer value of x (bit i = x_i).
inline QuboSolution brute_force_min(const QuboInstance& m) {
    const std::size_t n = m.n();
    if (n > kMaxBruteForce) throw CapacityError("brute force limited to " + std::to_string(kMaxBruteForce) + " variables");
    const auto edges = m.edges();
    std::uint64_t best_x = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        double c = 0.0;
        for (const auto& e : edges) {
            if (((x >> e.i) & 1U) && ((x >> e.j) & 1U)) c += 2.0 * e.w;
        }
        if (c < best) {
            best = c;
            best_x = x;
        }
    }
    QuboSolution s{std::vector<int>(n), best};
    for (std::size_t i = 0; i < n; ++i) s.x[i] = static_cast<int>((best_x >> i) & 1U);
    return s;
}

// ---------------------------------------------------------------------------
// Exact diagonalization

inline constexpr std::size_t kMaxExactQubits = 12;

/// Dense 2^n x 2^n matrix of a Pauli observable.
inline Eigen::MatrixXcd dense_matrix(const PauliObservable& obs) {
    const std::size_t n = obs.n_qubits();
    if (n > kMaxExactQubits) throw CapacityError("dense matrices limited to " + std::to_string(kMaxExactQubits) + " qubits");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : obs.terms()) {
        const complex_t phase = t.coefficient() * detail::i_power(t.y_count());
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto ju = static_cast<std::uint64_t>(j);
            const bool odd = std::popcount(ju & t.z_mask()) & 1U;
            h(static_cast<Eigen::Index>(ju ^ t.x_mask()), j) += odd ? -phase : phase;
        }
    }
    return h;
}

struct GroundState {
    double energy;
    StateVector state;
};

/// Lowest eigenpair of the dense matrix.
inline GroundState exact_ground_state(const PauliObservable& obs) {
    const std::size_t n = obs.n_qubits();
    if (n > kMaxExactQubits) throw CapacityError("exact ground state limited to " + std::to_string(kMaxExactQubits) + " qubits");
    const Eigen::MatrixXcd h = dense_matrix(obs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");
    const Eigen::VectorXcd v = solver.eigenvectors().col(0);
    std::vector<complex_t> amps(v.data(), v.data() + v.size());
    StateVector s(n, std::move(amps));
    s.normalize();
    return {solver.eigenvalues()(0), std::move(s)};
}

/// Smallest eigenvalue. Z-only observables are read off the diagonal.
inline double exact_ground(const PauliObservable& obs) {
    const std::size_t n = obs.n_qubits();
    if (n > kMaxExactQubits) throw CapacityError("exact ground energy limited to " + std::to_string(kMaxExactQubits) + " qubits");
    if (obs.is_diagonal()) {
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) best = std::min(best, diagonal_energy(obs, x));
        return best;
    }
    const Eigen::MatrixXcd h = dense_matrix(obs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");
    return solver.eigenvalues()(0);
}

// ---------------------------------------------------------------------------
// V-score

struct VScoreInputs {
    double e_vqe;
    double e_var;
    std::size_t n_dof;
    double e_inf = 0.0;
};

/// N E_var / (E_VQE - E_inf)^2.
inline double v_score(const VScoreInputs& in) {
    const double gap = in.e_vqe - in.e_inf;
    if (gap == 0.0) throw DomainError("V-score undefined when E_VQE equals E_inf");
    return static_cast<double>(in.n_dof) * in.e_var / (gap * gap);
}

}  // namespace seca

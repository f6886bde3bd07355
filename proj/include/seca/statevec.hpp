#pragma once

/**
 * @file
 * Dense statevector simulator. Qubit 0 is the least-significant bit of the
 * basis index. Gates are applied in place with stride iteration; no gate
 * matrices are materialized.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace seca {

using complex_t = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 24;
inline constexpr std::size_t kMaxHaarQubits = 12;

enum class Axis { x, y, z };
enum class Pauli : std::uint8_t { I, X, Y, Z };

inline char axis_char(Axis a) { return a == Axis::x ? 'x' : (a == Axis::y ? 'y' : 'z'); }

inline Axis axis_from_char(char c) {
    switch (c) {
        case 'x': case 'X': return Axis::x;
        case 'y': case 'Y': return Axis::y;
        case 'z': case 'Z': return Axis::z;
        default: throw ArgumentError(std::string("unknown rotation axis '") + c + "'");
    }
}

class StateVector {
public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw CapacityError("qubit count " + std::to_string(n_qubits) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
        }
        amplitudes_.assign(std::size_t{1} << n_qubits, complex_t{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    StateVector(std::size_t n_qubits, std::vector<complex_t> amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw CapacityError("qubit count " + std::to_string(n_qubits) + " out of range");
        }
        if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
            throw ArgumentError("amplitude count must be 2^n_qubits");
        }
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<complex_t> amplitudes() noexcept { return amplitudes_; }

    complex_t& operator[](std::size_t i) noexcept { return amplitudes_[i]; }
    const complex_t& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& a : amplitudes_) s += std::norm(a);
        return s;
    }

    void normalize() {
        const double n = std::sqrt(norm_squared());
        if (!(n > 0.0)) throw NumericalError("cannot normalize a zero state");
        for (auto& a : amplitudes_) a /= n;
    }

    void reset() {
        std::fill(amplitudes_.begin(), amplitudes_.end(), complex_t{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

private:
    std::size_t n_qubits_;
    std::vector<complex_t> amplitudes_;
};

inline StateVector init_zero(std::size_t n) { return StateVector(n); }

namespace detail {

inline void check_qubit(const StateVector& s, std::size_t q) {
    if (q >= s.n_qubits()) {
        throw IndexError("qubit " + std::to_string(q) + " out of range for " +
                         std::to_string(s.n_qubits()) + "-qubit state");
    }
}

/// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
inline void apply_single(StateVector& s, std::size_t q, complex_t m00, complex_t m01,
                         complex_t m10, complex_t m11) {
    auto amp = s.amplitudes();
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t dim = amp.size();
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t i0 = block; i0 < block + stride; ++i0) {
            const std::size_t i1 = i0 + stride;
            const complex_t a0 = amp[i0];
            const complex_t a1 = amp[i1];
            amp[i0] = m00 * a0 + m01 * a1;
            amp[i1] = m10 * a0 + m11 * a1;
        }
    }
}

}  // namespace detail

/// R_axis(angle) = exp(-i angle sigma_axis / 2) on one qubit.
inline void apply_rotation(StateVector& s, Axis axis, std::size_t qubit, double angle) {
    detail::check_qubit(s, qubit);
    const double c = std::cos(0.5 * angle);
    const double sn = std::sin(0.5 * angle);
    switch (axis) {
        case Axis::x:
            detail::apply_single(s, qubit, {c, 0.0}, {0.0, -sn}, {0.0, -sn}, {c, 0.0});
            break;
        case Axis::y:
            detail::apply_single(s, qubit, {c, 0.0}, {-sn, 0.0}, {sn, 0.0}, {c, 0.0});
            break;
        case Axis::z: {
            auto amp = s.amplitudes();
            const std::size_t mask = std::size_t{1} << qubit;
            const complex_t p0{c, -sn};
            const complex_t p1{c, sn};
            for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= (i & mask) ? p1 : p0;
            break;
        }
    }
}

/// Controlled-Z: negates every amplitude whose index has both bits set.
inline void apply_cz(StateVector& s, std::size_t q1, std::size_t q2) {
    detail::check_qubit(s, q1);
    detail::check_qubit(s, q2);
    if (q1 == q2) throw ArgumentError("CZ requires two distinct qubits");
    const std::size_t mask = (std::size_t{1} << q1) | (std::size_t{1} << q2);
    auto amp = s.amplitudes();
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if ((i & mask) == mask) amp[i] = -amp[i];
    }
}

/// Non-unitary (I + sign Z)/2 on one qubit: keeps the Z = sign component.
inline void apply_z_projector(StateVector& s, std::size_t qubit, int sign) {
    detail::check_qubit(s, qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    const bool keep_one = sign < 0;
    auto amp = s.amplitudes();
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if (static_cast<bool>(i & mask) != keep_one) amp[i] = 0.0;
    }
}

/// Pauli Z on one qubit.
inline void apply_z(StateVector& s, std::size_t qubit) {
    detail::check_qubit(s, qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    auto amp = s.amplitudes();
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if (i & mask) amp[i] = -amp[i];
    }
}

// ---------------------------------------------------------------------------
// Pauli observables

class PauliString {
public:
    PauliString(double coefficient, std::vector<Pauli> letters)
        : coefficient_(coefficient), letters_(std::move(letters)) {
        if (letters_.empty()) throw ArgumentError("Pauli string must act on at least one qubit");
        compute_masks();
    }

    /// Parses "XIZ..." where character k acts on qubit k.
    PauliString(double coefficient, std::string_view letters) : coefficient_(coefficient) {
        if (letters.empty()) throw ArgumentError("Pauli string must act on at least one qubit");
        letters_.reserve(letters.size());
        for (char c : letters) {
            switch (c) {
                case 'I': letters_.push_back(Pauli::I); break;
                case 'X': letters_.push_back(Pauli::X); break;
                case 'Y': letters_.push_back(Pauli::Y); break;
                case 'Z': letters_.push_back(Pauli::Z); break;
                default: throw ArgumentError(std::string("invalid Pauli letter '") + c + "'");
            }
        }
        compute_masks();
    }

    /// Identity everywhere except the listed (qubit, letter) pairs.
    static PauliString sparse(std::size_t n, double coefficient,
                              std::initializer_list<std::pair<std::size_t, Pauli>> ops) {
        std::vector<Pauli> letters(n, Pauli::I);
        for (auto [q, p] : ops) {
            if (q >= n) throw IndexError("Pauli operator on qubit " + std::to_string(q) + " out of range");
            letters[q] = p;
        }
        return PauliString(coefficient, std::move(letters));
    }

    [[nodiscard]] double coefficient() const noexcept { return coefficient_; }
    [[nodiscard]] std::span<const Pauli> letters() const noexcept { return letters_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return letters_.size(); }
    [[nodiscard]] std::uint64_t x_mask() const noexcept { return x_mask_; }
    [[nodiscard]] std::uint64_t z_mask() const noexcept { return z_mask_; }
    [[nodiscard]] unsigned y_count() const noexcept { return y_count_; }
    [[nodiscard]] bool is_identity() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }
    [[nodiscard]] bool is_diagonal() const noexcept { return x_mask_ == 0; }

    [[nodiscard]] std::string to_string() const {
        std::string s;
        for (Pauli p : letters_) s.push_back("IXYZ"[static_cast<int>(p)]);
        return s;
    }

private:
    void compute_masks() {
        if (letters_.size() > 64) throw CapacityError("Pauli strings are limited to 64 qubits");
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            const std::uint64_t bit = std::uint64_t{1} << q;
            switch (letters_[q]) {
                case Pauli::I: break;
                case Pauli::X: x_mask_ |= bit; break;
                case Pauli::Y: x_mask_ |= bit; z_mask_ |= bit; ++y_count_; break;
                case Pauli::Z: z_mask_ |= bit; break;
            }
        }
    }

    double coefficient_;
    std::vector<Pauli> letters_;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
    unsigned y_count_ = 0;
};

class PauliObservable {
public:
    explicit PauliObservable(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits < 1) throw ArgumentError("observable must act on at least one qubit");
    }

    PauliObservable(std::size_t n_qubits, std::vector<PauliString> terms) : PauliObservable(n_qubits) {
        for (auto& t : terms) add(std::move(t));
    }

    void add(PauliString term) {
        if (term.n_qubits() != n_qubits_) {
            throw ArgumentError("Pauli term acts on " + std::to_string(term.n_qubits()) +
                                " qubits, observable on " + std::to_string(n_qubits_));
        }
        terms_.push_back(std::move(term));
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::span<const PauliString> terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_diagonal() const noexcept {
        for (const auto& t : terms_) {
            if (!t.is_diagonal()) return false;
        }
        return true;
    }

private:
    std::size_t n_qubits_;
    std::vector<PauliString> terms_;
};

namespace detail {

inline complex_t i_power(unsigned k) {
    switch (k % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Accumulates weight * P|psi> into out.
inline void accumulate_pauli(std::span<const complex_t> psi, const PauliString& p, complex_t weight,
                             std::span<complex_t> out) {
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    const complex_t w = weight * i_power(p.y_count());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const bool odd = std::popcount(static_cast<std::uint64_t>(i) & zm) & 1U;
        out[i ^ xm] += odd ? -w * psi[i] : w * psi[i];
    }
}

}  // namespace detail

/// <psi|P|psi> for a single Pauli string (coefficient excluded). The state is
/// not renormalized, which the gate-cutting reconstruction relies on.
inline complex_t pauli_expectation_raw(const StateVector& s, const PauliString& p) {
    if (p.n_qubits() != s.n_qubits()) throw ArgumentError("Pauli string / state size mismatch");
    const auto psi = s.amplitudes();
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    complex_t acc{0.0, 0.0};
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const bool odd = std::popcount(static_cast<std::uint64_t>(i) & zm) & 1U;
        const complex_t v = std::conj(psi[i ^ xm]) * psi[i];
        acc += odd ? -v : v;
    }
    return acc * detail::i_power(p.y_count());
}

/// Complex sum_k c_k <psi|P_k|psi>; the imaginary part is round-off only.
inline complex_t expectation_complex(const StateVector& s, const PauliObservable& obs) {
    if (obs.n_qubits() != s.n_qubits()) {
        throw ArgumentError("observable acts on " + std::to_string(obs.n_qubits()) +
                            " qubits, state has " + std::to_string(s.n_qubits()));
    }
    complex_t acc{0.0, 0.0};
    for (const auto& t : obs.terms()) acc += t.coefficient() * pauli_expectation_raw(s, t);
    return acc;
}

inline double expectation(const StateVector& s, const PauliObservable& obs) {
    return expectation_complex(s, obs).real();
}

/// H|psi> as a dense vector.
inline std::vector<complex_t> apply_observable(const StateVector& s, const PauliObservable& obs) {
    if (obs.n_qubits() != s.n_qubits()) throw ArgumentError("observable / state size mismatch");
    std::vector<complex_t> out(s.dim(), complex_t{0.0, 0.0});
    for (const auto& t : obs.terms()) detail::accumulate_pauli(s.amplitudes(), t, t.coefficient(), out);
    return out;
}

/// Energy and variance <H^2> - <H>^2 from one application of H.
struct EnergyMoments {
    double energy;
    double variance;
};

inline EnergyMoments energy_moments(const StateVector& s, const PauliObservable& obs) {
    const auto h_psi = apply_observable(s, obs);
    const auto psi = s.amplitudes();
    complex_t mean{0.0, 0.0};
    double second = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        mean += std::conj(psi[i]) * h_psi[i];
        second += std::norm(h_psi[i]);
    }
    return {mean.real(), second - mean.real() * mean.real()};
}

inline double observable_variance(const StateVector& s, const PauliObservable& obs) {
    return energy_moments(s, obs).variance;
}

inline complex_t inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) throw ArgumentError("inner product of states with different sizes");
    complex_t acc{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

/// |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

/// Tr(rho_q^2) of the single-qubit marginal.
inline double reduced_purity(const StateVector& s, std::size_t qubit) {
    detail::check_qubit(s, qubit);
    const auto amp = s.amplitudes();
    const std::size_t stride = std::size_t{1} << qubit;
    double r00 = 0.0;
    double r11 = 0.0;
    complex_t r01{0.0, 0.0};
    for (std::size_t block = 0; block < amp.size(); block += 2 * stride) {
        for (std::size_t i0 = block; i0 < block + stride; ++i0) {
            const complex_t a0 = amp[i0];
            const complex_t a1 = amp[i0 + stride];
            r00 += std::norm(a0);
            r11 += std::norm(a1);
            r01 += a0 * std::conj(a1);
        }
    }
    return r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
}

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
inline StateVector sample_haar_state(std::size_t n, Rng& rng) {
    if (n < 1 || n > kMaxHaarQubits) {
        throw CapacityError("Haar sampling supports 1.." + std::to_string(kMaxHaarQubits) + " qubits");
    }
    std::vector<complex_t> amps(std::size_t{1} << n);
    for (auto& a : amps) {
        const double re = rng.normal();
        const double im = rng.normal();
        a = {re, im};
    }
    StateVector s(n, std::move(amps));
    s.normalize();
    return s;
}

}  // namespace seca

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seca/rng.hpp"
#include "seca/statevec.hpp"

using namespace seca;
using std::numbers::pi;

namespace {

StateVector random_state(std::size_t n, std::uint64_t seed) {
    Rng rng(seed, "test-state");
    return sample_haar_state(n, rng);
}

}  // namespace

TEST(StateVector, StartsInZeroState) {
    StateVector s(3);
    EXPECT_EQ(s.dim(), 8u);
    EXPECT_EQ(s[0], complex_t(1.0, 0.0));
    for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(s[i], complex_t(0.0, 0.0));
}

TEST(StateVector, RejectsBadSizes) {
    EXPECT_THROW(StateVector(0), CapacityError);
    EXPECT_THROW(StateVector(kMaxQubits + 1), CapacityError);
    EXPECT_THROW(StateVector(2, std::vector<complex_t>(3)), std::exception);
}

TEST(Gates, RxPiFlipsQubit) {
    StateVector s(1);
    apply_rotation(s, Axis::x, 0, pi);
    EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
    EXPECT_NEAR(s[1].imag(), -1.0, 1e-15);
}

TEST(Gates, QubitZeroIsLeastSignificant) {
    StateVector s(3);
    apply_rotation(s, Axis::y, 0, pi);
    EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
    StateVector t(3);
    apply_rotation(t, Axis::y, 2, pi);
    EXPECT_NEAR(std::abs(t[4]), 1.0, 1e-15);
}

TEST(Gates, CzOnPlusPlus) {
    StateVector s(2);
    apply_rotation(s, Axis::y, 0, pi / 2);
    apply_rotation(s, Axis::y, 1, pi / 2);
    apply_cz(s, 0, 1);
    EXPECT_NEAR(s[0].real(), 0.5, 1e-15);
    EXPECT_NEAR(s[1].real(), 0.5, 1e-15);
    EXPECT_NEAR(s[2].real(), 0.5, 1e-15);
    EXPECT_NEAR(s[3].real(), -0.5, 1e-15);
}

TEST(Gates, CzErrors) {
    StateVector s(2);
    EXPECT_THROW(apply_cz(s, 1, 1), ArgumentError);
    EXPECT_THROW(apply_cz(s, 0, 2), IndexError);
    EXPECT_THROW(apply_rotation(s, Axis::x, 5, 0.1), IndexError);
}

TEST(Gates, CzIsSymmetricAndInvolutive) {
    auto a = random_state(4, 1);
    auto b = a;
    apply_cz(a, 1, 3);
    apply_cz(b, 3, 1);
    for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a[i], b[i]);
    apply_cz(a, 1, 3);
    EXPECT_NEAR(fidelity(a, random_state(4, 1)), 1.0, 1e-14);
}

TEST(Gates, RotationsMatchMatrixOracle) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed, "rot");
        const std::size_t n = 1 + rng.below(5);
        auto s = random_state(n, seed);
        const auto axis = static_cast<Axis>(rng.below(3));
        const std::size_t q = rng.below(n);
        const double t = rng.uniform(-4.0, 4.0);
        const oracle::Vec expect = oracle::embed(oracle::rotation(axis, t), q, n) * oracle::to_eigen(s);
        apply_rotation(s, axis, q, t);
        const auto got = oracle::to_eigen(s);
        EXPECT_LT((got - expect).norm(), 1e-13);
    }
}

TEST(Gates, UnitaryPreservesNorm) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto s = random_state(5, seed);
        Rng rng(seed, "norm");
        for (int k = 0; k < 50; ++k) {
            if (rng.below(4) == 0) {
                const std::size_t a = rng.below(5);
                const std::size_t b = (a + 1 + rng.below(4)) % 5;
                apply_cz(s, a, b);
            } else {
                apply_rotation(s, static_cast<Axis>(rng.below(3)), rng.below(5), rng.uniform(0.0, 2 * pi));
            }
        }
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    }
}

TEST(Gates, ProjectorsSumToIdentity) {
    auto s = random_state(3, 4);
    auto plus = s;
    auto minus = s;
    apply_z_projector(plus, 1, +1);
    apply_z_projector(minus, 1, -1);
    for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_NEAR(std::abs(plus[i] + minus[i] - s[i]), 0.0, 1e-15);
    auto z = s;
    apply_z(z, 1);
    for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_NEAR(std::abs(plus[i] - minus[i] - z[i]), 0.0, 1e-15);
}

TEST(Pauli, StringParsing) {
    PauliString p(0.5, "XIYZ");
    EXPECT_EQ(p.n_qubits(), 4u);
    EXPECT_EQ(p.x_mask(), 0b0101u);
    EXPECT_EQ(p.z_mask(), 0b1100u);
    EXPECT_EQ(p.y_count(), 1u);
    EXPECT_EQ(p.to_string(), "XIYZ");
    EXPECT_THROW(PauliString(1.0, "XQ"), ArgumentError);
    EXPECT_THROW(PauliString(1.0, ""), ArgumentError);
    EXPECT_THROW(PauliString::sparse(3, 1.0, {{3, Pauli::X}}), IndexError);
}

TEST(Pauli, ZExpectationOnBasisStates) {
    StateVector s(2);
    apply_rotation(s, Axis::x, 1, pi);
    PauliObservable obs(2, {PauliString(1.0, "ZI"), PauliString(2.0, "IZ")});
    EXPECT_NEAR(expectation(s, obs), 1.0 - 2.0, 1e-14);
}

TEST(Pauli, ObservableSizeMismatch) {
    PauliObservable obs(3);
    EXPECT_THROW(obs.add(PauliString(1.0, "XX")), ArgumentError);
    StateVector s(2);
    EXPECT_THROW(expectation(s, obs), ArgumentError);
}

TEST(Pauli, ExpectationMatchesMatrixOracle) {
    const char letters[] = "IXYZ";
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed, "pauli");
        const std::size_t n = 1 + rng.below(5);
        PauliObservable obs(n);
        for (int t = 0; t < 4; ++t) {
            std::string w;
            for (std::size_t q = 0; q < n; ++q) w.push_back(letters[rng.below(4)]);
            obs.add(PauliString(rng.uniform(-2.0, 2.0), w));
        }
        const auto s = random_state(n, seed + 100);
        const auto psi = oracle::to_eigen(s);
        const oracle::Mat h = oracle::observable(obs);
        EXPECT_NEAR(expectation(s, obs), oracle::expectation(h, psi), 1e-12);
        EXPECT_NEAR(expectation_complex(s, obs).imag(), 0.0, 1e-12);
        const auto m = energy_moments(s, obs);
        const double e2 = oracle::expectation(h * h, psi);
        EXPECT_NEAR(m.variance, e2 - m.energy * m.energy, 1e-11);
        const auto hpsi = apply_observable(s, obs);
        const oracle::Vec expect = h * psi;
        for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_NEAR(std::abs(hpsi[i] - expect(i)), 0.0, 1e-12);
    }
}

TEST(Pauli, VarianceIsZeroOnEigenstate) {
    StateVector s(3);
    PauliObservable obs(3, {PauliString(1.0, "ZZI"), PauliString(-0.5, "IIZ")});
    EXPECT_NEAR(observable_variance(s, obs), 0.0, 1e-15);
}

TEST(States, FidelityAndPurity) {
    StateVector a(2);
    StateVector b(2);
    apply_rotation(b, Axis::y, 0, pi / 2);
    EXPECT_NEAR(fidelity(a, b), 0.5, 1e-15);
    EXPECT_NEAR(reduced_purity(a, 0), 1.0, 1e-15);
    StateVector bell(2, {complex_t(1 / std::sqrt(2.0)), 0, 0, complex_t(1 / std::sqrt(2.0))});
    EXPECT_NEAR(reduced_purity(bell, 0), 0.5, 1e-15);
    EXPECT_NEAR(reduced_purity(bell, 1), 0.5, 1e-15);
}

TEST(States, HaarSamplesAreNormalizedAndSeeded) {
    Rng r1(3, "haar");
    Rng r2(3, "haar");
    auto a = sample_haar_state(4, r1);
    auto b = sample_haar_state(4, r2);
    EXPECT_NEAR(a.norm_squared(), 1.0, 1e-14);
    for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a[i], b[i]);
    Rng r3(3, "haar");
    EXPECT_THROW(sample_haar_state(kMaxHaarQubits + 1, r3), CapacityError);
}

TEST(Rng, SubStreamsAreIndependentAndStable) {
    EXPECT_EQ(derive_seed(1, "a", 0), derive_seed(1, "a", 0));
    EXPECT_NE(derive_seed(1, "a", 0), derive_seed(1, "b", 0));
    EXPECT_NE(derive_seed(1, "a", 0), derive_seed(1, "a", 1));
    EXPECT_NE(derive_seed(1, "a", 0), derive_seed(2, "a", 0));
    Rng r(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(r.below(7), 7u);
    }
}

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "seca/gatecut.hpp"
#include "seca/metrics.hpp"
#include "seca/problems.hpp"

using namespace seca;
using std::numbers::pi;

namespace {

// Ry then Rz angles for |0>, |1>, |+>, |+i>.
constexpr double kEigenAngles[4][2] = {{0.0, 0.0}, {pi, 0.0}, {pi / 2, 0.0}, {pi / 2, pi / 2}};

StateVector product_state(int a, int b) {
    StateVector s(2);
    apply_rotation(s, Axis::y, 0, kEigenAngles[a][0]);
    apply_rotation(s, Axis::z, 0, kEigenAngles[a][1]);
    apply_rotation(s, Axis::y, 1, kEigenAngles[b][0]);
    apply_rotation(s, Axis::z, 1, kEigenAngles[b][1]);
    return s;
}

std::vector<PauliObservable> two_qubit_paulis() {
    const char letters[] = "IXYZ";
    std::vector<PauliObservable> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == 0 && j == 0) continue;
            out.push_back(PauliObservable(2, {PauliString(1.0, std::string{letters[i], letters[j]})}));
        }
    return out;
}

double ensemble_expectation(const CutEnsemble& e, const StateVector& input, const PauliObservable& obs) {
    double v = 0.0;
    for (const auto& t : e.terms) {
        StateVector s = input;
        t.op_a.apply(s, 0);
        t.op_b.apply(s, 1);
        apply_rotation(s, Axis::z, 0, -pi / 2);
        apply_rotation(s, Axis::z, 1, -pi / 2);
        v += t.coefficient * expectation(s, obs);
    }
    return v;
}

}  // namespace

TEST(Ensemble, TenTermsWithExpectedCoefficients) {
    const auto e = cz_cut_ensemble();
    ASSERT_EQ(e.terms.size(), 10u);
    EXPECT_NEAR(std::abs(e.terms[0].coefficient), 0.5, 1e-15);
    EXPECT_EQ(e.terms[0].op_a.kind, LocalOpKind::identity);
    EXPECT_NEAR(std::abs(e.terms[1].coefficient), 0.5, 1e-15);
    EXPECT_EQ(e.terms[1].op_a.kind, LocalOpKind::pauli_z);
    for (std::size_t k = 2; k < 10; ++k) {
        EXPECT_NEAR(std::abs(e.terms[k].coefficient), 0.5, 1e-15);
        EXPECT_NE(e.terms[k].coefficient, 0.0);
    }
    EXPECT_NEAR(e.kappa(), 5.0, 1e-14);
}

TEST(Ensemble, ReproducesCzChannelOnTomographicBasis) {
    const auto e = cz_cut_ensemble();
    const auto paulis = two_qubit_paulis();
    ASSERT_EQ(paulis.size(), 15u);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const StateVector in = product_state(a, b);
            StateVector exact = in;
            apply_cz(exact, 0, 1);
            for (const auto& p : paulis) {
                EXPECT_NEAR(ensemble_expectation(e, in, p), expectation(exact, p), 1e-10)
                    << "state " << a << b << " obs " << p.terms()[0].to_string();
            }
        }
}

TEST(Ensemble, RandomProductStates) {
    const auto e = cz_cut_ensemble();
    PauliObservable zz(2, {PauliString(1.0, "ZZ")});
    PauliObservable xi(2, {PauliString(1.0, "XI")});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed, "prod");
        StateVector s(2);
        for (std::size_t q = 0; q < 2; ++q)
            for (Axis ax : {Axis::x, Axis::y, Axis::z}) apply_rotation(s, ax, q, rng.uniform(0.0, 2 * pi));
        StateVector exact = s;
        apply_cz(exact, 0, 1);
        EXPECT_NEAR(ensemble_expectation(e, s, zz), expectation(exact, zz), 1e-10);
        EXPECT_NEAR(ensemble_expectation(e, s, xi), expectation(exact, xi), 1e-10);
    }
}

TEST(Ensemble, CorruptedCoefficientBreaksIdentity) {
    for (std::size_t k = 0; k < 10; ++k) {
        auto e = cz_cut_ensemble();
        e.terms[k].coefficient *= 1.1;
        double worst = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const StateVector in = product_state(a, b);
                StateVector exact = in;
                apply_cz(exact, 0, 1);
                for (const auto& p : two_qubit_paulis())
                    worst = std::max(worst, std::abs(ensemble_expectation(e, in, p) - expectation(exact, p)));
            }
        EXPECT_GT(worst, 1e-3) << "term " << k;
    }
}

TEST(Split, CutPointCounts) {
    const auto seca = split(AnsatzSpec{8, 3, ConnectionScheme::seca()});
    EXPECT_EQ(seca.cuts, 1u);
    EXPECT_EQ(seca.cut_layers, (std::vector<std::size_t>{2}));
    EXPECT_EQ(split(AnsatzSpec{8, 3, ConnectionScheme::feca()}).cuts, 3u);
    EXPECT_EQ(split(AnsatzSpec{8, 3, ConnectionScheme::nocz()}).cuts, 0u);
    EXPECT_EQ(seca.a.n_qubits, 4u);
    EXPECT_EQ(seca.b.offset, 4u);
}

TEST(Split, HalvesAreLocal) {
    for (const auto& s : {ConnectionScheme::feca(), ConnectionScheme::seca(), ConnectionScheme::nocz()})
        for (std::size_t n : {2, 4, 6, 8}) EXPECT_TRUE(halves_are_local(split(AnsatzSpec{n, 4, s})));
    EXPECT_THROW(split(Circuit{3, {}}), ArgumentError);
}

TEST(Overhead, Values) {
    EXPECT_EQ(overhead(0), 1u);
    EXPECT_EQ(overhead(1), 10u);
    EXPECT_EQ(overhead(3), 1000u);
    EXPECT_EQ(overhead(18), 1'000'000'000'000'000'000u);
    EXPECT_THROW(overhead(19), CapacityError);
    EXPECT_EQ(overhead(4, 2), 16u);
}

TEST(ExecuteCut, NoCzIsSingleExactProduct) {
    const AnsatzSpec spec{6, 3, ConnectionScheme::nocz()};
    Rng rng(1, "nocz");
    const auto theta = sample_parameters(param_count(spec), rng);
    PauliObservable local(6, {PauliString(1.0, "ZXIYIZ"), PauliString(0.3, "IIIXII")});
    const auto r = execute_cut(split(spec), cz_cut_ensemble(), theta, local);
    EXPECT_EQ(r.terms_executed, 1u);
    EXPECT_EQ(r.cuts, 0u);
    EXPECT_NEAR(r.value, expectation(prepare(spec, theta), local), 1e-10);
}

TEST(ExecuteCut, SecaMatchesUncut) {
    for (std::size_t n : {4, 6, 8})
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const AnsatzSpec spec{n, 3, ConnectionScheme::seca()};
            Rng rng(seed, "cut");
            const auto theta = sample_parameters(param_count(spec), rng);
            const auto h = heisenberg({n, 1.0, Boundary::periodic});
            const auto r = execute_cut(split(spec), cz_cut_ensemble(), theta, h);
            EXPECT_EQ(r.terms_executed, 10u);
            EXPECT_NEAR(r.value, expectation(prepare(spec, theta), h), 1e-9) << spec.descriptor();
        }
}

TEST(ExecuteCut, FecaTwoCutsMatchesUncut) {
    const AnsatzSpec spec{4, 2, ConnectionScheme::feca()};
    Rng rng(5, "feca");
    const auto theta = sample_parameters(param_count(spec), rng);
    PauliObservable obs(4, {PauliString(1.0, "XYZX"), PauliString(-0.7, "IZZI"), PauliString(0.2, "YIIY")});
    const auto r = execute_cut(split(spec), cz_cut_ensemble(), theta, obs);
    EXPECT_EQ(r.terms_executed, 100u);
    EXPECT_NEAR(r.value, expectation(prepare(spec, theta), obs), 1e-9);
}

TEST(ExecuteCut, ThreadCountDoesNotChangeResult) {
    const AnsatzSpec spec{4, 3, ConnectionScheme::feca()};
    Rng rng(6, "thr");
    const auto theta = sample_parameters(param_count(spec), rng);
    const auto h = heisenberg({4, 1.0});
    const auto sc = split(spec);
    EXPECT_EQ(execute_cut(sc, cz_cut_ensemble(), theta, h, kDefaultCutBudget, 1).value,
              execute_cut(sc, cz_cut_ensemble(), theta, h, kDefaultCutBudget, 4).value);
}

TEST(ExecuteCut, BudgetAndArgumentErrors) {
    const AnsatzSpec spec{4, 3, ConnectionScheme::feca()};
    const auto sc = split(spec);
    const std::vector<double> theta(param_count(spec), 0.1);
    try {
        execute_cut(sc, cz_cut_ensemble(), theta, heisenberg({4, 1.0}), 999);
        FAIL() << "expected a capacity error";
    } catch (const CapacityError& e) {
        EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
    }
    EXPECT_THROW(execute_cut(sc, cz_cut_ensemble(), std::vector<double>(3), heisenberg({4, 1.0})), ArgumentError);
    EXPECT_THROW(execute_cut(sc, cz_cut_ensemble(), theta, heisenberg({6, 1.0})), ArgumentError);
}

TEST(SampleCut, ConvergesToExactValue) {
    const AnsatzSpec spec{4, 2, ConnectionScheme::seca()};
    Rng rng(8, "mc");
    const auto theta = sample_parameters(param_count(spec), rng);
    const auto obs = boundary_zz_observable(4);
    const auto sc = split(spec);
    const double exact = expectation(prepare(spec, theta), obs);
    const auto r = sample_cut(sc, cz_cut_ensemble(), theta, obs, 20000, 3);
    // kappa = 5 bounds each sample by 5 in magnitude, so 20000 samples give sigma < 0.036.
    EXPECT_NEAR(r.value, exact, 0.15);
    EXPECT_EQ(r.value, sample_cut(sc, cz_cut_ensemble(), theta, obs, 20000, 3).value);
}

TEST(RCz, Values) {
    for (std::size_t n : {4, 8, 12})
        for (std::size_t L : {1, 5, 20}) EXPECT_DOUBLE_EQ(r_cz({n, L, ConnectionScheme::feca()}).ratio, 1.0);
    const auto r = r_cz({8, 20, ConnectionScheme::seca()});
    EXPECT_EQ(r.s_cz, 121u);
    EXPECT_EQ(r.s_feca, 140u);
    EXPECT_NEAR(r.ratio, 121.0 / 140.0, 1e-15);
    double prev = 0.0;
    for (std::size_t n = 4; n <= 24; n += 2) {
        const double now = r_cz({n, 10, ConnectionScheme::seca()}).ratio;
        EXPECT_GT(now, prev);
        EXPECT_LT(now, 1.0);
        prev = now;
    }
}

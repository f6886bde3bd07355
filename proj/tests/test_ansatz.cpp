#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seca/ansatz.hpp"
#include "seca/gradient.hpp"
#include "seca/metrics.hpp"
#include "seca/problems.hpp"

using namespace seca;

namespace {

std::vector<std::size_t> boundary_cz_layers(const Circuit& c) {
    // Layer boundaries are recognised by the first rotation of each layer.
    const std::size_t h = c.n_qubits / 2;
    std::vector<std::size_t> layers;
    std::size_t layer = 0;
    for (const auto& g : c.gates) {
        if (const auto* r = std::get_if<RotationGate>(&g)) {
            if (r->qubit == 0 && r->axis == Axis::x) ++layer;
        } else {
            const auto& z = std::get<CzGate>(g);
            if (z.q1 == h - 1 && z.q2 == h) layers.push_back(layer);
        }
    }
    return layers;
}

}  // namespace

TEST(Ansatz, NoCzSingleLayerGateList) {
    const Circuit c = build({4, 1, ConnectionScheme::nocz()});
    ASSERT_EQ(c.gates.size(), 14u);
    for (std::size_t i = 0; i < 12; ++i) EXPECT_TRUE(std::holds_alternative<RotationGate>(c.gates[i]));
    EXPECT_EQ(std::get<CzGate>(c.gates[12]), (CzGate{0, 1}));
    EXPECT_EQ(std::get<CzGate>(c.gates[13]), (CzGate{2, 3}));
}

TEST(Ansatz, SecaConnectsMiddleLayerOnly) {
    EXPECT_EQ(boundary_cz_layers(build({8, 3, ConnectionScheme::seca()})), (std::vector<std::size_t>{2}));
    EXPECT_EQ(boundary_cz_layers(build({8, 3, ConnectionScheme::feca()})), (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(boundary_cz_layers(build({8, 4, ConnectionScheme::seca()})), (std::vector<std::size_t>{2}));
    EXPECT_TRUE(boundary_cz_layers(build({8, 3, ConnectionScheme::nocz()})).empty());
}

TEST(Ansatz, ParamCount) {
    EXPECT_EQ(param_count({4, 1}), 12u);
    EXPECT_EQ(param_count({8, 20}), 480u);
    EXPECT_EQ(param_count({12, 3}), 108u);
}

TEST(Ansatz, CzCount) {
    EXPECT_EQ(cz_count({8, 20, ConnectionScheme::feca()}), 140u);
    EXPECT_EQ(cz_count({8, 20, ConnectionScheme::seca()}), 121u);
    EXPECT_EQ(cz_count({4, 1, ConnectionScheme::nocz()}), 2u);
    for (std::size_t n : {2, 4, 6, 8})
        for (std::size_t l : {1, 2, 5})
            for (const auto& s : {ConnectionScheme::feca(), ConnectionScheme::seca(), ConnectionScheme::nocz()}) {
                AnsatzSpec spec{n, l, s};
                EXPECT_EQ(cz_count(spec), build(spec).cz_count()) << spec.descriptor();
            }
}

TEST(Ansatz, CzCountStrictlyIncreasesWithConnections) {
    std::set<std::size_t> layers;
    std::size_t prev = cz_count({8, 6, ConnectionScheme::custom(layers)});
    for (std::size_t l : {3, 1, 6, 2, 5, 4}) {
        layers.insert(l);
        const std::size_t now = cz_count({8, 6, ConnectionScheme::custom(layers)});
        EXPECT_GT(now, prev);
        prev = now;
    }
}

TEST(Ansatz, NczSweepPlacement) {
    std::set<std::size_t> all;
    for (std::size_t l = 1; l <= 20; ++l) all.insert(l);
    EXPECT_EQ(ncz_sweep_scheme(20, 20).connected_layers(20), all);
    EXPECT_EQ(ncz_sweep_scheme(20, 1).connected_layers(20), (std::set<std::size_t>{10}));
    const auto two = ncz_sweep_scheme(3, 2).connected_layers(3);
    EXPECT_EQ(two.size(), 2u);
    EXPECT_EQ(two, ncz_sweep_scheme(3, 2).connected_layers(3));
    EXPECT_TRUE(ncz_sweep_scheme(7, 0).connected_layers(7).empty());
    EXPECT_THROW(ncz_sweep_scheme(3, 4), ArgumentError);
    for (std::size_t L = 1; L <= 30; ++L)
        for (std::size_t k = 0; k <= L; ++k) {
            const auto s = ncz_sweep_scheme(L, k).connected_layers(L);
            EXPECT_EQ(s.size(), k) << "L=" << L << " k=" << k;
            if (k == 1) {
                EXPECT_EQ(*s.begin(), ConnectionScheme::middle_layer(L));
            }
        }
}

TEST(Ansatz, SchemeEquivalences) {
    for (std::size_t L : {1, 2, 5, 8}) {
        std::set<std::size_t> all;
        for (std::size_t l = 1; l <= L; ++l) all.insert(l);
        EXPECT_EQ(build({6, L, ConnectionScheme::feca()}), build({6, L, ConnectionScheme::custom(all)}));
        EXPECT_EQ(build({6, L, ConnectionScheme::seca()}),
                  build({6, L, ConnectionScheme::custom({ConnectionScheme::middle_layer(L)})}));
        EXPECT_EQ(build({6, L, ConnectionScheme::nocz()}), build({6, L, ConnectionScheme::custom({})}));
    }
}

TEST(Ansatz, EveryParameterAppearsOnce) {
    const AnsatzSpec spec{6, 4, ConnectionScheme::feca()};
    const Circuit c = build(spec);
    std::vector<int> seen(param_count(spec), 0);
    for (const auto& g : c.gates)
        if (const auto* r = std::get_if<RotationGate>(&g)) ++seen[r->param];
    for (int s : seen) EXPECT_EQ(s, 1);
    EXPECT_EQ(c.param_count(), param_count(spec));
    EXPECT_EQ(param_index(spec, 2, 1, Axis::y), 3 * (6 + 1) + 1);
}

TEST(Ansatz, Validation) {
    EXPECT_THROW(build({3, 2}), ArgumentError);
    EXPECT_THROW(build({0, 2}), ArgumentError);
    EXPECT_THROW(build({4, 0}), ArgumentError);
    EXPECT_THROW(build({4, 2, ConnectionScheme::custom({3})}), ArgumentError);
    EXPECT_THROW(ConnectionScheme::parse("half"), ArgumentError);
    EXPECT_EQ(ConnectionScheme::parse("nocz").name(), "NoCZ");
    EXPECT_EQ(ConnectionScheme::parse("SECA").kind(), SchemeKind::seca);
}

TEST(Ansatz, TwoQubitDegenerateCase) {
    const Circuit c = build({2, 3, ConnectionScheme::feca()});
    EXPECT_EQ(c.cz_count(), 3u);
    for (const auto& g : c.gates)
        if (const auto* z = std::get_if<CzGate>(&g)) EXPECT_EQ(*z, (CzGate{0, 1}));
}

TEST(Prepare, ZeroParametersGiveZeroState) {
    for (const auto& s : {ConnectionScheme::feca(), ConnectionScheme::seca(), ConnectionScheme::nocz()}) {
        AnsatzSpec spec{6, 3, s};
        const std::vector<double> zeros(param_count(spec), 0.0);
        EXPECT_NEAR(fidelity(prepare(spec, zeros), StateVector(6)), 1.0, 1e-14);
    }
}

TEST(Prepare, MatchesUnitaryOracle) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        AnsatzSpec spec{4, 2, seed % 2 ? ConnectionScheme::feca() : ConnectionScheme::seca()};
        Rng rng(seed, "prep");
        const auto theta = sample_parameters(param_count(spec), rng);
        const auto s = prepare(spec, theta);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
        const oracle::Vec expect = oracle::circuit_unitary(build(spec), theta) * oracle::zero_state(4);
        EXPECT_NEAR(std::norm(oracle::to_eigen(s).dot(expect)), 1.0, 1e-12);
    }
}

TEST(Prepare, WrongParameterCount) {
    AnsatzSpec spec{4, 1};
    EXPECT_THROW(prepare(spec, std::vector<double>(11)), ArgumentError);
}

TEST(Prepare, Deterministic) {
    AnsatzSpec spec{6, 3, ConnectionScheme::seca()};
    EXPECT_EQ(build(spec), build(spec));
}

// ---------------------------------------------------------------------------

TEST(Gradient, IdentityObservableHasZeroGradient) {
    AnsatzSpec spec{4, 2};
    PauliObservable obs(4, {PauliString(1.0, "IIII")});
    Rng rng(1, "g");
    const auto theta = sample_parameters(param_count(spec), rng);
    for (double g : parameter_shift_grad(spec, obs, theta)) EXPECT_NEAR(g, 0.0, 1e-14);
}

TEST(Gradient, SingleQubitRyClosedForm) {
    Circuit c{1, {RotationGate{Axis::y, 0, 0}}};
    PauliObservable obs(1, {PauliString(1.0, "Z")});
    for (double t : {0.0, 0.3, 1.2, -2.0}) {
        const std::vector<double> theta{t};
        EXPECT_NEAR(cost(c, obs, theta), std::cos(t), 1e-14);
        EXPECT_NEAR(parameter_shift_grad(c, obs, theta)[0], -std::sin(t), 1e-14);
    }
}

TEST(Gradient, MatchesCentralDifferences) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Rng rng(seed, "fd");
        const std::size_t n = 2 + 2 * rng.below(3);
        AnsatzSpec spec{n, 1 + rng.below(3), seed % 3 == 0 ? ConnectionScheme::feca() : ConnectionScheme::seca()};
        const auto obs = heisenberg({n, rng.uniform(0.5, 2.0), Boundary::periodic});
        const Circuit c = build(spec);
        const auto theta = sample_parameters(param_count(spec), rng);
        const auto grad = parameter_shift_grad(spec, obs, theta);
        constexpr double h = 1e-5;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            auto tp = theta;
            auto tm = theta;
            tp[k] += h;
            tm[k] -= h;
            const double fd = (cost(c, obs, tp) - cost(c, obs, tm)) / (2 * h);
            EXPECT_NEAR(grad[k], fd, 1e-6) << spec.descriptor() << " k=" << k;
        }
    }
}

TEST(Gradient, Errors) {
    AnsatzSpec spec{4, 1};
    const auto obs = boundary_zz_observable(4);
    EXPECT_THROW(parameter_shift_grad(spec, obs, std::vector<double>(3)), ArgumentError);
    const std::vector<double> theta(12, 0.0);
    EXPECT_THROW(parameter_shift_component(build(spec), obs, theta, 12), ArgumentError);
}

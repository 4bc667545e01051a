// Copyright 2026 The fusionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fusionsim/qubit.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace fusionsim;
using fusionsim::oracle::kron;

namespace {

std::vector<std::string> all_words(std::size_t n) {
    std::vector<std::string> out{""};
    for (std::size_t k = 0; k < n; k++) {
        std::vector<std::string> next;
        for (const auto &w : out) {
            for (char c : std::string("IXYZ")) {
                next.push_back(w + c);
            }
        }
        out = next;
    }
    return out;
}

std::vector<AnalyzerSetting> some_settings() {
    return {AnalyzerSetting::pauli_x(),      AnalyzerSetting::pauli_y(),           AnalyzerSetting::pauli_z(),
            AnalyzerSetting::linear(0.3),    AnalyzerSetting::linear(-kPi / 4),    AnalyzerSetting::general(0.7, 1.1),
            AnalyzerSetting::general(1.2, -2.5)};
}

}  // namespace

TEST(QubitState, BasisIndexConvention) {
    std::array<int, 3> bits{0, 1, 0};
    auto s = QubitState::basis({1, 3, 4}, bits);
    EXPECT_EQ(s.num_qubits(), 3u);
    EXPECT_NEAR(std::abs(s.amplitudes()(2)), 1.0, 1e-15);
    EXPECT_EQ(s.position(4), 2u);
    EXPECT_THROW(s.position(2), std::invalid_argument);
}

TEST(QubitState, FactoriesValidate) {
    Eigen::VectorXcd v(2);
    v << 1, 1;
    EXPECT_THROW(QubitState::pure({1}, v), std::invalid_argument);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(QubitState::mixed({1}, rho), std::invalid_argument);
    rho(0, 1) = 0.3;
    rho /= 2;
    EXPECT_THROW(QubitState::mixed({1}, rho), std::invalid_argument);
    EXPECT_THROW(QubitState::pure({1, 1}, Eigen::VectorXcd::Unit(4, 0)), std::invalid_argument);
    auto mm = QubitState::maximally_mixed({1, 2});
    EXPECT_NEAR(mm.purity(), 0.25, 1e-15);
    EXPECT_NEAR(mm.trace(), 1.0, 1e-15);
}

TEST(QubitState, ExpectationMatchesKroneckerOracle) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; trial++) {
        auto pure = oracle::random_pure({1, 3, 4}, rng);
        auto mixed = oracle::random_mixed({1, 3, 4}, rng);
        for (const auto &w : all_words(3)) {
            EXPECT_NEAR(expectation(pure, w), oracle::oracle_expectation(pure, w), 1e-12) << w;
            EXPECT_NEAR(expectation(mixed, w), oracle::oracle_expectation(mixed, w), 1e-12) << w;
        }
    }
    auto s = oracle::random_pure({1, 2}, rng);
    EXPECT_THROW(expectation(s, "XYZ"), std::invalid_argument);
    EXPECT_THROW(expectation(s, "XQ"), std::invalid_argument);
}

TEST(QubitState, OutcomeProbabilitiesMatchProjectorOracle) {
    std::mt19937_64 rng(11);
    auto settings = some_settings();
    std::uniform_int_distribution<std::size_t> pick(0, settings.size() - 1);
    for (int trial = 0; trial < 20; trial++) {
        auto s = trial % 2 ? oracle::random_mixed({2, 5, 9}, rng) : oracle::random_pure({2, 5, 9}, rng);
        std::array<AnalyzerSetting, 3> chosen{settings[pick(rng)], settings[pick(rng)], settings[pick(rng)]};
        auto probs = outcome_probabilities(s, chosen);
        ASSERT_EQ(probs.size(), 8u);
        double total = 0;
        for (int i = 0; i < 8; i++) {
            std::array<int, 3> bits{(i >> 2) & 1, (i >> 1) & 1, i & 1};
            EXPECT_NEAR(probs[i], oracle::oracle_probability(s, chosen, bits), 1e-12);
            total += probs[i];
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(AnalyzerSetting, EigenstatesAndRotation) {
    for (const auto &s : some_settings()) {
        auto e = s.eigenstates();
        EXPECT_NEAR(std::abs(e[0].dot(e[1])), 0.0, 1e-14);
        for (int k = 0; k < 2; k++) {
            EXPECT_NEAR(e[k].norm(), 1.0, 1e-14);
            // Same ray as the hand-written ket.
            EXPECT_NEAR(std::abs(e[k].dot(oracle::analyzer_ket(s, k))), 1.0, 1e-14);
        }
        Matrix2c u = s.to_computational();
        EXPECT_TRUE((u * u.adjoint()).isIdentity(1e-14));
        EXPECT_NEAR(std::abs((u * e[0])(1)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs((u * e[1])(0)), 0.0, 1e-14);
    }
    EXPECT_EQ(AnalyzerSetting::from_pauli('x'), AnalyzerSetting::pauli_x());
    EXPECT_EQ(AnalyzerSetting::from_pauli('Y'), AnalyzerSetting::pauli_y());
    EXPECT_THROW(AnalyzerSetting::from_pauli('q'), std::invalid_argument);
    EXPECT_EQ(AnalyzerSetting::pauli_y().symbols()[0], 'R');
}

TEST(QubitState, MeasureMatchesProjection) {
    std::mt19937_64 rng(5);
    for (const auto &setting : some_settings()) {
        auto s = oracle::random_pure({1, 3, 4}, rng);
        auto branches = measure(s, 3, setting);
        EXPECT_EQ(branches[0].outcome, 1);
        EXPECT_EQ(branches[1].outcome, -1);
        EXPECT_NEAR(branches[0].probability + branches[1].probability, 1.0, 1e-12);
        for (int k = 0; k < 2; k++) {
            Eigen::Vector2cd ket = oracle::analyzer_ket(setting, k);
            // <ket|_3 applied to the full vector, by hand.
            Eigen::VectorXcd expect(4);
            for (int a = 0; a < 2; a++) {
                for (int c = 0; c < 2; c++) {
                    expect(a * 2 + c) = std::conj(ket(0)) * s.amplitudes()(a * 4 + c) +
                                        std::conj(ket(1)) * s.amplitudes()(a * 4 + 2 + c);
                }
            }
            EXPECT_NEAR(branches[k].probability, expect.squaredNorm(), 1e-12);
            ASSERT_TRUE(branches[k].state.has_value());
            EXPECT_EQ(branches[k].state->labels(), (std::vector<Label>{1, 4}));
            auto oracle = QubitState::pure({1, 4}, expect / expect.norm());
            EXPECT_NEAR(fidelity(*branches[k].state, oracle), 1.0, 1e-10);
        }
    }
}

TEST(QubitState, MeasureZeroProbabilityBranchIsEmpty) {
    std::array<int, 2> bits{0, 0};
    auto s = QubitState::basis({1, 2}, bits);
    auto b = measure(s, 1, AnalyzerSetting::pauli_z());
    EXPECT_NEAR(b[0].probability, 1.0, 1e-15);
    EXPECT_FALSE(b[1].state.has_value());
}

TEST(QubitState, ApplyUnitaryAgainstEmbeddedMatrix) {
    std::mt19937_64 rng(3);
    auto s = oracle::random_pure({1, 2, 3}, rng);
    Matrix2c h = hadamard();
    auto out = apply_unitary(s, 2, h);
    Eigen::VectorXcd expect = oracle::embed(h, 1, 3) * s.amplitudes();
    EXPECT_LT((out.amplitudes() - expect).norm(), 1e-12);
    auto m = oracle::random_mixed({1, 2, 3}, rng);
    auto mo = apply_unitary(m, 3, pauli_matrix('Y'));
    Eigen::MatrixXcd u = oracle::embed(oracle::pauli('Y'), 2, 3);
    EXPECT_LT((mo.density_matrix() - u * m.density_matrix() * u.adjoint()).norm(), 1e-12);
    Matrix2c bad;
    bad << 1, 1, 0, 1;
    EXPECT_THROW(apply_unitary(s, 1, bad), std::invalid_argument);
}

TEST(QubitState, WhiteNoiseClosedForm) {
    std::mt19937_64 rng(9);
    auto s = oracle::random_pure({1, 2, 3}, rng);
    for (double p : {0.0, 0.125, 0.5, 1.0}) {
        auto n = apply_white_noise(s, p);
        Eigen::MatrixXcd expect = (1 - p) * s.density_matrix() + p * Eigen::MatrixXcd::Identity(8, 8) / 8.0;
        EXPECT_LT((n.density_matrix() - expect).norm(), 1e-12);
        // Tr rho^2 = (1-p)^2 + (2p - p^2)/d for a pure input.
        EXPECT_NEAR(n.purity(), (1 - p) * (1 - p) + (2 * p - p * p) / 8, 1e-12);
    }
    EXPECT_TRUE(apply_white_noise(s, 0.0).is_pure());
    EXPECT_THROW(apply_white_noise(s, 1.5), std::invalid_argument);
}

TEST(QubitState, DephaseScalesOnlyCoherencesOfTheLabel) {
    std::mt19937_64 rng(13);
    auto s = oracle::random_mixed({1, 3, 4}, rng);
    const double o = 0.6;
    auto d = dephase_coherence(s, o, 3);
    Eigen::MatrixXcd a = s.density_matrix();
    Eigen::MatrixXcd b = d.density_matrix();
    for (int i = 0; i < 8; i++) {
        for (int j = 0; j < 8; j++) {
            bool differ = ((i >> 1) & 1) != ((j >> 1) & 1);
            EXPECT_NEAR(std::abs(b(i, j) - (differ ? o : 1.0) * a(i, j)), 0.0, 1e-14);
        }
    }
    EXPECT_NEAR(max_abs_difference(dephase_coherence(s, 1.0, 3), s), 0.0, 1e-14);
    EXPECT_THROW(dephase_coherence(s, 1.2, 3), std::invalid_argument);
}

TEST(QubitState, Fidelity) {
    std::mt19937_64 rng(17);
    auto a = oracle::random_pure({1, 2}, rng);
    auto m = oracle::random_mixed({1, 2}, rng);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(m, m), 1.0, 1e-8);
    double expect = (a.amplitudes().adjoint() * m.density_matrix() * a.amplitudes())(0, 0).real();
    EXPECT_NEAR(fidelity(a, m), expect, 1e-12);
    EXPECT_NEAR(fidelity(m, a), expect, 1e-12);
    std::array<int, 2> hh{0, 0};
    std::array<int, 2> vv{1, 1};
    EXPECT_NEAR(fidelity(QubitState::basis({1, 2}, hh), QubitState::basis({1, 2}, vv)), 0.0, 1e-15);
    // Diagonal mixed states: (sum sqrt(p q))^2.
    Eigen::MatrixXcd r1 = Eigen::Vector4cd(0.5, 0.5, 0, 0).asDiagonal();
    Eigen::MatrixXcd r2 = Eigen::Vector4cd(0.25, 0.25, 0.25, 0.25).asDiagonal();
    EXPECT_NEAR(fidelity(QubitState::mixed({1, 2}, r1), QubitState::mixed({1, 2}, r2)), 0.5, 1e-10);
}

TEST(Fusion, KrausOperatorsAreComplete) {
    auto ks = fusion_kraus_operators();
    Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
    for (const auto &k : ks) {
        sum += k.adjoint() * k;
    }
    EXPECT_TRUE(sum.isIdentity(1e-14));
}

TEST(Fusion, KrausOnBellPairsAgainstHandComputation) {
    // (|HH> + |VV>)_{12} (|HH> + |VV>)_{34}: fusing 2 and 3 gives GHZ on {1,3,4}.
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell(0) = bell(3) = 1 / std::sqrt(2.0);
    auto s = tensor(QubitState::pure({1, 2}, bell), QubitState::pure({3, 4}, bell));
    for (int sign : {1, -1}) {
        auto f = fusion_kraus(s, 2, 3, sign);
        EXPECT_NEAR(f.probability, 0.25, 1e-14);
        ASSERT_TRUE(f.state.has_value());
        EXPECT_EQ(f.state->labels(), (std::vector<Label>{1, 3, 4}));
        Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
        ghz(0) = 1 / std::sqrt(2.0);
        ghz(7) = sign / std::sqrt(2.0);
        EXPECT_NEAR(fidelity(*f.state, QubitState::pure({1, 3, 4}, ghz)), 1.0, 1e-12);
    }
    EXPECT_THROW(fusion_kraus(s, 2, 2, 1), std::invalid_argument);
    EXPECT_THROW(fusion_kraus(s, 2, 3, 0), std::invalid_argument);
}

TEST(Fusion, KrausMatchesExplicitOperatorOnRandomStates) {
    std::mt19937_64 rng(23);
    auto s = oracle::random_pure({1, 2, 3}, rng);
    // K+ on qubits (2, 3) with 2 dropped; 3 keeps its slot.
    const double r = 1 / std::sqrt(2.0);
    Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(4);
    for (int a = 0; a < 2; a++) {
        expect(a * 2 + 0) = r * s.amplitudes()(a * 4 + 0);
        expect(a * 2 + 1) = r * s.amplitudes()(a * 4 + 3);
    }
    auto f = fusion_kraus(s, 2, 3, 1);
    EXPECT_NEAR(f.probability, expect.squaredNorm(), 1e-12);
    EXPECT_NEAR(fidelity(*f.state, QubitState::pure({1, 3}, expect / expect.norm())), 1.0, 1e-12);
}

TEST(QubitState, TensorAndPhaseHelpers) {
    std::mt19937_64 rng(29);
    auto a = oracle::random_pure({1}, rng);
    auto b = oracle::random_mixed({2, 3}, rng);
    auto t = tensor(a, b);
    EXPECT_EQ(t.labels(), (std::vector<Label>{1, 2, 3}));
    EXPECT_LT((t.density_matrix() - kron(a.density_matrix(), b.density_matrix())).norm(), 1e-12);
    EXPECT_THROW(tensor(a, a), std::invalid_argument);

    Eigen::VectorXcd v(2);
    v << Complex(0, 1e-13), Complex(0, -1);
    auto n = normalize_global_phase(v);
    EXPECT_NEAR(n(1).imag(), 0.0, 1e-15);
    EXPECT_GT(n(1).real(), 0.0);
    auto phased = QubitState::pure({1}, std::exp(Complex(0, 0.9)) * a.amplitudes());
    EXPECT_NEAR(max_abs_difference(a, phased), 0.0, 1e-14);
}

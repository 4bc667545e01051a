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

#include "fusionsim/tabletop.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace fusionsim;

namespace {

/// (|+H+> + sign |-V->) / sqrt(2) on {1, 3, 4}, built from explicit kets.
QubitState hand_cluster(int sign) {
    Eigen::Vector2cd h(1, 0), v(0, 1), p(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)),
        m(1 / std::sqrt(2.0), -1 / std::sqrt(2.0));
    Eigen::VectorXcd a = oracle::kron(oracle::kron(p, h), p);
    Eigen::VectorXcd b = oracle::kron(oracle::kron(m, v), m);
    return QubitState::pure({1, 3, 4}, (a + sign * b) / std::sqrt(2.0));
}

}  // namespace

TEST(Tabletop, OverlapLaw) {
    EXPECT_DOUBLE_EQ(overlap_from_delay(0, 740), 1.0);
    EXPECT_NEAR(overlap_from_delay(740, 740), std::exp(-1.0), 1e-15);
    EXPECT_DOUBLE_EQ(overlap_from_delay(-300, 740), overlap_from_delay(300, 740));
    EXPECT_EQ(kDefaultCoherenceTimeFs, 740);
}

TEST(Tabletop, NoiseModelPrecedenceAndValidation) {
    NoiseModel n;
    EXPECT_DOUBLE_EQ(n.effective_overlap(), 1.0);
    n.delay_fs = 740;
    EXPECT_NEAR(n.effective_overlap(), std::exp(-1.0), 1e-15);
    n.overlap = 0.5;
    EXPECT_DOUBLE_EQ(n.effective_overlap(), 0.5);
    n.white_noise = -0.1;
    EXPECT_THROW(n.validate(), std::invalid_argument);
    n.white_noise = 0;
    n.coherence_time_fs = 0;
    EXPECT_THROW(n.validate(), std::invalid_argument);
}

TEST(Tabletop, IdealFusionGivesClusterWithHalfSuccess) {
    for (int outcome : {1, -1}) {
        auto run = fuse_type1(NoiseModel{1.0, 0.0}, outcome);
        EXPECT_NEAR(run.success_probability, 0.5, 1e-12);
        EXPECT_NEAR(run.outcome_probability, 0.25, 1e-12);
        EXPECT_EQ(run.state.labels(), (std::vector<Label>{1, 3, 4}));
        EXPECT_NEAR(fidelity(run.state, hand_cluster(outcome)), 1.0, 1e-10);
        EXPECT_NEAR(fidelity(ideal_cluster(outcome), hand_cluster(outcome)), 1.0, 1e-12);
    }
    EXPECT_THROW(fuse_type1(NoiseModel{}, 0), std::invalid_argument);
}

TEST(Tabletop, ClusterStabilizers) {
    auto c = ideal_cluster(1);
    EXPECT_NEAR(expectation(c, "XZI"), 1.0, 1e-12);
    EXPECT_NEAR(expectation(c, "ZXZ"), 1.0, 1e-12);
    EXPECT_NEAR(expectation(c, "IZX"), 1.0, 1e-12);
}

TEST(Tabletop, FockAndKrausRoutesAgree) {
    for (double o : {0.0, 0.5, 0.78, 1.0}) {
        for (double p : {0.0, 0.125}) {
            for (int outcome : {1, -1}) {
                NoiseModel n{o, p};
                auto fock = fuse_type1(n, outcome);
                auto kraus = fuse_type1_kraus(n, outcome);
                EXPECT_LT(max_abs_difference(fock.state, kraus.state), 1e-10) << o << " " << p;
                EXPECT_NEAR(fock.outcome_probability, kraus.outcome_probability, 1e-12);
                EXPECT_NEAR(fock.success_probability, kraus.success_probability, 1e-12);
            }
        }
    }
}

TEST(Tabletop, CoherenceEqualsOverlap) {
    for (double o : {0.0, 0.45, 0.78}) {
        auto s = fuse_type1(NoiseModel{o, 0.0}, 1).state;
        EXPECT_NEAR(expectation(cluster_to_ghz(s), "XXX"), o, 1e-12);
        EXPECT_NEAR(s.purity(), (1 + o * o) / 2, 1e-12);
    }
}

TEST(Tabletop, ClusterToGhz) {
    auto g = cluster_to_ghz(ideal_cluster(1));
    EXPECT_NEAR(fidelity(g, ideal_ghz()), 1.0, 1e-12);
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
    ghz(0) = ghz(7) = 1 / std::sqrt(2.0);
    EXPECT_NEAR(fidelity(ideal_ghz(), QubitState::pure({1, 3, 4}, ghz)), 1.0, 1e-12);
}

TEST(Tabletop, TwoQubitClusterForm) {
    // HWP(pi/8) on path 2 of (|HH> + |VV>): |H>|+> + |V>|->.
    auto q = to_qubit_state(two_qubit_cluster(bell_pair(1, 2), 2));
    EXPECT_NEAR(expectation(q, "ZX"), 1.0, 1e-12);
    EXPECT_NEAR(expectation(q, "XZ"), 1.0, 1e-12);
}

// Copyright 2026 The cweyl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cweyl/maps.hpp"
#include "testing.hpp"

namespace cweyl {
namespace {

using std::numbers::pi;

void expect_point(PhasePoint got, double q, double p) {
    EXPECT_NEAR(got.q, q, 1e-15);
    EXPECT_NEAR(got.p, p, 1e-15);
}

TEST(ClassicalStep, Branches) {
    expect_point(classical_step(DissipativeBakerParams(0.8), {0.25, 0.5}), 0.5, 0.2);
    expect_point(classical_step(DissipativeBakerParams(0.4), {0.75, 0.5}), 0.5, 0.6);
    for (double eps : {0.3, 0.8, 1.0}) expect_point(classical_step(DissipativeBakerParams(eps), {0, 0}), 0, 0);
}

TEST(ClassicalStep, RejectsBadEpsilon) {
    EXPECT_THROW(DissipativeBakerParams(0.0), std::invalid_argument);
    EXPECT_THROW(DissipativeBakerParams(1.5), std::invalid_argument);
}

TEST(Attractor, DepthZeroIsWholeCircle) {
    const auto s = attractor_intervals(DissipativeBakerParams(0.6), 0);
    ASSERT_EQ(s.intervals.size(), 1u);
    EXPECT_EQ(s.intervals[0].lo, 0.0);
    EXPECT_EQ(s.intervals[0].hi, 1.0);
    EXPECT_EQ(s.measure(), 1.0);
}

TEST(Attractor, FirstTwoGenerations) {
    const DissipativeBakerParams params(0.8);
    const auto one = attractor_intervals(params, 1);
    ASSERT_EQ(one.intervals.size(), 2u);
    EXPECT_NEAR(one.intervals[0].lo, 0.0, 1e-15);
    EXPECT_NEAR(one.intervals[0].hi, 0.4, 1e-15);
    EXPECT_NEAR(one.intervals[1].lo, 0.5, 1e-15);
    EXPECT_NEAR(one.intervals[1].hi, 0.9, 1e-15);

    const auto two = attractor_intervals(params, 2);
    const double want[4][2] = {{0, 0.16}, {0.2, 0.36}, {0.5, 0.66}, {0.7, 0.86}};
    ASSERT_EQ(two.intervals.size(), 4u);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(two.intervals[i].lo, want[i][0], 1e-15);
        EXPECT_NEAR(two.intervals[i].hi, want[i][1], 1e-15);
    }
    EXPECT_NEAR(two.measure(), 0.64, 1e-15);
}

TEST(Attractor, CountWidthAndMeasure) {
    for (double eps : {0.4, 0.6, 0.7, 0.8}) {
        for (int t = 0; t <= 20; ++t) {
            const auto s = attractor_intervals(DissipativeBakerParams(eps), t);
            ASSERT_EQ(s.intervals.size(), std::size_t{1} << t);
            EXPECT_NEAR(s.measure(), std::pow(eps, t), 1e-12);
            const double width = std::pow(eps / 2, t);
            for (std::size_t i = 0; i < s.intervals.size(); ++i) {
                EXPECT_NEAR(s.intervals[i].width(), width, 1e-13);
                if (i > 0) EXPECT_LT(s.intervals[i - 1].hi, s.intervals[i].lo);
            }
        }
    }
}

TEST(Attractor, ContainsUsesHalfOpenIntervals) {
    const auto s = attractor_intervals(DissipativeBakerParams(0.8), 1);
    EXPECT_TRUE(s.contains(0.0));
    EXPECT_TRUE(s.contains(0.39));
    EXPECT_FALSE(s.contains(0.4));
    EXPECT_FALSE(s.contains(0.45));
    EXPECT_TRUE(s.contains(0.5));
    EXPECT_FALSE(s.contains(0.95));
}

TEST(Attractor, UnitaryLimitKeepsFullMeasure) {
    const auto s = attractor_intervals(DissipativeBakerParams(1.0), 5);
    EXPECT_NEAR(s.measure(), 1.0, 1e-14);
    EXPECT_TRUE(s.contains(0.77));
}

TEST(Attractor, DepthLimit) {
    EXPECT_THROW(attractor_intervals(DissipativeBakerParams(0.5), kMaxAttractorDepth + 1), std::invalid_argument);
    EXPECT_THROW(attractor_intervals(DissipativeBakerParams(0.5), -1), std::invalid_argument);
}

TEST(QuantumBaker, Unitary) {
    for (int N : {8, 64, 96}) {
        const auto B = quantum_baker(TorusContext(N)).matrix;
        EXPECT_LT(testing::max_abs(B * B.adjoint() - Eigen::MatrixXcd::Identity(N, N)), N == 8 ? 1e-13 : 1e-12);
    }
}

TEST(QuantumBaker, OddDimensionRejected) { EXPECT_THROW(quantum_baker(TorusContext(7)), std::invalid_argument); }

TEST(QuantumBaker, TwoSitesByHand) {
    // G_1 = -i; G_2(k, j) = exp(-i pi (j + 1/2)(k + 1/2)) / sqrt(2)
    const Complex e1 = std::exp(Complex(0, -pi / 4)) / std::sqrt(2.0);
    const Complex e3 = std::exp(Complex(0, -3 * pi / 4)) / std::sqrt(2.0);
    Eigen::Matrix2cd G2;
    G2 << e1, e3, e3, e1;
    const Eigen::Matrix2cd want = Complex(0, -1) * G2.adjoint();
    const auto B = quantum_baker(TorusContext(2)).matrix;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_NEAR(std::abs(B(r, c) - want(r, c)), 0.0, 1e-15);
}

TEST(Opening, EmptyBandsGiveIdentity) {
    const auto P = opening_projector(TorusContext(10), OpeningSpec{});
    EXPECT_EQ(testing::max_abs(P - Eigen::MatrixXcd::Identity(10, 10)), 0.0);
}

TEST(Opening, FullBandGivesZero) {
    const auto P = opening_projector(TorusContext(10), OpeningSpec{{{0.0, 1.0}}});
    EXPECT_EQ(testing::max_abs(P), 0.0);
}

TEST(Opening, SymmetricEdgesRemoveFifthOfStates) {
    const auto spec = OpeningSpec::symmetric_edges();
    EXPECT_NEAR(spec.total_measure(), 0.2, 1e-15);
    const auto P = opening_projector(TorusContext(180), spec);
    EXPECT_EQ(180 - static_cast<int>(std::lround(P.trace().real())), 36);
}

TEST(Opening, OrderSelectsFactorPlacement) {
    const TorusContext ctx(12);
    const auto B = quantum_baker(ctx);
    const auto P = opening_projector(ctx, OpeningSpec::symmetric_edges());
    EXPECT_EQ(testing::max_abs(open_map(B, P, OpeningOrder::project_then_propagate) - B.matrix * P), 0.0);
    EXPECT_EQ(testing::max_abs(open_map(B, P, OpeningOrder::propagate_then_project) - P * B.matrix), 0.0);
}

}  // namespace
}  // namespace cweyl

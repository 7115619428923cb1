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

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cweyl/spectra.hpp"
#include "testing.hpp"

namespace cweyl {
namespace {

SuperoperatorMatrix complex_channel(int N, double eps) {
    const TorusContext ctx(N);
    return superoperator_matrix(KrausSet(ctx, eps), quantum_baker(ctx));
}

HermitianSuperoperator real_channel(int N, double eps) {
    const TorusContext ctx(N);
    return hermitian_superoperator(KrausSet(ctx, eps), quantum_baker(ctx));
}

TEST(DecayRate, Definition) {
    EXPECT_EQ(decay_rate(1.0), 0.0);
    EXPECT_NEAR(decay_rate(std::exp(-1.0)), 2.0, 1e-14);
    EXPECT_NEAR(decay_rate(Complex(0, std::exp(-7.0))), 14.0, 1e-13);
    EXPECT_EQ(decay_rate(0.0), std::numeric_limits<double>::infinity());
    EXPECT_EQ(decay_rate(1.0 + 1e-10), 0.0);
    EXPECT_THROW(decay_rate(1.01), std::domain_error);
}

TEST(DecayQuery, RejectsNonPositiveCut) {
    EXPECT_THROW(DecayQuery(0.0), std::invalid_argument);
    EXPECT_THROW(DecayQuery(-2.0), std::invalid_argument);
}

TEST(SpectralOrder, DecreasingModulus) {
    const std::vector<Complex> values = {-0.1, Complex(0, 0.5), 0.9};
    const auto order = spectral_order(values);
    EXPECT_EQ(order, (std::vector<std::size_t>{2, 1, 0}));
}

TEST(FullSpectrum, DiagonalInputSorted) {
    SuperoperatorMatrix S;
    S.entries = Eigen::Vector3cd(0.9, Complex(0, 0.5), -0.1).asDiagonal();
    const auto spec = full_spectrum(S);
    ASSERT_EQ(spec.eigenvalues.size(), 3u);
    EXPECT_NEAR(std::abs(spec.eigenvalues[0] - 0.9), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(spec.eigenvalues[1] - Complex(0, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(spec.eigenvalues[2] + 0.1), 0.0, 1e-15);
}

TEST(FullSpectrum, UnitaryLimitOnUnitCircle) {
    for (const auto& spec : {full_spectrum(complex_channel(8, 1.0)), full_spectrum(real_channel(8, 1.0))}) {
        ASSERT_EQ(spec.eigenvalues.size(), 64u);
        for (const auto& l : spec.eigenvalues) EXPECT_NEAR(std::abs(l), 1.0, 1e-10);
    }
}

TEST(FullSpectrum, SteadyStateAtSixteen) {
    const auto c = full_spectrum(complex_channel(16, 0.6));
    const auto r = full_spectrum(real_channel(16, 0.6));
    EXPECT_NEAR(std::abs(c.eigenvalues[0] - 1.0), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(r.eigenvalues[0] - 1.0), 0.0, 1e-8);
    EXPECT_LT(std::abs(r.eigenvalues[1]), 1.0 - 1e-3);
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
        EXPECT_LE(std::abs(r.eigenvalues[i]), std::abs(r.eigenvalues[i - 1]) + 1e-15);
    }
}

TEST(FullSpectrum, BackendsAgreeWithOracle) {
    const int N = 10;
    const TorusContext ctx(N);
    const auto B = quantum_baker(ctx);
    std::vector<Eigen::MatrixXcd> ops;
    for (const auto& A : testing::reference_kraus(N, 0.7)) ops.push_back(B.matrix * A);
    const auto oracle = testing::eigenvalues_oracle(testing::kron_superoperator(ops));
    EXPECT_LT(testing::multiset_distance(oracle, full_spectrum(complex_channel(N, 0.7)).eigenvalues), 1e-9);
    EXPECT_LT(testing::multiset_distance(oracle, full_spectrum(real_channel(N, 0.7)).eigenvalues), 1e-9);
}

TEST(FullSpectrum, RightVectorsSolveEigenproblem) {
    const auto S = complex_channel(12, 0.6);
    const auto apply = [&](const Eigen::VectorXcd& v) { return Eigen::VectorXcd(S.entries * v); };
    EXPECT_LT(eigen_residual(apply, full_spectrum(S, {.right_vectors = true}), 144), 1e-10);
    EXPECT_LT(eigen_residual(apply, full_spectrum(real_channel(12, 0.6), {.right_vectors = true}), 144), 1e-10);
}

TEST(FullSpectrum, LeftAndRightVectorsBiorthogonal) {
    const auto spec = full_spectrum(complex_channel(12, 0.6), {.right_vectors = true, .left_vectors = true});
    const Eigen::MatrixXcd M = spec.left_vectors->adjoint() * *spec.right_vectors;
    const Eigen::Index n = M.rows();
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        ASSERT_GT(std::abs(M(i, i)), 1e-10);
        for (Eigen::Index j = 0; j < n; ++j) {
            // exact degeneracies may mix inside their eigenspace
            if (i != j && std::abs(spec.eigenvalues[i] - spec.eigenvalues[j]) > 1e-6) {
                off = std::max(off, std::abs(M(i, j)) / std::sqrt(std::abs(M(i, i)) * std::abs(M(j, j))));
            }
        }
    }
    EXPECT_LT(off, 1e-8);
}

TEST(FullSpectrum, IdentityIsLeftSteadyState) {
    const int N = 12;
    const auto S = complex_channel(N, 0.4);
    const Eigen::VectorXcd id = vectorize(Eigen::MatrixXcd::Identity(N, N));
    EXPECT_LT((S.entries.adjoint() * id - id).norm(), 1e-8);
}

TEST(FullSpectrum, RealBackendRefusesLeftVectors) {
    EXPECT_THROW(full_spectrum(real_channel(4, 0.5), {.left_vectors = true}), std::invalid_argument);
}

TEST(Counting, VanishingCutLeavesSteadyState) {
    const auto spec = full_spectrum(real_channel(16, 0.6));
    EXPECT_EQ(count_long_lived(spec, DecayQuery(1e-9)), 1u);
}

TEST(Counting, MatchesBruteForceRecount) {
    const auto spec = full_spectrum(complex_channel(16, 0.6));
    const double threshold = std::exp(-2.0);
    const auto manual = std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                      [&](Complex l) { return std::abs(l) > threshold; });
    EXPECT_EQ(count_long_lived(spec, DecayQuery(4.0)), static_cast<std::size_t>(manual));
    EXPECT_GT(manual, 1);
    EXPECT_LT(manual, 256);
}

TEST(Counting, UnitaryCountsEverything) {
    const auto spec = full_spectrum(real_channel(8, 1.0));
    for (double cut : {0.01, 2.0, 14.0}) EXPECT_EQ(count_long_lived(spec, DecayQuery(cut)), 64u);
}

void check_ordered_schur(const ResonanceSpectrum& schur, const ResonanceSpectrum& full, const DecayQuery& q,
                         const Eigen::MatrixXcd& S) {
    ASSERT_TRUE(schur.schur.has_value());
    const auto k = count_long_lived(full, q);
    const auto& Q = schur.schur->basis;
    const auto& T = schur.schur->triangular;
    ASSERT_EQ(static_cast<std::size_t>(Q.cols()), k);
    const Eigen::VectorXcd d = T.diagonal();
    std::vector<Complex> diag(d.data(), d.data() + d.size());
    std::vector<Complex> lead;
    for (const auto& l : full.eigenvalues)
        if (is_long_lived(l, q)) lead.push_back(l);
    EXPECT_LT(testing::multiset_distance(diag, lead), 1e-8);
    EXPECT_LT(testing::max_abs(Q.adjoint() * Q - Eigen::MatrixXcd::Identity(Q.cols(), Q.cols())), 1e-10);
    EXPECT_LT(testing::max_abs(S * Q - Q * T), 1e-10);
    EXPECT_LT(testing::max_abs(T.triangularView<Eigen::StrictlyLower>().toDenseMatrix()), 1e-14);
    const auto apply = [&](const Eigen::VectorXcd& v) { return Eigen::VectorXcd(S * v); };
    EXPECT_LT(eigen_residual(apply, schur, static_cast<Eigen::Index>(k)), 1e-9);
}

TEST(OrderedSchur, ComplexBackendMatchesFullSpectrum) {
    const auto S = complex_channel(16, 0.6);
    const DecayQuery q(4.0);
    check_ordered_schur(ordered_schur(S, q), full_spectrum(S), q, S.entries);
}

TEST(OrderedSchur, RealBackendMatchesFullSpectrum) {
    const auto S = complex_channel(16, 0.6);
    const DecayQuery q(4.0);
    check_ordered_schur(ordered_schur(real_channel(16, 0.6), q), full_spectrum(S), q, S.entries);
}

TEST(OrderedSchur, ProjectiveChannel) {
    const TorusContext ctx(12);
    const auto B = quantum_baker(ctx);
    const auto P = opening_projector(ctx, OpeningSpec::symmetric_edges());
    const auto S = projective_superoperator(B, P);
    const DecayQuery q(3.0);
    check_ordered_schur(ordered_schur(hermitian_projective_superoperator(B, P), q), full_spectrum(S), q, S.entries);
}

TEST(OrderedSchur, NormalInputGivesCanonicalVectors) {
    SuperoperatorMatrix S;
    S.entries = Eigen::Vector4cd(0.1, 0.9, -0.95, Complex(0, 0.5)).asDiagonal();
    const auto spec = ordered_schur(S, DecayQuery(2.0));  // keeps |lambda| > e^-1
    const auto& Q = spec.schur->basis;
    ASSERT_EQ(Q.cols(), 3);
    for (Eigen::Index c = 0; c < Q.cols(); ++c) {
        Eigen::Index row = 0;
        EXPECT_NEAR(Q.col(c).cwiseAbs().maxCoeff(&row), 1.0, 1e-14);
        EXPECT_NE(row, 0);
    }
}

TEST(Memory, EstimateScalesWithBackend) {
    EXPECT_EQ(eigensolver_bytes(20, Backend::complex_dense), 2 * eigensolver_bytes(20, Backend::real_hermitian));
}

}  // namespace
}  // namespace cweyl

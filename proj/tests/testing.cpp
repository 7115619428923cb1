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

#include "testing.hpp"

#include <cmath>
#include <limits>

namespace cweyl::testing {

Eigen::MatrixXcd kron_superoperator(const std::vector<Eigen::MatrixXcd>& operators) {
    const auto N = operators.front().rows();
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N * N, N * N);
    for (const auto& K : operators) {
        for (Eigen::Index i = 0; i < N; ++i)
            for (Eigen::Index j = 0; j < N; ++j)
                for (Eigen::Index k = 0; k < N; ++k)
                    for (Eigen::Index l = 0; l < N; ++l) S(i * N + j, k * N + l) += K(i, k) * std::conj(K(j, l));
    }
    return S;
}

std::vector<Eigen::MatrixXcd> reference_kraus(int N, double epsilon) {
    std::vector<Eigen::MatrixXcd> ops;
    for (int mu = 0; mu < N; ++mu) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
        for (int i = mu; i < N; ++i) {
            // C(i, mu) by the multiplicative formula
            long double binom = 1.0L;
            for (int r = 1; r <= mu; ++r) binom = binom * (i - mu + r) / r;
            const long double w = binom * std::pow(static_cast<long double>(epsilon), i - mu) *
                                  std::pow(1.0L - epsilon, static_cast<long double>(mu));
            A(i - mu, i) = static_cast<double>(std::sqrt(w));
        }
        ops.push_back(A);
    }
    return ops;
}

Eigen::MatrixXcd random_density(int N, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd X(N, N);
    for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = {g(rng), g(rng)};
    Eigen::MatrixXcd rho = X * X.adjoint();
    return rho / rho.trace();
}

std::vector<std::complex<double>> eigenvalues_oracle(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    const auto& v = es.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const auto& x : a) {
        std::size_t best = b.size();
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && std::abs(x - b[j]) < d) {
                d = std::abs(x - b[j]);
                best = j;
            }
        }
        used[best] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace cweyl::testing

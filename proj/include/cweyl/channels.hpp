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

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cweyl/maps.hpp"
#include "cweyl/torus.hpp"

namespace cweyl {

/// Contractive Kraus operators A^mu, mu = 0..N-1, in the momentum basis.
///
/// A^mu has a single band of non-zero entries (i - mu, i) for i = mu..N-1 with
/// amplitude sqrt(C(i, i-mu) eps^(i-mu) (1-eps)^mu): it moves |p_i> down by mu
/// momentum quanta. The amplitudes are evaluated through log-gamma so they stay
/// finite for N in the hundreds.
class KrausSet {
public:
    KrausSet(const TorusContext& ctx, double epsilon);

    [[nodiscard]] int dimension() const { return N_; }
    [[nodiscard]] double epsilon() const { return epsilon_; }

    /// Amplitude of the (i - mu, i) entry of A^mu; zero when mu > i.
    [[nodiscard]] double amplitude(int mu, int i) const {
        return mu > i ? 0.0 : amplitudes_[static_cast<std::size_t>(mu) * N_ + i];
    }

    /// Dense copy of A^mu.
    [[nodiscard]] Eigen::MatrixXcd dense(int mu) const;

    /// Sum_mu A_mu rho A_mu^dagger, O(N^3) using the band structure.
    [[nodiscard]] Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

private:
    int N_;
    double epsilon_;
    std::vector<double> amplitudes_;  // [mu * N + i]
};

KrausSet kraus_set(const TorusContext& ctx, double epsilon);

/// rho' = B (Sum_mu A_mu rho A_mu^dagger) B^dagger without forming the superoperator.
Eigen::MatrixXcd apply_channel(const KrausSet& kraus, const UnitaryMap& B, const Eigen::MatrixXcd& rho);

/// Row-major vectorization: vec(rho)[i N + j] = rho(i, j).
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int N);

/// Kraus operators K_mu of a channel rho -> Sum K_mu rho K_mu^dagger, stored with
/// the number of leading K_mu that act non-trivially on each input column, so
/// the band structure of B A^mu is not multiplied through as zeros.
struct KrausList {
    int N = 0;
    std::vector<Eigen::MatrixXcd> operators;
    std::vector<int> active;  // active[k] = 1 + last mu with K_mu(:, k) != 0

    /// K_mu = B A^mu.
    static KrausList contractive(const KrausSet& kraus, const UnitaryMap& B);
    /// Single operator.
    static KrausList single(const Eigen::MatrixXcd& K);

    /// Sum_mu K_mu E_kl K_mu^dagger for the matrix unit E_kl.
    [[nodiscard]] Eigen::MatrixXcd image_of_unit(int k, int l) const;
};

/// Dense N^2 x N^2 channel matrix with
///   S[(i,j),(k,l)] = Sum_mu K_mu(i,k) conj(K_mu(j,l)),
/// rows (i,j) -> i N + j and columns (k,l) -> k N + l.
struct SuperoperatorMatrix {
    int N = 0;
    Eigen::MatrixXcd entries;

    [[nodiscard]] Eigen::Index dim() const { return entries.rows(); }
};

/// Bytes needed to hold a dense complex N^2 x N^2 matrix.
std::size_t complex_superoperator_bytes(int N);
/// Bytes needed to hold a dense real N^2 x N^2 matrix.
std::size_t real_superoperator_bytes(int N);

SuperoperatorMatrix superoperator_matrix(const KrausList& kraus);
SuperoperatorMatrix superoperator_matrix(const KrausSet& kraus, const UnitaryMap& B);

/// Single-Kraus channel with operator B P (or P B).
SuperoperatorMatrix projective_superoperator(const UnitaryMap& B, const Eigen::MatrixXcd& P,
                                             OpeningOrder order = OpeningOrder::project_then_propagate);

/// The same channel written in the orthonormal Hermitian operator basis
///   H_(i,i) = E_ii,
///   H_(i,j) = (E_ij + E_ji)/sqrt2   for i < j,
///   H_(j,i) = i (E_ij - E_ji)/sqrt2 for i < j,
/// indexed like the row-major vectorization. A Hermiticity-preserving channel is
/// real in this basis, and unitarily similar to SuperoperatorMatrix, so the
/// eigenproblem can run in real arithmetic.
struct HermitianSuperoperator {
    int N = 0;
    Eigen::MatrixXd entries;

    [[nodiscard]] Eigen::Index dim() const { return entries.rows(); }
};

HermitianSuperoperator hermitian_superoperator(const KrausList& kraus);
HermitianSuperoperator hermitian_superoperator(const KrausSet& kraus, const UnitaryMap& B);
HermitianSuperoperator hermitian_projective_superoperator(
    const UnitaryMap& B, const Eigen::MatrixXcd& P, OpeningOrder order = OpeningOrder::project_then_propagate);

/// Change of coordinates between vec(rho) and Hermitian-basis coordinates;
/// both are unitary and act column by column.
Eigen::MatrixXcd hermitian_to_vec(const Eigen::MatrixXcd& coords, int N);
Eigen::MatrixXcd vec_to_hermitian(const Eigen::MatrixXcd& vecs, int N);

}  // namespace cweyl

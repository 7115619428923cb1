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

#include <vector>

#include <Eigen/Dense>

#include "cweyl/spectra.hpp"
#include "cweyl/torus.hpp"

namespace cweyl {

/// Eigencolumns reshaped into N x N operators (row-major: element (i, j) is
/// flat index i N + j) and normalized to Tr(R^dagger R) = 1, in decreasing
/// modulus order.
struct EigenMatrixSet {
    int N = 0;
    std::vector<Eigen::MatrixXcd> members;

    [[nodiscard]] std::size_t size() const { return members.size(); }
};

/// Leading k right eigenvectors as operators.
EigenMatrixSet reshape_eigenvectors(const ResonanceSpectrum& spectrum, std::size_t k);
/// Leading k Schur vectors as operators.
EigenMatrixSet reshape_schur_vectors(const ResonanceSpectrum& spectrum, std::size_t k);
/// Columns of any n x k matrix.
EigenMatrixSet reshape_columns(const Eigen::MatrixXcd& columns, int N, std::size_t k);

/// P[i][j] = Tr(R_i^dagger R_j).
struct OverlapMatrix {
    Eigen::MatrixXcd entries;

    [[nodiscard]] Eigen::Index k() const { return entries.rows(); }
};

OverlapMatrix overlap_matrix(const EigenMatrixSet& set);

/// Mean |P[i][j]| over i != j.
double offdiag_mass(const OverlapMatrix& P);

/// Pointwise Sum_R |<z|R|z>|^2 / Tr(R^dagger R) over the set.
HusimiGrid husimi_sum(const EigenMatrixSet& set, const TorusContext& ctx, GridSpec grid = {});
HusimiGrid husimi_sum(const EigenMatrixSet& set, const CoherentFrame& frame);

/// Fraction of cells in the smallest set (taken by descending value) holding
/// mass_fraction of the total.
double support_area(const HusimiGrid& grid, double mass_fraction = 0.9);

}  // namespace cweyl

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

#include "cweyl/analysis.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "cweyl/channels.hpp"

namespace cweyl {

EigenMatrixSet reshape_columns(const Eigen::MatrixXcd& columns, int N, std::size_t k) {
    if (columns.rows() != static_cast<Eigen::Index>(N) * N) {
        throw std::invalid_argument("reshape: column length is not N^2");
    }
    if (k > static_cast<std::size_t>(columns.cols())) {
        throw std::invalid_argument("reshape: requested " + std::to_string(k) + " members but only " +
                                    std::to_string(columns.cols()) + " columns are available");
    }
    EigenMatrixSet set;
    set.N = N;
    set.members.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        Eigen::MatrixXcd R = unvectorize(columns.col(static_cast<Eigen::Index>(c)), N);
        const double norm = R.norm();
        if (norm == 0.0) throw std::invalid_argument("reshape: zero column");
        R /= norm;
        set.members.push_back(std::move(R));
    }
    return set;
}

EigenMatrixSet reshape_eigenvectors(const ResonanceSpectrum& spectrum, std::size_t k) {
    if (!spectrum.right_vectors) {
        throw std::invalid_argument("reshape_eigenvectors: spectrum carries no right eigenvectors");
    }
    return reshape_columns(*spectrum.right_vectors, spectrum.N, k);
}

EigenMatrixSet reshape_schur_vectors(const ResonanceSpectrum& spectrum, std::size_t k) {
    if (!spectrum.schur) {
        throw std::invalid_argument("reshape_schur_vectors: spectrum carries no Schur basis");
    }
    return reshape_columns(spectrum.schur->basis, spectrum.N, k);
}

OverlapMatrix overlap_matrix(const EigenMatrixSet& set) {
    if (set.members.empty()) throw std::invalid_argument("overlap_matrix: empty set");
    const auto k = static_cast<Eigen::Index>(set.size());
    const Eigen::Index n = static_cast<Eigen::Index>(set.N) * set.N;
    // Tr(R_i^dagger R_j) is the Euclidean inner product of the flattened operators.
    Eigen::MatrixXcd flat(n, k);
    for (Eigen::Index c = 0; c < k; ++c) {
        flat.col(c) = Eigen::Map<const Eigen::VectorXcd>(set.members[static_cast<std::size_t>(c)].data(), n);
    }
    OverlapMatrix P;
    P.entries = flat.adjoint() * flat;
    return P;
}

double offdiag_mass(const OverlapMatrix& P) {
    const auto k = P.k();
    if (k < 2) throw std::invalid_argument("offdiag_mass: need at least 2 states");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            if (i != j) sum += std::abs(P.entries(i, j));
    return sum / static_cast<double>(k * (k - 1));
}

HusimiGrid husimi_sum(const EigenMatrixSet& set, const CoherentFrame& frame) {
    if (set.members.empty()) throw std::invalid_argument("husimi_sum: empty set");
    HusimiGrid out(frame.grid());
    for (const auto& R : set.members) accumulate_husimi_operator(frame, R, out);
    return out;
}

HusimiGrid husimi_sum(const EigenMatrixSet& set, const TorusContext& ctx, GridSpec grid) {
    return husimi_sum(set, CoherentFrame(ctx, grid));
}

double support_area(const HusimiGrid& grid, double mass_fraction) {
    if (!(mass_fraction > 0.0 && mass_fraction < 1.0)) {
        throw std::invalid_argument("support_area: mass_fraction must lie in (0, 1)");
    }
    std::vector<double> sorted = grid.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double total = 0.0;
    for (double v : sorted) total += v;
    if (!(total > 0.0)) throw std::invalid_argument("support_area: grid carries no mass");

    const double target = mass_fraction * total;
    double acc = 0.0;
    std::size_t cells = 0;
    while (cells < sorted.size() && acc < target) acc += sorted[cells++];
    return static_cast<double>(cells) / static_cast<double>(sorted.size());
}

}  // namespace cweyl

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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cweyl/torus.hpp"

namespace cweyl {

/// Momentum contraction factor of the dissipative baker map, 0 < epsilon <= 1.
struct DissipativeBakerParams {
    double epsilon = 1.0;

    explicit DissipativeBakerParams(double eps);
};

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

/// One iteration of the dissipative baker map on [0,1)^2.
PhasePoint classical_step(const DissipativeBakerParams& params, PhasePoint point);

/// Half-open interval [lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] bool contains(double x) const { return lo <= x && x < hi; }
};

/// Momentum support of the finite-time attractor: 2^t disjoint strips, sorted.
struct IntervalSet {
    std::vector<Interval> intervals;
    int depth = 0;

    [[nodiscard]] double measure() const;
    [[nodiscard]] bool contains(double p) const;
};

constexpr int kMaxAttractorDepth = 30;

/// Image of [0,1) under t applications of p -> eps p / 2 and p -> (eps p + 1) / 2.
IntervalSet attractor_intervals(const DissipativeBakerParams& params, int t);

/// Closed quantum baker B_N = blockdiag(G_{N/2}, G_{N/2}) G_N^{-1}, momentum basis.
struct UnitaryMap {
    int N = 0;
    Eigen::MatrixXcd matrix;
};

UnitaryMap quantum_baker(const TorusContext& ctx);

/// Momentum bands removed by a projective opening.
struct OpeningSpec {
    std::vector<Interval> bands;

    /// Two width-0.1 bands at the momentum edges, total 0.2 of phase space.
    static OpeningSpec symmetric_edges(double width = 0.1);

    [[nodiscard]] double total_measure() const;
};

/// Where the projector sits relative to the unitary step.
enum class OpeningOrder {
    project_then_propagate,  // B P
    propagate_then_project,  // P B
};

/// Diagonal 0/1 matrix in the momentum basis; entry k is 0 iff p_k lies in a band.
Eigen::MatrixXcd opening_projector(const TorusContext& ctx, const OpeningSpec& spec);

/// B P or P B depending on the order.
Eigen::MatrixXcd open_map(const UnitaryMap& B, const Eigen::MatrixXcd& P,
                          OpeningOrder order = OpeningOrder::project_then_propagate);

}  // namespace cweyl

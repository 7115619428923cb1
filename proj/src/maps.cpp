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

#include "cweyl/maps.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace cweyl {

DissipativeBakerParams::DissipativeBakerParams(double eps) : epsilon(eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1], got " + std::to_string(eps));
    }
}

PhasePoint classical_step(const DissipativeBakerParams& params, PhasePoint point) {
    const double eps = params.epsilon;
    if (point.q < 0.5) {
        return {2.0 * point.q, eps * point.p / 2.0};
    }
    return {2.0 * point.q - 1.0, (eps * point.p + 1.0) / 2.0};
}

double IntervalSet::measure() const {
    double m = 0.0;
    for (const auto& iv : intervals) m += iv.width();
    return m;
}

bool IntervalSet::contains(double p) const {
    // intervals are sorted: find the last one starting at or before p
    auto it = std::upper_bound(intervals.begin(), intervals.end(), p,
                               [](double x, const Interval& iv) { return x < iv.lo; });
    if (it == intervals.begin()) return false;
    return std::prev(it)->contains(p);
}

IntervalSet attractor_intervals(const DissipativeBakerParams& params, int t) {
    if (t < 0 || t > kMaxAttractorDepth) {
        throw std::invalid_argument("attractor depth must lie in [0, " + std::to_string(kMaxAttractorDepth) +
                                    "], got " + std::to_string(t));
    }
    const double eps = params.epsilon;
    IntervalSet set;
    set.depth = t;
    set.intervals = {{0.0, 1.0}};
    for (int step = 0; step < t; ++step) {
        std::vector<Interval> next;
        next.reserve(set.intervals.size() * 2);
        // Lower branch images all lie below 1/2 and upper ones at or above it, so
        // emitting lower images first keeps the list sorted.
        for (const auto& iv : set.intervals) next.push_back({eps * iv.lo / 2.0, eps * iv.hi / 2.0});
        for (const auto& iv : set.intervals) next.push_back({(eps * iv.lo + 1.0) / 2.0, (eps * iv.hi + 1.0) / 2.0});

        std::vector<Interval> merged;
        merged.reserve(next.size());
        for (const auto& iv : next) {
            if (!merged.empty() && merged.back().hi == iv.lo) {
                assert(eps == 1.0 && "branch images touch only for the area-preserving map");
                merged.back().hi = iv.hi;
            } else {
                merged.push_back(iv);
            }
        }
        set.intervals = std::move(merged);
    }
    return set;
}

UnitaryMap quantum_baker(const TorusContext& ctx) {
    if (ctx.N % 2 != 0) {
        throw std::invalid_argument("quantum_baker: odd dimension " + std::to_string(ctx.N));
    }
    const int half = ctx.N / 2;
    const Eigen::MatrixXcd G = fourier_kernel(ctx);
    const Eigen::MatrixXcd G_half = fourier_kernel(TorusContext(half, ctx.chi_q, ctx.chi_p));

    UnitaryMap B;
    B.N = ctx.N;
    const Eigen::MatrixXcd G_inv = G.adjoint();
    B.matrix.resize(ctx.N, ctx.N);
    B.matrix.topRows(half).noalias() = G_half * G_inv.topRows(half);
    B.matrix.bottomRows(half).noalias() = G_half * G_inv.bottomRows(half);
    return B;
}

OpeningSpec OpeningSpec::symmetric_edges(double width) {
    return OpeningSpec{{{0.0, width}, {1.0 - width, 1.0}}};
}

double OpeningSpec::total_measure() const {
    double m = 0.0;
    for (const auto& b : bands) m += b.width();
    return m;
}

Eigen::MatrixXcd opening_projector(const TorusContext& ctx, const OpeningSpec& spec) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(ctx.N, ctx.N);
    for (int k = 0; k < ctx.N; ++k) {
        const double p = ctx.momentum(k);
        for (const auto& band : spec.bands) {
            if (band.contains(p)) {
                P(k, k) = 0.0;
                break;
            }
        }
    }
    return P;
}

Eigen::MatrixXcd open_map(const UnitaryMap& B, const Eigen::MatrixXcd& P, OpeningOrder order) {
    if (P.rows() != B.N || P.cols() != B.N) {
        throw std::invalid_argument("open_map: projector dimension mismatch");
    }
    return order == OpeningOrder::project_then_propagate ? Eigen::MatrixXcd(B.matrix * P)
                                                         : Eigen::MatrixXcd(P * B.matrix);
}

}  // namespace cweyl

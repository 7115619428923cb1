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

#include "cweyl/torus.hpp"

#include <algorithm>
#include <cmath>

namespace cweyl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TorusContext::TorusContext(int dimension, double chi_q_, double chi_p_)
    : N(dimension), chi_q(chi_q_), chi_p(chi_p_) {
    if (N < 1) {
        throw std::invalid_argument("TorusContext: dimension must be >= 1");
    }
    if (chi_q < 0.0 || chi_q >= 1.0 || chi_p < 0.0 || chi_p >= 1.0) {
        throw std::invalid_argument("TorusContext: Floquet phases must lie in [0, 1)");
    }
}

Eigen::MatrixXcd fourier_kernel(const TorusContext& ctx) {
    const int N = ctx.N;
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    Eigen::MatrixXcd G(N, N);
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            // Reduce the phase modulo N before scaling so large N keeps full precision.
            const double phase = std::fmod((j + ctx.chi_q) * (k + ctx.chi_p), static_cast<double>(N));
            G(k, j) = std::polar(scale, -kTwoPi * phase / N);
        }
    }
    return G;
}

CoherentState coherent_state(const TorusContext& ctx, double q0, double p0, int images) {
    const int N = ctx.N;
    CoherentState z;
    z.q0 = q0;
    z.p0 = p0;
    z.image_count = images;
    z.amplitudes = Eigen::VectorXcd::Zero(N);
    for (int j = 0; j < N; ++j) {
        Complex sum = 0.0;
        for (int m = -images; m <= images; ++m) {
            const double dq = ctx.position(j) + m - q0;
            // Image phase exp(-i 2 pi chi_p m) makes the momentum amplitudes a clean
            // lattice Fourier sum of the unperiodized packet.
            const double phase = kTwoPi * (N * p0 * dq - ctx.chi_p * m);
            sum += std::polar(std::exp(-std::numbers::pi * N * dq * dq), phase);
        }
        z.amplitudes(j) = sum;
    }
    z.amplitudes.normalize();
    return z;
}

double HusimiGrid::total() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

std::pair<int, int> HusimiGrid::argmax() const {
    const auto it = std::max_element(values.begin(), values.end());
    const auto idx = static_cast<int>(std::distance(values.begin(), it));
    return {idx / grid.n_p, idx % grid.n_p};
}

CoherentFrame::CoherentFrame(const TorusContext& ctx, GridSpec grid) : grid_(grid) {
    if (grid.n_q < 1 || grid.n_p < 1) {
        throw std::invalid_argument("CoherentFrame: grid resolution must be positive");
    }
    const Eigen::MatrixXcd G = fourier_kernel(ctx);
    Eigen::MatrixXcd position(ctx.N, static_cast<Eigen::Index>(grid.n_q) * grid.n_p);
    for (int a = 0; a < grid.n_q; ++a) {
        for (int b = 0; b < grid.n_p; ++b) {
            position.col(static_cast<Eigen::Index>(a) * grid.n_p + b) =
                coherent_state(ctx, grid.q(a), grid.p(b)).amplitudes;
        }
    }
    states_.noalias() = G * position;
}

HusimiGrid husimi_state(const CoherentFrame& frame, const Eigen::VectorXcd& psi) {
    if (psi.size() != frame.dimension()) {
        throw std::invalid_argument("husimi_state: vector dimension does not match the torus");
    }
    if (psi.squaredNorm() == 0.0) {
        throw std::invalid_argument("husimi_state: zero vector");
    }
    HusimiGrid out(frame.grid());
    const Eigen::VectorXcd amps = frame.states().adjoint() * psi;
    for (Eigen::Index i = 0; i < amps.size(); ++i) out.values[static_cast<std::size_t>(i)] = std::norm(amps(i));
    return out;
}

HusimiGrid husimi_state(const TorusContext& ctx, const Eigen::VectorXcd& psi, GridSpec grid) {
    return husimi_state(CoherentFrame(ctx, grid), psi);
}

void accumulate_husimi_operator(const CoherentFrame& frame, const Eigen::MatrixXcd& op, HusimiGrid& into) {
    if (op.rows() != frame.dimension() || op.cols() != frame.dimension()) {
        throw std::invalid_argument("husimi_operator: operator dimension does not match the torus");
    }
    const double norm2 = op.squaredNorm();
    if (norm2 == 0.0) {
        throw std::invalid_argument("husimi_operator: zero operator");
    }
    const Eigen::MatrixXcd& Z = frame.states();
    const Eigen::MatrixXcd W = op * Z;
    const auto cols = Z.cols();
    for (Eigen::Index c = 0; c < cols; ++c) {
        const Complex expectation = Z.col(c).dot(W.col(c));  // <z|op|z>
        into.values[static_cast<std::size_t>(c)] += std::norm(expectation) / norm2;
    }
}

HusimiGrid husimi_operator(const CoherentFrame& frame, const Eigen::MatrixXcd& op) {
    HusimiGrid out(frame.grid());
    accumulate_husimi_operator(frame, op, out);
    return out;
}

HusimiGrid husimi_operator(const TorusContext& ctx, const Eigen::MatrixXcd& op, GridSpec grid) {
    return husimi_operator(CoherentFrame(ctx, grid), op);
}

}  // namespace cweyl

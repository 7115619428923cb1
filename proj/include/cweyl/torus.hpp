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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cweyl {

using Complex = std::complex<double>;

/// Hilbert space of a quantized 2-torus.
///
/// Position and momentum lattices are q_j = (j + chi_q)/N and
/// p_k = (k + chi_p)/N with j, k = 0..N-1. Every operator in this library is
/// written in the momentum basis {|p_k>} unless stated otherwise.
struct TorusContext {
    int N = 2;
    double chi_q = 0.5;
    double chi_p = 0.5;

    explicit TorusContext(int dimension, double chi_q_ = 0.5, double chi_p_ = 0.5);

    [[nodiscard]] double hbar() const { return 1.0 / (2.0 * std::numbers::pi * N); }
    [[nodiscard]] double position(int j) const { return (j + chi_q) / N; }
    [[nodiscard]] double momentum(int k) const { return (k + chi_p) / N; }
};

/// (G_N)_{kj} = <p_k|q_j> = N^{-1/2} exp(-i 2 pi (j + chi_q)(k + chi_p) / N).
Eigen::MatrixXcd fourier_kernel(const TorusContext& ctx);

struct CoherentState {
    double q0 = 0.0;
    double p0 = 0.0;
    Eigen::VectorXcd amplitudes;  // position representation, unit norm
    int image_count = 3;
};

/// Gaussian wavepacket centred at (q0, p0), periodized over |m| <= images
/// integer translations so that it satisfies the torus boundary phases.
CoherentState coherent_state(const TorusContext& ctx, double q0, double p0, int images = 3);

/// Cell-centred uniform phase-space lattice.
struct GridSpec {
    int n_q = 128;
    int n_p = 128;

    [[nodiscard]] double q(int a) const { return (a + 0.5) / n_q; }
    [[nodiscard]] double p(int b) const { return (b + 0.5) / n_p; }
    [[nodiscard]] double cell_area() const { return 1.0 / (static_cast<double>(n_q) * n_p); }
};

struct HusimiGrid {
    GridSpec grid;
    std::vector<double> values;  // values[a * n_p + b] at (q_a, p_b)

    HusimiGrid() = default;
    explicit HusimiGrid(GridSpec g) : grid(g), values(static_cast<std::size_t>(g.n_q) * g.n_p, 0.0) {}

    [[nodiscard]] double& at(int a, int b) { return values[static_cast<std::size_t>(a) * grid.n_p + b]; }
    [[nodiscard]] double at(int a, int b) const { return values[static_cast<std::size_t>(a) * grid.n_p + b]; }
    [[nodiscard]] double total() const;
    /// Grid indices of the largest value.
    [[nodiscard]] std::pair<int, int> argmax() const;
};

/// Momentum-basis coherent states for every node of a grid, one column per
/// node, in the same (a * n_p + b) order as HusimiGrid::values.
class CoherentFrame {
public:
    CoherentFrame(const TorusContext& ctx, GridSpec grid);

    [[nodiscard]] const Eigen::MatrixXcd& states() const { return states_; }
    [[nodiscard]] const GridSpec& grid() const { return grid_; }
    [[nodiscard]] int dimension() const { return static_cast<int>(states_.rows()); }

private:
    GridSpec grid_;
    Eigen::MatrixXcd states_;
};

/// |<z|psi>|^2 for a momentum-basis vector psi.
HusimiGrid husimi_state(const TorusContext& ctx, const Eigen::VectorXcd& psi, GridSpec grid = {});
HusimiGrid husimi_state(const CoherentFrame& frame, const Eigen::VectorXcd& psi);

/// |<z|op|z>|^2 / Tr(op^dagger op) for a momentum-basis operator.
HusimiGrid husimi_operator(const TorusContext& ctx, const Eigen::MatrixXcd& op, GridSpec grid = {});
HusimiGrid husimi_operator(const CoherentFrame& frame, const Eigen::MatrixXcd& op);

/// Adds husimi_operator(frame, op) into an existing grid.
void accumulate_husimi_operator(const CoherentFrame& frame, const Eigen::MatrixXcd& op, HusimiGrid& into);

}  // namespace cweyl

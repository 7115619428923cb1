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

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cweyl/spectra.hpp"
#include "cweyl/torus.hpp"

namespace cweyl {

/// Fraction of long-lived resonances for one (epsilon, gamma_cut, N) cell.
struct WeylDataPoint {
    double epsilon = 0.0;
    double gamma_cut = 0.0;
    int N = 0;
    std::size_t count = 0;

    [[nodiscard]] double f() const { return static_cast<double>(count) / (static_cast<double>(N) * N); }
    /// Scaling variable (epsilon gamma_cut) / N.
    [[nodiscard]] double x() const { return epsilon * gamma_cut / N; }
};

struct SweepFailure {
    double epsilon = 0.0;
    int N = 0;
    std::string message;
};

struct SweepResult {
    std::vector<WeylDataPoint> points;
    std::vector<SweepFailure> failures;
};

/// Supplies the complete eigenvalue list of the contractive channel at
/// (epsilon, N), from a cache or a fresh diagonalization. Throws on failure.
using SpectrumProvider = std::function<std::vector<Complex>(double epsilon, int N)>;

/// One point per (epsilon, N, gamma_cut) triple; a failed (epsilon, N) spectrum
/// drops its cells and is recorded instead of aborting the sweep.
SweepResult weyl_sweep(std::span<const double> epsilons, std::span<const int> dimensions,
                       std::span<const double> gamma_cuts, const SpectrumProvider& provider);

/// f = C (epsilon gamma_cut / N)^(2 nu), fitted as a line in (ln x, ln f).
struct WeylFit {
    double C = 0.0;
    double nu = 0.0;
    double rss = 0.0;  // residual sum of squares of ln f
    double r2 = 0.0;
    int n_points = 0;
};

enum class FitMode { pooled, per_epsilon };

/// Least-squares fit over all points with count >= 1.
WeylFit fit_weyl(std::span<const WeylDataPoint> points);
/// One fit per distinct epsilon.
std::map<double, WeylFit> fit_weyl_per_epsilon(std::span<const WeylDataPoint> points);

/// Closed-form classical quantities of the dissipative baker map.
struct SemiclassicalModel {
    double epsilon = 0.0;
    double lambda1 = 0.0;   // expanding Lyapunov exponent, ln 2
    double lambda2 = 0.0;   // contracting Lyapunov exponent, -ln(2/eps)
    double gamma_cl = 0.0;  // classical decay rate, -ln eps
    double d = 0.0;         // attractor dimension, 1 + ln2 / (ln2 - ln eps)
    double nu_sc = 0.0;     // 2 - d
};

SemiclassicalModel nu_semiclassical(double epsilon);

struct EhrenfestTimes {
    double t_ehr1 = 0.0;  // ln N / ln 2
    double t_ehr2 = 0.0;  // ln N / ln(2/eps)
};

EhrenfestTimes ehrenfest_times(double epsilon, int N, double constant = 1.0);

enum class InitialState {
    maximally_mixed,        // I / N
    uniform_superposition,  // pure state with equal weight on every |p_k>
};

struct OverlapSample {
    int t = 0;
    double overlap = 0.0;
};

struct OverlapCurve {
    double epsilon = 0.0;
    int N = 0;
    std::vector<OverlapSample> samples;
    double t_ehr1 = 0.0;
    double t_ehr2 = 0.0;

    /// First t with overlap below the level, or -1.
    [[nodiscard]] int first_below(double level) const;
};

/// Weight of the evolved density on the momentum states inside the finite-time
/// classical attractor, for t = 0..t_max. O(N^3) per step.
OverlapCurve overlap_curve(const TorusContext& ctx, double epsilon, int t_max,
                           InitialState initial = InitialState::maximally_mixed);

}  // namespace cweyl

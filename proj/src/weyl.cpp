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

#include "cweyl/weyl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cweyl/channels.hpp"
#include "cweyl/maps.hpp"

namespace cweyl {

SweepResult weyl_sweep(std::span<const double> epsilons, std::span<const int> dimensions,
                       std::span<const double> gamma_cuts, const SpectrumProvider& provider) {
    SweepResult result;
    for (double eps : epsilons) {
        for (int N : dimensions) {
            std::vector<Complex> eigenvalues;
            try {
                eigenvalues = provider(eps, N);
            } catch (const std::exception& e) {
                result.failures.push_back({eps, N, e.what()});
                continue;
            }
            for (double cut : gamma_cuts) {
                const auto count = count_long_lived(std::span<const Complex>(eigenvalues), DecayQuery(cut));
                result.points.push_back({eps, cut, N, count});
            }
        }
    }
    return result;
}

WeylFit fit_weyl(std::span<const WeylDataPoint> points) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& p : points) {
        if (p.count == 0) continue;
        xs.push_back(std::log(p.x()));
        ys.push_back(std::log(p.f()));
    }
    const auto n = static_cast<double>(xs.size());
    if (xs.size() < 3) {
        throw std::invalid_argument("fit_weyl: need at least 3 points with count >= 1");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 1e-300) {
        throw std::invalid_argument("fit_weyl: degenerate abscissa, all x = eps*gamma_cut/N are equal");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    WeylFit fit;
    fit.C = std::exp(intercept);
    fit.nu = slope / 2.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        fit.rss += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - fit.rss / syy : 1.0;
    fit.n_points = static_cast<int>(xs.size());
    return fit;
}

std::map<double, WeylFit> fit_weyl_per_epsilon(std::span<const WeylDataPoint> points) {
    std::map<double, std::vector<WeylDataPoint>> groups;
    for (const auto& p : points) groups[p.epsilon].push_back(p);
    std::map<double, WeylFit> fits;
    for (const auto& [eps, group] : groups) fits[eps] = fit_weyl(group);
    return fits;
}

SemiclassicalModel nu_semiclassical(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("nu_semiclassical: epsilon must lie in (0, 1); the attractor dimension is "
                                    "undefined for the area-preserving map");
    }
    SemiclassicalModel m;
    m.epsilon = epsilon;
    m.lambda1 = std::numbers::ln2;
    m.lambda2 = -std::log(2.0 / epsilon);
    m.gamma_cl = -std::log(epsilon);
    m.d = 1.0 + std::numbers::ln2 / (std::numbers::ln2 - std::log(epsilon));
    m.nu_sc = 2.0 - m.d;
    return m;
}

EhrenfestTimes ehrenfest_times(double epsilon, int N, double constant) {
    if (!(epsilon > 0.0 && epsilon <= 1.0) || N < 1) {
        throw std::invalid_argument("ehrenfest_times: need 0 < epsilon <= 1 and N >= 1");
    }
    const double lnN = std::log(static_cast<double>(N));
    return {constant * lnN / std::numbers::ln2, constant * lnN / std::log(2.0 / epsilon)};
}

int OverlapCurve::first_below(double level) const {
    for (const auto& s : samples)
        if (s.overlap < level) return s.t;
    return -1;
}

OverlapCurve overlap_curve(const TorusContext& ctx, double epsilon, int t_max, InitialState initial) {
    if (t_max < 0 || t_max > kMaxAttractorDepth) {
        throw std::invalid_argument("overlap_curve: t_max must lie in [0, " + std::to_string(kMaxAttractorDepth) + "]");
    }
    const int N = ctx.N;
    const DissipativeBakerParams params(epsilon);
    const KrausSet kraus(ctx, epsilon);
    const UnitaryMap B = quantum_baker(ctx);

    Eigen::MatrixXcd rho;
    if (initial == InitialState::maximally_mixed) {
        rho = Eigen::MatrixXcd::Identity(N, N) / static_cast<double>(N);
    } else {
        rho = Eigen::MatrixXcd::Constant(N, N, 1.0 / N);
    }

    OverlapCurve curve;
    curve.epsilon = epsilon;
    curve.N = N;
    const auto times = ehrenfest_times(epsilon, N);
    curve.t_ehr1 = times.t_ehr1;
    curve.t_ehr2 = times.t_ehr2;
    for (int t = 0; t <= t_max; ++t) {
        const IntervalSet region = attractor_intervals(params, t);
        double weight = 0.0;
        for (int k = 0; k < N; ++k) {
            if (region.contains(ctx.momentum(k))) weight += rho(k, k).real();
        }
        curve.samples.push_back({t, weight});
        if (t < t_max) rho = apply_channel(kraus, B, rho);
    }
    return curve;
}

}  // namespace cweyl

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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cweyl/analysis.hpp"
#include "cweyl/maps.hpp"
#include "cweyl/torus.hpp"
#include "cweyl/weyl.hpp"

namespace cweyl::io {

/// Shortest round-trip form is not required; 17 significant digits always
/// reproduce the double exactly.
std::string format_double(double x);

void write_json(const std::filesystem::path& file, const nlohmann::json& j);

/// `epsilon,gamma_cut,N,count,f,x`
void write_sweep_csv(const std::filesystem::path& file, const std::vector<WeylDataPoint>& points);
std::vector<WeylDataPoint> read_sweep_csv(const std::filesystem::path& file);

/// `{C, nu, rss, r2, n_points, mode}`
nlohmann::json fit_json(const WeylFit& fit, FitMode mode);
nlohmann::json fit_json(const std::map<double, WeylFit>& fits);

/// `t,O,t_ehr1,t_ehr2`
void write_overlap_curve_csv(const std::filesystem::path& file, const OverlapCurve& curve);

/// `lo,hi` rows plus `{epsilon, t, measure}` sidecar.
void write_intervals(const std::filesystem::path& csv, const std::filesystem::path& sidecar, double epsilon,
                     const IntervalSet& set);

/// k x k moduli |P_ij|, comma separated, one matrix row per line.
void write_overlap_matrix_csv(const std::filesystem::path& file, const OverlapMatrix& P);

/// `q,p,value`, row-major over (q, p).
void write_husimi_csv(const std::filesystem::path& file, const HusimiGrid& grid);
/// Raw little-endian float64 values plus `{n_q, n_p, N, kind}` sidecar.
void write_husimi_raw(const std::filesystem::path& file, const std::filesystem::path& sidecar, const HusimiGrid& grid,
                      int N, const std::string& kind);
HusimiGrid read_husimi_raw(const std::filesystem::path& file, const std::filesystem::path& sidecar);

}  // namespace cweyl::io

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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cweyl/maps.hpp"
#include "cweyl/torus.hpp"
#include "cweyl/weyl.hpp"

namespace cweyl {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExitCode : int { success = 0, config_error = 2, all_failed = 3 };

inline constexpr const char* kCommands[] = {"spectrum",       "sweep", "fit",      "overlap-curve",
                                            "overlap-matrix", "husimi", "attractor"};

struct RunConfig {
    std::string command;
    std::vector<double> epsilons;
    std::vector<int> dimensions;
    std::vector<double> gamma_cuts;
    std::optional<OpeningSpec> opening;
    OpeningOrder opening_order = OpeningOrder::project_then_propagate;
    GridSpec grid;
    std::optional<std::size_t> k;
    FitMode mode = FitMode::pooled;
    std::filesystem::path cache_dir = "cweyl-cache";
    std::filesystem::path out_dir = ".";
    std::size_t memory_cap = std::size_t{8} << 30;
    std::filesystem::path input;
    int t_max = 12;
    std::string format = "csv";
    InitialState initial = InitialState::maximally_mixed;
    double mass_fraction = 0.9;

    /// Flat JSON mirroring the command-line flags.
    [[nodiscard]] nlohmann::json to_json() const;
    /// Throws ConfigError on any invariant violation.
    void validate() const;
};

/// Parses `cweyl <command> [flags]`; a `--config file.json` supplies defaults
/// that explicit flags override. Throws ConfigError.
RunConfig parse_run_config(int argc, const char* const* argv);
RunConfig parse_run_config(const std::vector<std::string>& args);

/// Parsers for the list-valued flags.
std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
OpeningSpec parse_opening(const std::string& text);
GridSpec parse_grid(const std::string& text);
std::size_t parse_bytes(const std::string& text);

struct RunReport {
    ExitCode exit = ExitCode::success;
    std::vector<std::filesystem::path> artifacts;
    std::filesystem::path manifest;
    int cells_ok = 0;
    int cells_failed = 0;
    int cache_hits = 0;
    int spectra_computed = 0;
};

/// Executes one command and writes its artifacts plus a manifest.
RunReport run(const RunConfig& config);

/// Full command-line entry point; returns the process exit status.
int run_main(int argc, const char* const* argv);

}  // namespace cweyl

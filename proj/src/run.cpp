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

#include "cweyl/run.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cweyl/analysis.hpp"
#include "cweyl/blas_env.hpp"
#include "cweyl/cache.hpp"
#include "cweyl/io.hpp"
#include "cweyl/pipeline.hpp"

namespace cweyl {

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text, char sep = ',') {
    std::vector<std::string> parts;
    std::istringstream is(text);
    std::string cur;
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) parts.push_back(cur);
    }
    return parts;
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("invalid ") + what + ": '" + s + "'");
}

bool needs_baker(const std::string& command) {
    return command == "spectrum" || command == "sweep" || command == "overlap-curve" || command == "overlap-matrix" ||
           command == "husimi";
}

std::string opening_text(const OpeningSpec& spec) {
    std::string out;
    for (const auto& b : spec.bands) {
        if (!out.empty()) out += ',';
        out += io::format_double(b.lo) + ":" + io::format_double(b.hi);
    }
    return out;
}

json bands_json(const OpeningSpec& spec) {
    json arr = json::array();
    for (const auto& b : spec.bands) arr.push_back({b.lo, b.hi});
    return arr;
}

// Values supplied on the command line, by flag name without dashes.
using FlagValues = std::map<std::string, std::string>;

// Flag value, else config-file value, else nothing.
std::optional<json> lookup(const FlagValues& flags, const json& file, const std::string& key) {
    if (auto it = flags.find(key); it != flags.end()) return json(it->second);
    if (file.contains(key)) return file.at(key);
    return std::nullopt;
}

std::string as_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
        std::string out;
        for (const auto& e : j) {
            if (!out.empty()) out += ',';
            out += as_text(e);
        }
        return out;
    }
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) return io::format_double(j.get<double>());
    throw ConfigError("unsupported config value " + j.dump());
}

void apply_command_defaults(RunConfig& c) {
    const auto set_if_empty = [](auto& vec, auto values) {
        if (vec.empty()) vec = values;
    };
    if (c.command == "sweep") {
        set_if_empty(c.epsilons, std::vector<double>{0.4, 0.6, 0.7, 0.8});
        set_if_empty(c.dimensions, std::vector<int>{60, 72, 84, 96});
        set_if_empty(c.gamma_cuts, std::vector<double>{2, 4, 6, 8, 10, 12, 14});
    } else if (c.command == "overlap-curve") {
        set_if_empty(c.epsilons, std::vector<double>{0.4, 0.8});
        set_if_empty(c.dimensions, std::vector<int>{100, 200, 400});
    } else if (c.command == "overlap-matrix") {
        if (c.epsilons.empty() && !c.opening) c.epsilons = {0.4, 0.6, 0.8};
        set_if_empty(c.dimensions, std::vector<int>{96});
        if (!c.k && c.gamma_cuts.empty()) c.k = 100;
    } else if (c.command == "husimi") {
        if (c.epsilons.empty() && !c.opening) c.epsilons = {0.6};
        set_if_empty(c.dimensions, std::vector<int>{96});
        if (!c.k && c.gamma_cuts.empty()) c.gamma_cuts = {6.0};
    } else if (c.command == "attractor") {
        set_if_empty(c.epsilons, std::vector<double>{0.4, 0.6, 0.7, 0.8});
    }
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split_list(text)) out.push_back(to_double(part, "number"));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split_list(text)) {
        const double v = to_double(part, "integer");
        if (v != static_cast<int>(v)) throw ConfigError("invalid integer: '" + part + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

OpeningSpec parse_opening(const std::string& text) {
    OpeningSpec spec;
    for (const auto& band : split_list(text)) {
        const auto ends = split_list(band, ':');
        if (ends.size() != 2) throw ConfigError("opening band must read lo:hi, got '" + band + "'");
        spec.bands.push_back({to_double(ends[0], "band edge"), to_double(ends[1], "band edge")});
    }
    return spec;
}

GridSpec parse_grid(const std::string& text) {
    const auto parts = split_list(text, ':');
    if (parts.size() != 2) throw ConfigError("grid must read nq:np, got '" + text + "'");
    const auto nq = parse_int_list(parts[0]);
    const auto np = parse_int_list(parts[1]);
    return GridSpec{nq.at(0), np.at(0)};
}

std::size_t parse_bytes(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty memory cap");
    std::size_t scale = 1;
    switch (std::toupper(static_cast<unsigned char>(t.back()))) {
        case 'K': scale = std::size_t{1} << 10; break;
        case 'M': scale = std::size_t{1} << 20; break;
        case 'G': scale = std::size_t{1} << 30; break;
        default: break;
    }
    if (scale != 1) t.pop_back();
    const double v = to_double(t, "memory cap");
    if (!(v > 0)) throw ConfigError("memory cap must be positive");
    return static_cast<std::size_t>(v * static_cast<double>(scale));
}

json RunConfig::to_json() const {
    json j;
    j["command"] = command;
    j["epsilon"] = epsilons;
    j["N"] = dimensions;
    j["gamma-cut"] = gamma_cuts;
    j["opening"] = opening ? opening_text(*opening) : "";
    j["opening-order"] = opening_order == OpeningOrder::project_then_propagate ? "BP" : "PB";
    j["grid"] = std::to_string(grid.n_q) + ":" + std::to_string(grid.n_p);
    j["k"] = k ? json(*k) : json(nullptr);
    j["mode"] = mode == FitMode::pooled ? "pooled" : "per-epsilon";
    j["cache-dir"] = cache_dir.string();
    j["out"] = out_dir.string();
    j["memory-cap"] = memory_cap;
    j["input"] = input.string();
    j["t-max"] = t_max;
    j["format"] = format;
    j["initial-state"] = initial == InitialState::maximally_mixed ? "mixed" : "pure";
    j["mass-fraction"] = mass_fraction;
    return j;
}

void RunConfig::validate() const {
    if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
        throw ConfigError("unknown command '" + command + "'");
    }
    for (double e : epsilons) {
        if (!(e > 0.0 && e <= 1.0)) throw ConfigError("epsilon must lie in (0, 1], got " + io::format_double(e));
    }
    for (double g : gamma_cuts) {
        if (!(g > 0.0)) throw ConfigError("gamma-cut must be > 0, got " + io::format_double(g));
    }
    for (int n : dimensions) {
        if (n < 2) throw ConfigError("N must be >= 2, got " + std::to_string(n));
        if (needs_baker(command) && n % 2 != 0) throw ConfigError("N must be even, got " + std::to_string(n));
    }
    if (opening) {
        for (const auto& b : opening->bands) {
            if (!(b.lo >= 0.0 && b.lo < b.hi && b.hi <= 1.0)) {
                throw ConfigError("opening bands must satisfy 0 <= lo < hi <= 1");
            }
        }
    }
    if (grid.n_q < 1 || grid.n_p < 1) throw ConfigError("grid resolution must be positive");
    if (k && *k < 1) throw ConfigError("k must be >= 1");
    if (command == "overlap-matrix" && k && *k < 2) throw ConfigError("overlap-matrix needs k >= 2");
    if (t_max < 0 || t_max > kMaxAttractorDepth) throw ConfigError("t-max must lie in [0, 30]");
    if (format != "csv" && format != "raw") throw ConfigError("format must be csv or raw");
    if (!(mass_fraction > 0.0 && mass_fraction < 1.0)) throw ConfigError("mass-fraction must lie in (0, 1)");
    if (command == "fit" && input.empty()) throw ConfigError("fit needs --input <sweep.csv>");
    if ((command == "spectrum" || command == "sweep") && dimensions.empty()) throw ConfigError("no N given");
    if (command == "spectrum" && epsilons.empty() && !opening) throw ConfigError("spectrum needs --epsilon or --opening");
    if (command == "sweep" && (epsilons.empty() || gamma_cuts.empty())) throw ConfigError("sweep needs epsilons and cuts");
}

RunConfig parse_run_config(int argc, const char* const* argv) {
    CLI::App app{"cweyl: spectra of open quantum baker maps"};
    std::string command;
    app.add_option("command", command, "spectrum|sweep|fit|overlap-curve|overlap-matrix|husimi|attractor")->required();

    FlagValues flags;
    const std::vector<std::pair<std::string, std::string>> options = {
        {"epsilon", "contraction factors, comma separated"},
        {"N", "Hilbert-space dimensions, comma separated"},
        {"gamma-cut", "decay-rate cuts, comma separated"},
        {"opening", "projective opening bands lo:hi[,lo:hi...]"},
        {"grid", "Husimi grid nq:np"},
        {"k", "number of leading states"},
        {"mode", "fit mode: pooled|per-epsilon"},
        {"cache-dir", "spectrum cache directory"},
        {"out", "output directory"},
        {"memory-cap", "pre-flight memory cap in bytes (K/M/G suffix allowed)"},
        {"config", "JSON config file; flags override its keys"},
        {"input", "input sweep CSV for fit"},
        {"t-max", "attractor depth / overlap-curve length"},
        {"format", "Husimi output: csv|raw"},
        {"initial-state", "overlap-curve initial state: mixed|pure"},
    };
    std::map<std::string, std::string> storage;
    for (const auto& [name, help] : options) {
        app.add_option("--" + name, storage[name], help);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    for (const auto& [name, help] : options) {
        if (app.count("--" + name) > 0) flags[name] = storage[name];
    }

    json file = json::object();
    if (auto it = flags.find("config"); it != flags.end()) {
        std::ifstream in(it->second);
        if (!in) throw ConfigError("cannot read config file " + it->second);
        try {
            file = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("config file " + it->second + ": " + e.what());
        }
        if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
        if (file.contains("command") && file.at("command").get<std::string>() != command) {
            throw ConfigError("config file is for command '" + file.at("command").get<std::string>() + "'");
        }
    }

    RunConfig c;
    c.command = command;
    try {
        if (auto v = lookup(flags, file, "epsilon")) c.epsilons = parse_double_list(as_text(*v));
        if (auto v = lookup(flags, file, "N")) c.dimensions = parse_int_list(as_text(*v));
        if (auto v = lookup(flags, file, "gamma-cut")) c.gamma_cuts = parse_double_list(as_text(*v));
        if (auto v = lookup(flags, file, "opening")) {
            const auto text = as_text(*v);
            if (!text.empty()) c.opening = parse_opening(text);
        }
        if (auto v = lookup(flags, file, "opening-order")) {
            const auto text = as_text(*v);
            if (text == "BP") c.opening_order = OpeningOrder::project_then_propagate;
            else if (text == "PB") c.opening_order = OpeningOrder::propagate_then_project;
            else throw ConfigError("opening-order must be BP or PB");
        }
        if (auto v = lookup(flags, file, "grid")) c.grid = parse_grid(as_text(*v));
        if (auto v = lookup(flags, file, "k"); v && !v->is_null()) {
            const auto ks = parse_int_list(as_text(*v));
            if (ks.size() != 1 || ks[0] < 1) throw ConfigError("k must be a single positive integer");
            c.k = static_cast<std::size_t>(ks[0]);
        }
        if (auto v = lookup(flags, file, "mode")) {
            const auto text = as_text(*v);
            if (text == "pooled") c.mode = FitMode::pooled;
            else if (text == "per-epsilon") c.mode = FitMode::per_epsilon;
            else throw ConfigError("mode must be pooled or per-epsilon");
        }
        if (auto v = lookup(flags, file, "cache-dir")) c.cache_dir = as_text(*v);
        if (auto v = lookup(flags, file, "out")) c.out_dir = as_text(*v);
        if (auto v = lookup(flags, file, "memory-cap")) c.memory_cap = parse_bytes(as_text(*v));
        if (auto v = lookup(flags, file, "input")) c.input = as_text(*v);
        if (auto v = lookup(flags, file, "t-max")) c.t_max = parse_int_list(as_text(*v)).at(0);
        if (auto v = lookup(flags, file, "format")) c.format = as_text(*v);
        if (auto v = lookup(flags, file, "initial-state")) {
            const auto text = as_text(*v);
            if (text == "mixed") c.initial = InitialState::maximally_mixed;
            else if (text == "pure") c.initial = InitialState::uniform_superposition;
            else throw ConfigError("initial-state must be mixed or pure");
        }
        if (auto v = lookup(flags, file, "mass-fraction")) c.mass_fraction = parse_double_list(as_text(*v)).at(0);
    } catch (const std::out_of_range&) {
        throw ConfigError("empty value in configuration");
    }
    apply_command_defaults(c);
    c.validate();
    return c;
}

RunConfig parse_run_config(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"cweyl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_run_config(static_cast<int>(argv.size()), argv.data());
}

namespace {

struct Cell {
    SpectrumParams params;
    std::string label;
    json describe;
};

std::vector<Cell> spectral_cells(const RunConfig& c) {
    std::vector<Cell> cells;
    for (int N : c.dimensions) {
        for (double eps : c.epsilons) {
            cells.push_back({SpectrumParams::contractive_map(N, eps),
                             "eps=" + io::format_double(eps) + " N=" + std::to_string(N),
                             {{"kind", "contractive"}, {"epsilon", eps}, {"N", N}}});
        }
        if (c.opening) {
            cells.push_back({SpectrumParams::projective_map(N, *c.opening, c.opening_order),
                             "opening=" + opening_text(*c.opening) + " N=" + std::to_string(N),
                             {{"kind", "projective"}, {"opening", bands_json(*c.opening)}, {"N", N}}});
        }
    }
    return cells;
}

class Runner {
public:
    explicit Runner(const RunConfig& config)
        : c_(config), store_(resolve_cache_dir(config.cache_dir)), service_(store_, config.memory_cap) {
        json key = c_.to_json();
        key.erase("out");
        key.erase("cache-dir");
        key.erase("memory-cap");
        hash_ = short_hash(key.dump());
    }

    RunReport execute() {
        const auto start = std::chrono::steady_clock::now();
        std::filesystem::create_directories(c_.out_dir);
        if (c_.command == "spectrum") spectrum();
        else if (c_.command == "sweep") sweep();
        else if (c_.command == "fit") fit();
        else if (c_.command == "overlap-curve") overlap_curve_cmd();
        else if (c_.command == "overlap-matrix") overlap_matrix_cmd();
        else if (c_.command == "husimi") husimi_cmd();
        else if (c_.command == "attractor") attractor_cmd();

        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report_.cache_hits = store_.hits();
        report_.spectra_computed = service_.computed();
        report_.exit = (report_.cells_failed > 0 && report_.cells_ok == 0) ? ExitCode::all_failed : ExitCode::success;

        json artifacts = json::array();
        for (const auto& a : report_.artifacts) artifacts.push_back(a.filename().string());
        json manifest = {{"command", c_.command},
                         {"config", c_.to_json()},
                         {"version", kVersion},
                         {"blas_core", blas_core_name()},
                         {"wall_time_s", wall},
                         {"cache",
                          {{"dir", store_.directory().string()},
                           {"hits", store_.hits()},
                           {"misses", store_.misses()},
                           {"computed", service_.computed()}}},
                         {"cells", {{"ok", report_.cells_ok}, {"failed", report_.cells_failed}}},
                         {"failures", failures_},
                         {"outputs", outputs_},
                         {"artifacts", artifacts}};
        report_.manifest = name("manifest.json");
        io::write_json(report_.manifest, manifest);
        return report_;
    }

private:
    [[nodiscard]] std::filesystem::path name(const std::string& ext, const std::string& cell = "") const {
        const std::string h = cell.empty() ? hash_ : short_hash(hash_ + "|" + cell);
        return c_.out_dir / (c_.command + "_" + h + "." + ext);
    }

    void record(const std::filesystem::path& file) { report_.artifacts.push_back(file); }

    void fail(const std::string& label, const std::string& message) {
        ++report_.cells_failed;
        failures_.push_back({{"cell", label}, {"error", message}});
        std::cerr << "cweyl: " << label << ": " << message << '\n';
    }

    unsigned parallelism(int largest_N) const {
        const std::size_t per_job = service_.estimate_bytes(largest_N);
        const auto by_memory = static_cast<unsigned>(std::max<std::size_t>(1, c_.memory_cap / std::max<std::size_t>(per_job, 1)));
        return std::max(1u, std::min(by_memory, std::max(1u, std::thread::hardware_concurrency())));
    }

    void spectrum() {
        const auto cells = spectral_cells(c_);
        const auto file = name("csv");
        std::ofstream out(file);
        out << "kind,epsilon,N,index,re,im,modulus,gamma\n";
        for (const auto& cell : cells) {
            try {
                const auto values = service_.eigenvalues(cell.params);
                const bool contractive = cell.params.kind == ChannelKind::contractive;
                for (std::size_t i = 0; i < values.size(); ++i) {
                    const auto l = values[i];
                    out << (contractive ? "contractive" : "projective") << ','
                        << (contractive ? io::format_double(cell.params.epsilon) : "") << ',' << cell.params.N << ','
                        << i << ',' << io::format_double(l.real()) << ',' << io::format_double(l.imag()) << ','
                        << io::format_double(std::abs(l)) << ',' << io::format_double(decay_rate(l)) << '\n';
                }
                ++report_.cells_ok;
                outputs_.push_back({{"cell", cell.describe}, {"file", file.filename().string()}});
            } catch (const std::exception& e) {
                fail(cell.label, e.what());
            }
        }
        record(file);
    }

    void sweep() {
        std::map<std::pair<double, int>, std::vector<Complex>> values;
        std::map<std::pair<double, int>, std::string> errors;
        std::vector<std::function<void()>> jobs;
        std::vector<std::pair<double, int>> keys;
        for (double eps : c_.epsilons)
            for (int N : c_.dimensions) keys.emplace_back(eps, N);
        std::mutex guard;
        for (const auto& key : keys) {
            jobs.emplace_back([&, key] {
                auto v = service_.eigenvalues(SpectrumParams::contractive_map(key.second, key.first));
                std::lock_guard lock(guard);
                values[key] = std::move(v);
            });
        }
        const int largest = *std::max_element(c_.dimensions.begin(), c_.dimensions.end());
        const auto outcomes = run_jobs(jobs, parallelism(largest));
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (!outcomes[i]) continue;
            try {
                std::rethrow_exception(outcomes[i]);
            } catch (const std::exception& e) {
                errors[keys[i]] = e.what();
            }
        }
        const auto result = weyl_sweep(c_.epsilons, c_.dimensions, c_.gamma_cuts, [&](double eps, int N) {
            if (auto it = errors.find({eps, N}); it != errors.end()) throw std::runtime_error(it->second);
            return values.at({eps, N});
        });
        report_.cells_ok = static_cast<int>(keys.size() - result.failures.size());
        for (const auto& f : result.failures) {
            fail("eps=" + io::format_double(f.epsilon) + " N=" + std::to_string(f.N), f.message);
        }
        const auto file = name("csv");
        io::write_sweep_csv(file, result.points);
        record(file);
    }

    void fit() {
        const auto points = io::read_sweep_csv(c_.input);
        const auto file = name("json");
        if (c_.mode == FitMode::pooled) {
            io::write_json(file, io::fit_json(fit_weyl(points), FitMode::pooled));
        } else {
            io::write_json(file, io::fit_json(fit_weyl_per_epsilon(points)));
        }
        ++report_.cells_ok;
        record(file);
    }

    void overlap_curve_cmd() {
        for (double eps : c_.epsilons) {
            for (int N : c_.dimensions) {
                const std::string label = "eps=" + io::format_double(eps) + " N=" + std::to_string(N);
                try {
                    const auto curve = overlap_curve(TorusContext(N), eps, c_.t_max, c_.initial);
                    const auto file = name("csv", label);
                    io::write_overlap_curve_csv(file, curve);
                    record(file);
                    outputs_.push_back({{"cell", {{"epsilon", eps}, {"N", N}}},
                                        {"file", file.filename().string()},
                                        {"first_below_0.9", curve.first_below(0.9)},
                                        {"t_ehr2", curve.t_ehr2}});
                    ++report_.cells_ok;
                } catch (const std::exception& e) {
                    fail(label, e.what());
                }
            }
        }
    }

    ResonanceSpectrum leading(const SpectrumParams& params, double& cut_used) {
        if (c_.k) {
            const auto values = service_.eigenvalues(params);
            cut_used = gamma_cut_for_count(values, *c_.k);
        } else {
            cut_used = c_.gamma_cuts.at(0);
        }
        return service_.schur(params, cut_used);
    }

    void overlap_matrix_cmd() {
        for (const auto& cell : spectral_cells(c_)) {
            try {
                double cut = 0.0;
                const auto spectrum = leading(cell.params, cut);
                const std::size_t k = c_.k ? *c_.k : count_long_lived(spectrum, DecayQuery(cut));
                const auto P = overlap_matrix(reshape_eigenvectors(spectrum, k));
                const auto csv = name("csv", cell.label);
                const auto sidecar = name("json", cell.label);
                io::write_overlap_matrix_csv(csv, P);
                json meta = cell.describe;
                meta["k"] = k;
                meta["gamma_cut"] = cut;
                meta["ordering"] = "decreasing |lambda|";
                meta["offdiag_mass"] = offdiag_mass(P);
                io::write_json(sidecar, meta);
                record(csv);
                record(sidecar);
                outputs_.push_back({{"cell", cell.describe}, {"file", csv.filename().string()}});
                ++report_.cells_ok;
            } catch (const std::exception& e) {
                fail(cell.label, e.what());
            }
        }
    }

    void write_grid(const HusimiGrid& grid, int N, const std::string& kind, const std::string& cell) {
        if (c_.format == "csv") {
            const auto file = name("csv", cell + "|" + kind);
            io::write_husimi_csv(file, grid);
            record(file);
        } else {
            const auto file = name("f64", cell + "|" + kind);
            const auto sidecar = name("json", cell + "|" + kind);
            io::write_husimi_raw(file, sidecar, grid, N, kind);
            record(file);
            record(sidecar);
        }
    }

    void husimi_cmd() {
        for (const auto& cell : spectral_cells(c_)) {
            try {
                double cut = 0.0;
                const auto spectrum = leading(cell.params, cut);
                // all selected states: the Schur block spans exactly their subspace
                const auto k = static_cast<std::size_t>(spectrum.schur->basis.cols());
                const CoherentFrame frame(TorusContext(cell.params.N), c_.grid);
                const auto eigen_sum = husimi_sum(reshape_eigenvectors(spectrum, k), frame);
                const auto schur_sum = husimi_sum(reshape_schur_vectors(spectrum, k), frame);
                write_grid(eigen_sum, cell.params.N, "eigen-sum", cell.label);
                write_grid(schur_sum, cell.params.N, "schur-sum", cell.label);
                json meta = cell.describe;
                meta["k"] = k;
                meta["gamma_cut"] = cut;
                meta["mass_fraction"] = c_.mass_fraction;
                meta["support_area_eigen"] = support_area(eigen_sum, c_.mass_fraction);
                meta["support_area_schur"] = support_area(schur_sum, c_.mass_fraction);
                const auto summary = name("json", cell.label + "|summary");
                io::write_json(summary, meta);
                record(summary);
                outputs_.push_back(meta);
                ++report_.cells_ok;
            } catch (const std::exception& e) {
                fail(cell.label, e.what());
            }
        }
    }

    void attractor_cmd() {
        for (double eps : c_.epsilons) {
            const std::string label = "eps=" + io::format_double(eps);
            try {
                const auto set = attractor_intervals(DissipativeBakerParams(eps), c_.t_max);
                const auto csv = name("csv", label);
                const auto sidecar = name("json", label);
                io::write_intervals(csv, sidecar, eps, set);
                record(csv);
                record(sidecar);
                ++report_.cells_ok;
            } catch (const std::exception& e) {
                fail(label, e.what());
            }
        }
    }

    const RunConfig& c_;
    SpectrumStore store_;
    SpectrumService service_;
    std::string hash_;
    RunReport report_;
    json failures_ = json::array();
    json outputs_ = json::array();
};

}  // namespace

RunReport run(const RunConfig& config) {
    config.validate();
    return Runner(config).execute();
}

int run_main(int argc, const char* const* argv) {
    try {
        const auto config = parse_run_config(argc, argv);
        const auto report = run(config);
        std::cout << report.manifest.string() << '\n';
        return static_cast<int>(report.exit);
    } catch (const CLI::CallForHelp&) {
        CLI::App help_app{"cweyl"};
        std::cout << "usage: cweyl <spectrum|sweep|fit|overlap-curve|overlap-matrix|husimi|attractor> "
                     "[--epsilon list] [--N list] [--gamma-cut list] [--opening lo:hi,...] [--grid nq:np] [--k n]\n"
                     "       [--mode pooled|per-epsilon] [--cache-dir dir] [--out dir] [--memory-cap bytes]\n"
                     "       [--config file.json] [--input sweep.csv] [--t-max t] [--format csv|raw]\n"
                     "       [--initial-state mixed|pure]\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "cweyl: configuration error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::config_error);
    } catch (const std::exception& e) {
        std::cerr << "cweyl: " << e.what() << '\n';
        return static_cast<int>(ExitCode::all_failed);
    }
}

}  // namespace cweyl

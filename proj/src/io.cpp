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

#include "cweyl/io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cweyl::io {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_json(const std::filesystem::path& file, const nlohmann::json& j) {
    auto out = open_out(file);
    out << j.dump(2) << '\n';
}

void write_sweep_csv(const std::filesystem::path& file, const std::vector<WeylDataPoint>& points) {
    auto out = open_out(file);
    out << "epsilon,gamma_cut,N,count,f,x\n";
    for (const auto& p : points) {
        out << format_double(p.epsilon) << ',' << format_double(p.gamma_cut) << ',' << p.N << ',' << p.count << ','
            << format_double(p.f()) << ',' << format_double(p.x()) << '\n';
    }
}

std::vector<WeylDataPoint> read_sweep_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(file.string() + ": empty file");
    const auto header = split(line, ',');
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
    for (const char* name : {"epsilon", "gamma_cut", "N", "count"}) {
        if (!column.count(name)) throw std::runtime_error(file.string() + ": missing column '" + name + "'");
    }
    std::vector<WeylDataPoint> points;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": wrong number of fields");
        }
        WeylDataPoint p;
        p.epsilon = parse_double(cells[column["epsilon"]]);
        p.gamma_cut = parse_double(cells[column["gamma_cut"]]);
        p.N = std::stoi(cells[column["N"]]);
        p.count = static_cast<std::size_t>(std::stoull(cells[column["count"]]));
        points.push_back(p);
    }
    return points;
}

nlohmann::json fit_json(const WeylFit& fit, FitMode mode) {
    return {{"C", fit.C},
            {"nu", fit.nu},
            {"rss", fit.rss},
            {"r2", fit.r2},
            {"n_points", fit.n_points},
            {"mode", mode == FitMode::pooled ? "pooled" : "per-epsilon"}};
}

nlohmann::json fit_json(const std::map<double, WeylFit>& fits) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [eps, fit] : fits) {
        auto j = fit_json(fit, FitMode::per_epsilon);
        j["epsilon"] = eps;
        arr.push_back(std::move(j));
    }
    return {{"mode", "per-epsilon"}, {"fits", arr}};
}

void write_overlap_curve_csv(const std::filesystem::path& file, const OverlapCurve& curve) {
    auto out = open_out(file);
    out << "t,O,t_ehr1,t_ehr2\n";
    for (const auto& s : curve.samples) {
        out << s.t << ',' << format_double(s.overlap) << ',' << format_double(curve.t_ehr1) << ','
            << format_double(curve.t_ehr2) << '\n';
    }
}

void write_intervals(const std::filesystem::path& csv, const std::filesystem::path& sidecar, double epsilon,
                     const IntervalSet& set) {
    {
        auto out = open_out(csv);
        out << "lo,hi\n";
        for (const auto& iv : set.intervals) out << format_double(iv.lo) << ',' << format_double(iv.hi) << '\n';
    }
    write_json(sidecar, {{"epsilon", epsilon}, {"t", set.depth}, {"measure", set.measure()}});
}

void write_overlap_matrix_csv(const std::filesystem::path& file, const OverlapMatrix& P) {
    auto out = open_out(file);
    for (Eigen::Index i = 0; i < P.k(); ++i) {
        for (Eigen::Index j = 0; j < P.k(); ++j) {
            if (j) out << ',';
            out << format_double(std::abs(P.entries(i, j)));
        }
        out << '\n';
    }
}

void write_husimi_csv(const std::filesystem::path& file, const HusimiGrid& grid) {
    auto out = open_out(file);
    out << "q,p,value\n";
    for (int a = 0; a < grid.grid.n_q; ++a) {
        for (int b = 0; b < grid.grid.n_p; ++b) {
            out << format_double(grid.grid.q(a)) << ',' << format_double(grid.grid.p(b)) << ','
                << format_double(grid.at(a, b)) << '\n';
        }
    }
}

void write_husimi_raw(const std::filesystem::path& file, const std::filesystem::path& sidecar, const HusimiGrid& grid,
                      int N, const std::string& kind) {
    static_assert(std::endian::native == std::endian::little);
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(grid.values.data()),
              static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("failed writing " + file.string());
    write_json(sidecar, {{"n_q", grid.grid.n_q}, {"n_p", grid.grid.n_p}, {"N", N}, {"kind", kind}});
}

HusimiGrid read_husimi_raw(const std::filesystem::path& file, const std::filesystem::path& sidecar) {
    std::ifstream meta_in(sidecar);
    if (!meta_in) throw std::runtime_error("cannot open " + sidecar.string());
    const auto meta = nlohmann::json::parse(meta_in);
    HusimiGrid grid(GridSpec{meta.at("n_q").get<int>(), meta.at("n_p").get<int>()});
    std::ifstream in(file, std::ios::binary);
    in.read(reinterpret_cast<char*>(grid.values.data()),
            static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
    if (!in || in.peek() != std::char_traits<char>::eof()) {
        throw std::runtime_error(file.string() + ": size does not match its sidecar");
    }
    return grid;
}

}  // namespace cweyl::io

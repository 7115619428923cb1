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

#include "cweyl/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "cweyl/channels.hpp"
#include "cweyl/maps.hpp"

namespace cweyl {

MemoryCapExceeded::MemoryCapExceeded(std::size_t needed, std::size_t cap)
    : std::runtime_error("job needs an estimated " + std::to_string(needed) + " bytes, above the memory cap of " +
                         std::to_string(cap) + " bytes"),
      needed_(needed) {}

HermitianSuperoperator build_channel(const SpectrumParams& params) {
    const TorusContext ctx(params.N, params.chi_q, params.chi_p);
    const UnitaryMap B = quantum_baker(ctx);
    if (params.kind == ChannelKind::contractive) {
        return hermitian_superoperator(KrausSet(ctx, params.epsilon), B);
    }
    return hermitian_projective_superoperator(B, opening_projector(ctx, params.opening), params.order);
}

SpectrumService::SpectrumService(SpectrumStore& store, std::size_t memory_cap)
    : store_(store), memory_cap_(memory_cap) {}

void SpectrumService::check_memory(int N) const {
    const auto needed = estimate_bytes(N);
    if (needed > memory_cap_) throw MemoryCapExceeded(needed, memory_cap_);
}

std::vector<Complex> SpectrumService::eigenvalues(const SpectrumParams& params) {
    const auto file = store_.eigenvalue_file(params);
    if (auto cached = store_.load(file)) return std::move(cached->eigenvalues);
    check_memory(params.N);
    auto spectrum = full_spectrum(build_channel(params));
    ++computed_;
    store_.save(file, params, spectrum);
    return std::move(spectrum.eigenvalues);
}

ResonanceSpectrum SpectrumService::schur(const SpectrumParams& params, double gamma_cut) {
    const auto file = store_.schur_file(params, gamma_cut);
    if (auto cached = store_.load(file)) return std::move(*cached);
    check_memory(params.N);
    auto spectrum = ordered_schur(build_channel(params), DecayQuery(gamma_cut));
    ++computed_;
    store_.save(file, params, spectrum, gamma_cut);

    const auto plain = store_.eigenvalue_file(params);
    if (!std::filesystem::exists(plain)) {
        ResonanceSpectrum values_only;
        values_only.N = spectrum.N;
        values_only.eigenvalues = spectrum.eigenvalues;
        store_.save(plain, params, values_only);
    }
    return spectrum;
}

ResonanceSpectrum SpectrumService::leading_states(const SpectrumParams& params, std::size_t k) {
    const auto values = eigenvalues(params);
    return schur(params, gamma_cut_for_count(values, k));
}

double gamma_cut_for_count(const std::vector<Complex>& sorted_eigenvalues, std::size_t k) {
    if (k == 0 || k > sorted_eigenvalues.size()) {
        throw std::invalid_argument("gamma_cut_for_count: k out of range");
    }
    const double last_kept = std::abs(sorted_eigenvalues[k - 1]);
    double next = 0.0;
    for (std::size_t j = k; j < sorted_eigenvalues.size(); ++j) {
        const double m = std::abs(sorted_eigenvalues[j]);
        if (m < last_kept * (1.0 - 1e-12)) {
            next = m;
            break;
        }
    }
    const double threshold = 0.5 * (last_kept + next);
    if (threshold <= 0.0) throw std::invalid_argument("gamma_cut_for_count: leading states have zero modulus");
    return -2.0 * std::log(std::min(threshold, 1.0 - 1e-15));
}

std::vector<std::exception_ptr> run_jobs(const std::vector<std::function<void()>>& jobs, unsigned max_parallel) {
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(max_parallel, static_cast<unsigned>(jobs.size())));
    if (threads == 1) {
        worker();
        return errors;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    return errors;
}

}  // namespace cweyl

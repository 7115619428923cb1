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

#include <atomic>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cweyl/cache.hpp"
#include "cweyl/spectra.hpp"

namespace cweyl {

constexpr std::size_t kDefaultMemoryCap = std::size_t{8} << 30;

/// A job whose pre-flight estimate exceeds the configured cap.
class MemoryCapExceeded : public std::runtime_error {
public:
    MemoryCapExceeded(std::size_t needed, std::size_t cap);
    [[nodiscard]] std::size_t needed() const { return needed_; }

private:
    std::size_t needed_;
};

/// Channel in the real Hermitian basis, ready for the eigensolver.
HermitianSuperoperator build_channel(const SpectrumParams& params);

/// Cached access to spectra. Eigenvalue-only entries and Schur entries live in
/// separate files; computing a Schur entry also fills the eigenvalue entry.
class SpectrumService {
public:
    SpectrumService(SpectrumStore& store, std::size_t memory_cap = kDefaultMemoryCap);

    [[nodiscard]] std::size_t estimate_bytes(int N) const { return eigensolver_bytes(N, Backend::real_hermitian); }
    void check_memory(int N) const;

    std::vector<Complex> eigenvalues(const SpectrumParams& params);
    /// Ordered Schur decomposition holding every state with decay rate below
    /// gamma_cut, plus their right eigenvectors.
    ResonanceSpectrum schur(const SpectrumParams& params, double gamma_cut);
    /// As schur(), with the cut placed so that at least k states are kept.
    ResonanceSpectrum leading_states(const SpectrumParams& params, std::size_t k);

    [[nodiscard]] int computed() const { return computed_.load(); }
    [[nodiscard]] SpectrumStore& store() { return store_; }

private:
    SpectrumStore& store_;
    std::size_t memory_cap_;
    std::atomic<int> computed_{0};
};

/// Decay-rate cut that keeps at least the k leading eigenvalues of a sorted
/// spectrum, placed halfway (in modulus) to the next strictly smaller one.
double gamma_cut_for_count(const std::vector<Complex>& sorted_eigenvalues, std::size_t k);

/// Runs jobs on up to max_parallel threads; per-job exceptions are returned,
/// not thrown.
std::vector<std::exception_ptr> run_jobs(const std::vector<std::function<void()>>& jobs, unsigned max_parallel);

}  // namespace cweyl

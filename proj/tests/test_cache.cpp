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

#include <cstdlib>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>

#include "cweyl/cache.hpp"
#include "cweyl/pipeline.hpp"
#include "testing.hpp"

namespace cweyl {
namespace {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("cweyl-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

ResonanceSpectrum small_spectrum(int N, double eps, bool vectors) {
    const TorusContext ctx(N);
    return full_spectrum(hermitian_superoperator(KrausSet(ctx, eps), quantum_baker(ctx)), {.right_vectors = vectors});
}

TEST(CacheKey, Deterministic) {
    EXPECT_EQ(cache_key(SpectrumParams::contractive_map(16, 0.6)), cache_key(SpectrumParams::contractive_map(16, 0.6)));
}

TEST(CacheKey, ExactBits) {
    EXPECT_NE(cache_key(SpectrumParams::contractive_map(16, 0.6)),
              cache_key(SpectrumParams::contractive_map(16, 0.60000000001)));
    EXPECT_NE(cache_key(SpectrumParams::contractive_map(16, 0.6)), cache_key(SpectrumParams::contractive_map(18, 0.6)));
}

TEST(CacheKey, KindAndOpeningMatter) {
    const auto edges = OpeningSpec::symmetric_edges();
    EXPECT_NE(cache_key(SpectrumParams::contractive_map(16, 1.0)), cache_key(SpectrumParams::projective_map(16, edges)));
    EXPECT_NE(cache_key(SpectrumParams::projective_map(16, edges)),
              cache_key(SpectrumParams::projective_map(16, OpeningSpec::symmetric_edges(0.15))));
    EXPECT_NE(cache_key(SpectrumParams::projective_map(16, edges, OpeningOrder::project_then_propagate)),
              cache_key(SpectrumParams::projective_map(16, edges, OpeningOrder::propagate_then_project)));
}

TEST(CacheFile, RoundTripIsBitIdentical) {
    TempDir dir;
    const auto params = SpectrumParams::contractive_map(16, 0.6);
    const auto spec = small_spectrum(16, 0.6, false);
    const auto file = dir.path() / "a.cwspec";
    save_spectrum(file, params, spec);
    SpectrumCacheHeader header;
    const auto back = load_spectrum(file, &header);
    ASSERT_TRUE(back.has_value());
    ASSERT_EQ(back->eigenvalues.size(), spec.eigenvalues.size());
    EXPECT_EQ(std::memcmp(back->eigenvalues.data(), spec.eigenvalues.data(), spec.eigenvalues.size() * sizeof(Complex)),
              0);
    EXPECT_EQ(header.N, 16u);
    EXPECT_EQ(header.epsilon, 0.6);
    EXPECT_FALSE(back->right_vectors.has_value());
}

TEST(CacheFile, SchurBlockRoundTrip) {
    TempDir dir;
    const TorusContext ctx(8);
    const auto spec =
        ordered_schur(hermitian_superoperator(KrausSet(ctx, 0.5), quantum_baker(ctx)), DecayQuery(3.0));
    const auto file = dir.path() / "s.cwspec";
    save_spectrum(file, SpectrumParams::contractive_map(8, 0.5), spec, 3.0);
    SpectrumCacheHeader header;
    const auto back = load_spectrum(file, &header);
    ASSERT_TRUE(back && back->schur && back->right_vectors);
    EXPECT_EQ(header.schur_gamma_cut, 3.0);
    EXPECT_EQ(testing::max_abs(back->schur->basis - spec.schur->basis), 0.0);
    EXPECT_EQ(testing::max_abs(back->schur->triangular - spec.schur->triangular), 0.0);
    EXPECT_EQ(testing::max_abs(*back->right_vectors - *spec.right_vectors), 0.0);
}

TEST(CacheFile, DamagedFilesReadAsAbsent) {
    TempDir dir;
    const auto file = dir.path() / "a.cwspec";
    save_spectrum(file, SpectrumParams::contractive_map(8, 0.6), small_spectrum(8, 0.6, false));
    const auto size = fs::file_size(file);

    EXPECT_FALSE(load_spectrum(dir.path() / "missing.cwspec").has_value());

    fs::copy_file(file, dir.path() / "t.cwspec");
    fs::resize_file(dir.path() / "t.cwspec", size - 9);
    EXPECT_FALSE(load_spectrum(dir.path() / "t.cwspec").has_value());
    fs::resize_file(dir.path() / "t.cwspec", 10);
    EXPECT_FALSE(load_spectrum(dir.path() / "t.cwspec").has_value());

    fs::copy_file(file, dir.path() / "c.cwspec");
    {
        std::fstream f(dir.path() / "c.cwspec", std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(static_cast<std::streamoff>(size - 3));
        f.put('\x5a');
    }
    EXPECT_FALSE(load_spectrum(dir.path() / "c.cwspec").has_value());

    {
        std::ofstream f(dir.path() / "junk.cwspec", std::ios::binary);
        f << std::string(200, 'x');
    }
    EXPECT_FALSE(load_spectrum(dir.path() / "junk.cwspec").has_value());
}

TEST(CacheFile, ConcurrentWritersLeaveOneValidFile) {
    TempDir dir;
    const auto params = SpectrumParams::contractive_map(8, 0.6);
    const auto spec = small_spectrum(8, 0.6, true);
    const auto file = dir.path() / "shared.cwspec";
    {
        std::vector<std::jthread> writers;
        for (int i = 0; i < 8; ++i) writers.emplace_back([&] { save_spectrum(file, params, spec); });
    }
    int entries = 0;
    for (const auto& e : fs::directory_iterator(dir.path())) {
        (void)e;
        ++entries;
    }
    EXPECT_EQ(entries, 1);
    const auto back = load_spectrum(file);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(back->eigenvalues.size(), 64u);
}

TEST(SpectrumStore, CountsHitsAndMisses) {
    TempDir dir;
    SpectrumStore store(dir.path());
    const auto params = SpectrumParams::contractive_map(8, 0.6);
    const auto file = store.eigenvalue_file(params);
    EXPECT_FALSE(store.load(file).has_value());
    store.save(file, params, small_spectrum(8, 0.6, false));
    EXPECT_TRUE(store.load(file).has_value());
    EXPECT_EQ(store.hits(), 1);
    EXPECT_EQ(store.misses(), 1);
    EXPECT_NE(store.schur_file(params, 4.0), store.schur_file(params, 6.0));
    EXPECT_NE(store.schur_file(params, 4.0), file);
}

TEST(SpectrumStore, EnvironmentOverridesDirectory) {
    const char* old = std::getenv("CWEYL_CACHE_DIR");
    const std::string saved = old ? old : "";
    ::setenv("CWEYL_CACHE_DIR", "/tmp/somewhere-else", 1);
    EXPECT_EQ(resolve_cache_dir("fallback"), fs::path("/tmp/somewhere-else"));
    ::unsetenv("CWEYL_CACHE_DIR");
    EXPECT_EQ(resolve_cache_dir("fallback"), fs::path("fallback"));
    if (old) ::setenv("CWEYL_CACHE_DIR", saved.c_str(), 1);
}

TEST(SpectrumService, SecondRequestHitsCache) {
    TempDir dir;
    SpectrumStore store(dir.path());
    SpectrumService service(store);
    const auto params = SpectrumParams::contractive_map(10, 0.7);
    const auto a = service.eigenvalues(params);
    const auto b = service.eigenvalues(params);
    EXPECT_EQ(service.computed(), 1);
    EXPECT_EQ(a, b);
    const auto s1 = service.schur(params, 4.0);
    const auto s2 = service.schur(params, 4.0);
    EXPECT_EQ(service.computed(), 2);
    EXPECT_EQ(s1.eigenvalues, s2.eigenvalues);
}

TEST(SpectrumService, LeadingStatesKeepsAtLeastK) {
    TempDir dir;
    SpectrumStore store(dir.path());
    SpectrumService service(store);
    const auto params = SpectrumParams::contractive_map(10, 0.6);
    for (std::size_t k : {1u, 7u, 20u}) {
        const auto spec = service.leading_states(params, k);
        EXPECT_GE(static_cast<std::size_t>(spec.schur->basis.cols()), k);
        EXPECT_LE(static_cast<std::size_t>(spec.schur->basis.cols()), k + 1);
    }
}

TEST(SpectrumService, MemoryCapRefusesLargeJobs) {
    TempDir dir;
    SpectrumStore store(dir.path());
    SpectrumService service(store, std::size_t{1} << 20);
    EXPECT_THROW(service.eigenvalues(SpectrumParams::contractive_map(60, 0.6)), MemoryCapExceeded);
    EXPECT_NO_THROW(service.eigenvalues(SpectrumParams::contractive_map(4, 0.6)));
}

TEST(GammaCut, SplitsBetweenModuli) {
    const std::vector<Complex> values{1.0, 0.8, Complex(0, 0.8), 0.5, 0.1};
    const double cut = gamma_cut_for_count(values, 2);
    EXPECT_EQ(count_long_lived(values, DecayQuery(cut)), 3u);  // the tie comes along
    EXPECT_EQ(count_long_lived(values, DecayQuery(gamma_cut_for_count(values, 4))), 4u);
    EXPECT_THROW(gamma_cut_for_count(values, 0), std::invalid_argument);
    EXPECT_THROW(gamma_cut_for_count(values, 6), std::invalid_argument);
}

TEST(RunJobs, CollectsFailures) {
    std::atomic<int> done{0};
    std::vector<std::function<void()>> jobs;
    for (int i = 0; i < 6; ++i) {
        jobs.emplace_back([i, &done] {
            if (i == 3) throw std::runtime_error("job three");
            ++done;
        });
    }
    const auto errors = run_jobs(jobs, 3);
    EXPECT_EQ(done.load(), 5);
    for (int i = 0; i < 6; ++i) EXPECT_EQ(errors[i] != nullptr, i == 3);
}

}  // namespace
}  // namespace cweyl

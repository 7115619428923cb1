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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cweyl/maps.hpp"
#include "cweyl/spectra.hpp"

namespace cweyl {

enum class ChannelKind : std::uint8_t { contractive = 0, projective = 1 };

/// Everything that determines a channel's spectrum.
struct SpectrumParams {
    ChannelKind kind = ChannelKind::contractive;
    int N = 0;
    double epsilon = 1.0;  // contractive only
    OpeningSpec opening;   // projective only
    OpeningOrder order = OpeningOrder::project_then_propagate;
    double chi_q = 0.5;
    double chi_p = 0.5;

    static SpectrumParams contractive_map(int N, double epsilon);
    static SpectrumParams projective_map(int N, OpeningSpec opening,
                                         OpeningOrder order = OpeningOrder::project_then_propagate);
};

/// Bumped whenever index conventions or the payload layout change.
constexpr std::uint16_t kCacheVersion = 1;

/// Lower-case hex SHA-256 of the canonical byte encoding of the parameters
/// (exact IEEE-754 bits, little-endian), truncated to 16 characters.
std::string cache_key(const SpectrumParams& params);
/// 64-bit digest of the opening bands, recorded in cache headers.
std::uint64_t opening_hash(const OpeningSpec& opening);
/// Short hex digest of arbitrary text, used for artifact names.
std::string short_hash(const std::string& text);

/// Header of a spectrum cache file (fixed 80-byte little-endian layout).
struct SpectrumCacheHeader {
    std::uint16_t version = kCacheVersion;
    std::uint32_t N = 0;
    ChannelKind kind = ChannelKind::contractive;
    std::uint8_t flags = 0;  // bit 0: right vectors, bit 1: Schur block
    double epsilon = 0.0;
    std::uint64_t opening = 0;
    double chi_q = 0.5;
    double chi_p = 0.5;
    double schur_gamma_cut = 0.0;
    std::uint64_t eigenvalue_count = 0;
    std::uint64_t payload_bytes = 0;
    std::uint32_t crc32 = 0;
};

constexpr std::uint8_t kFlagVectors = 1;
constexpr std::uint8_t kFlagSchur = 2;

/// Writes through a temporary file and an atomic rename.
void save_spectrum(const std::filesystem::path& file, const SpectrumParams& params, const ResonanceSpectrum& spectrum,
                   double schur_gamma_cut = 0.0);

/// std::nullopt for a missing, truncated, corrupted or out-of-version file.
std::optional<ResonanceSpectrum> load_spectrum(const std::filesystem::path& file,
                                               SpectrumCacheHeader* header = nullptr);

/// Directory of cached spectra with hit/miss counters.
class SpectrumStore {
public:
    explicit SpectrumStore(std::filesystem::path dir);

    [[nodiscard]] const std::filesystem::path& directory() const { return dir_; }
    [[nodiscard]] std::filesystem::path eigenvalue_file(const SpectrumParams& params) const;
    [[nodiscard]] std::filesystem::path schur_file(const SpectrumParams& params, double gamma_cut) const;

    std::optional<ResonanceSpectrum> load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file, const SpectrumParams& params, const ResonanceSpectrum& spectrum,
              double schur_gamma_cut = 0.0);

    [[nodiscard]] int hits() const { return hits_.load(); }
    [[nodiscard]] int misses() const { return misses_.load(); }

private:
    std::filesystem::path dir_;
    std::atomic<int> hits_{0};
    std::atomic<int> misses_{0};
};

/// CWEYL_CACHE_DIR if set, otherwise the fallback.
std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback);

}  // namespace cweyl

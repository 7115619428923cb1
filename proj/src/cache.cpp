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

#include "cweyl/cache.hpp"

#include <array>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <openssl/evp.h>
#include <unistd.h>
#include <zlib.h>

namespace cweyl {

static_assert(std::endian::native == std::endian::little, "cache files are written in host order");

namespace {

constexpr std::array<char, 6> kMagic = {'C', 'W', 'E', 'Y', 'L', '1'};
constexpr std::size_t kHeaderBytes = 80;

class ByteWriter {
public:
    template <class T>
    void put(const T& value) {
        static_assert(std::is_trivially_copyable_v<T>);
        const auto* p = reinterpret_cast<const char*>(&value);
        bytes_.insert(bytes_.end(), p, p + sizeof(T));
    }
    void put_bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const char*>(data);
        bytes_.insert(bytes_.end(), p, p + n);
    }
    [[nodiscard]] const std::vector<char>& bytes() const { return bytes_; }

private:
    std::vector<char> bytes_;
};

class ByteReader {
public:
    ByteReader(const char* data, std::size_t size) : data_(data), size_(size) {}

    template <class T>
    bool get(T& value) {
        if (pos_ + sizeof(T) > size_) return false;
        std::memcpy(&value, data_ + pos_, sizeof(T));
        pos_ += sizeof(T);
        return true;
    }
    bool get_bytes(void* out, std::size_t n) {
        if (pos_ + n > size_) return false;
        std::memcpy(out, data_ + pos_, n);
        pos_ += n;
        return true;
    }
    [[nodiscard]] std::size_t remaining() const { return size_ - pos_; }

private:
    const char* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

std::array<unsigned char, 32> sha256(const std::string& text) {
    std::array<unsigned char, 32> digest{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    return digest;
}

std::string hex(const unsigned char* data, std::size_t n) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xf]);
    }
    return out;
}

void put_bits(std::ostringstream& os, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) os.put(static_cast<char>((bits >> (8 * b)) & 0xff));
}

std::uint32_t crc_of(const std::vector<char>& bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    std::size_t done = 0;
    while (done < bytes.size()) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
        crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + done), chunk);
        done += chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

void put_matrix(ByteWriter& w, const Eigen::MatrixXcd& m) {
    w.put(static_cast<std::uint64_t>(m.rows()));
    w.put(static_cast<std::uint64_t>(m.cols()));
    w.put_bytes(m.data(), static_cast<std::size_t>(m.size()) * sizeof(Complex));
}

bool get_matrix(ByteReader& r, Eigen::MatrixXcd& m) {
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    if (!r.get(rows) || !r.get(cols)) return false;
    if (cols != 0 && rows > r.remaining() / sizeof(Complex) / cols) return false;
    m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    return r.get_bytes(m.data(), static_cast<std::size_t>(rows * cols) * sizeof(Complex));
}

}  // namespace

SpectrumParams SpectrumParams::contractive_map(int N, double epsilon) {
    SpectrumParams p;
    p.kind = ChannelKind::contractive;
    p.N = N;
    p.epsilon = epsilon;
    return p;
}

SpectrumParams SpectrumParams::projective_map(int N, OpeningSpec opening, OpeningOrder order) {
    SpectrumParams p;
    p.kind = ChannelKind::projective;
    p.N = N;
    p.epsilon = 0.0;
    p.opening = std::move(opening);
    p.order = order;
    return p;
}

std::uint64_t opening_hash(const OpeningSpec& opening) {
    std::ostringstream os;
    os << "bands";
    for (const auto& b : opening.bands) {
        put_bits(os, b.lo);
        put_bits(os, b.hi);
    }
    const auto digest = sha256(os.str());
    std::uint64_t h = 0;
    for (int i = 0; i < 8; ++i) h |= static_cast<std::uint64_t>(digest[static_cast<std::size_t>(i)]) << (8 * i);
    return h;
}

std::string cache_key(const SpectrumParams& params) {
    std::ostringstream os;
    os << "cweyl|v" << kCacheVersion << '|' << static_cast<int>(params.kind) << '|' << params.N << '|';
    if (params.kind == ChannelKind::contractive) {
        put_bits(os, params.epsilon);
    } else {
        os << opening_hash(params.opening) << '|' << static_cast<int>(params.order);
    }
    os << '|';
    put_bits(os, params.chi_q);
    put_bits(os, params.chi_p);
    const auto digest = sha256(os.str());
    return hex(digest.data(), 8);
}

std::string short_hash(const std::string& text) {
    const auto digest = sha256(text);
    return hex(digest.data(), 6);
}

void save_spectrum(const std::filesystem::path& file, const SpectrumParams& params, const ResonanceSpectrum& spectrum,
                   double schur_gamma_cut) {
    ByteWriter payload;
    payload.put_bytes(spectrum.eigenvalues.data(), spectrum.eigenvalues.size() * sizeof(Complex));
    std::uint8_t flags = 0;
    if (spectrum.right_vectors) {
        flags |= kFlagVectors;
        put_matrix(payload, *spectrum.right_vectors);
    }
    if (spectrum.schur) {
        flags |= kFlagSchur;
        put_matrix(payload, spectrum.schur->basis);
        put_matrix(payload, spectrum.schur->triangular);
    }

    ByteWriter header;
    header.put_bytes(kMagic.data(), kMagic.size());
    header.put(kCacheVersion);
    header.put(static_cast<std::uint32_t>(params.N));
    header.put(static_cast<std::uint8_t>(params.kind));
    header.put(flags);
    header.put(std::uint16_t{0});
    header.put(params.kind == ChannelKind::contractive ? params.epsilon : 0.0);
    header.put(params.kind == ChannelKind::projective ? opening_hash(params.opening) : std::uint64_t{0});
    header.put(params.chi_q);
    header.put(params.chi_p);
    header.put(schur_gamma_cut);
    header.put(static_cast<std::uint64_t>(spectrum.eigenvalues.size()));
    header.put(static_cast<std::uint64_t>(payload.bytes().size()));
    header.put(crc_of(payload.bytes()));
    header.put(std::uint32_t{0});
    if (header.bytes().size() != kHeaderBytes) throw std::logic_error("cache header layout drifted");

    std::filesystem::create_directories(file.parent_path());
    thread_local std::mt19937_64 salt{std::random_device{}()};
    const auto tmp = file.parent_path() /
                     (file.filename().string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(salt()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(header.bytes().data(), static_cast<std::streamsize>(header.bytes().size()));
        out.write(payload.bytes().data(), static_cast<std::streamsize>(payload.bytes().size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("failed writing cache file " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, file);
}

std::optional<ResonanceSpectrum> load_spectrum(const std::filesystem::path& file, SpectrumCacheHeader* header_out) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < kHeaderBytes) return std::nullopt;

    ByteReader r(bytes.data(), kHeaderBytes);
    std::array<char, 6> magic{};
    SpectrumCacheHeader h;
    std::uint8_t kind = 0;
    std::uint16_t reserved = 0;
    r.get_bytes(magic.data(), magic.size());
    r.get(h.version);
    r.get(h.N);
    r.get(kind);
    r.get(h.flags);
    r.get(reserved);
    r.get(h.epsilon);
    r.get(h.opening);
    r.get(h.chi_q);
    r.get(h.chi_p);
    r.get(h.schur_gamma_cut);
    r.get(h.eigenvalue_count);
    r.get(h.payload_bytes);
    r.get(h.crc32);
    h.kind = static_cast<ChannelKind>(kind);

    if (magic != kMagic || h.version != kCacheVersion) return std::nullopt;
    const auto n = static_cast<std::uint64_t>(h.N) * h.N;
    if (h.eigenvalue_count != n) return std::nullopt;
    if (bytes.size() - kHeaderBytes != h.payload_bytes) return std::nullopt;

    std::vector<char> payload(bytes.begin() + static_cast<std::ptrdiff_t>(kHeaderBytes), bytes.end());
    bytes.clear();
    bytes.shrink_to_fit();
    if (crc_of(payload) != h.crc32) return std::nullopt;

    ResonanceSpectrum spectrum;
    spectrum.N = static_cast<int>(h.N);
    spectrum.eigenvalues.resize(n);
    ByteReader p(payload.data(), payload.size());
    if (!p.get_bytes(spectrum.eigenvalues.data(), n * sizeof(Complex))) return std::nullopt;
    if (h.flags & kFlagVectors) {
        Eigen::MatrixXcd v;
        if (!get_matrix(p, v)) return std::nullopt;
        spectrum.right_vectors = std::move(v);
    }
    if (h.flags & kFlagSchur) {
        SchurBlock block;
        if (!get_matrix(p, block.basis) || !get_matrix(p, block.triangular)) return std::nullopt;
        spectrum.schur = std::move(block);
    }
    if (p.remaining() != 0) return std::nullopt;
    if (header_out) *header_out = h;
    return spectrum;
}

SpectrumStore::SpectrumStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path SpectrumStore::eigenvalue_file(const SpectrumParams& params) const {
    return dir_ / (cache_key(params) + ".cwspec");
}

std::filesystem::path SpectrumStore::schur_file(const SpectrumParams& params, double gamma_cut) const {
    std::ostringstream os;
    put_bits(os, gamma_cut);
    return dir_ / (cache_key(params) + "-schur-" + short_hash(os.str()) + ".cwspec");
}

std::optional<ResonanceSpectrum> SpectrumStore::load(const std::filesystem::path& file) {
    auto spectrum = load_spectrum(file);
    if (spectrum) {
        ++hits_;
    } else {
        ++misses_;
    }
    return spectrum;
}

void SpectrumStore::save(const std::filesystem::path& file, const SpectrumParams& params,
                         const ResonanceSpectrum& spectrum, double schur_gamma_cut) {
    save_spectrum(file, params, spectrum, schur_gamma_cut);
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback) {
    if (const char* env = std::getenv("CWEYL_CACHE_DIR"); env && *env) return env;
    return fallback;
}

}  // namespace cweyl

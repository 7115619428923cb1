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

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cweyl/channels.hpp"

namespace cweyl {

/// Raised when LAPACK does not converge or cannot reorder a Schur form.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, int index) : std::runtime_error(what), index_(index) {}
    [[nodiscard]] int index() const { return index_; }

private:
    int index_;
};

/// Leading block of an ordered Schur decomposition S Z = Z T.
struct SchurBlock {
    Eigen::MatrixXcd basis;       // n x k, orthonormal columns in vec(rho) coordinates
    Eigen::MatrixXcd triangular;  // k x k upper triangular
};

/// Eigenvalues sorted by decreasing modulus (ties by ascending phase angle),
/// with optional vectors in vec(rho) coordinates. Vector columns are paired
/// with the leading eigenvalues and normalized to unit Euclidean norm; they may
/// cover only a leading subset of the spectrum.
struct ResonanceSpectrum {
    int N = 0;
    std::vector<Complex> eigenvalues;
    std::optional<Eigen::MatrixXcd> right_vectors;
    std::optional<Eigen::MatrixXcd> left_vectors;
    std::optional<SchurBlock> schur;
};

/// Resonances with decay rate below gamma_cut.
struct DecayQuery {
    double gamma_cut;

    explicit DecayQuery(double cut) : gamma_cut(cut) {
        if (!(cut > 0.0)) throw std::invalid_argument("gamma_cut must be > 0");
    }
    /// Smallest modulus with decay rate below the cut (exclusive).
    [[nodiscard]] double modulus_threshold() const { return std::exp(-gamma_cut / 2.0); }
};

/// Tolerance for |lambda| above one before a spectrum is considered broken.
constexpr double kModulusOvershoot = 1e-8;

/// gamma = -2 ln|lambda|; 0 for tiny overshoots of the unit circle, +inf for 0.
double decay_rate(Complex lambda);

bool is_long_lived(Complex lambda, const DecayQuery& query);
std::size_t count_long_lived(std::span<const Complex> eigenvalues, const DecayQuery& query);
std::size_t count_long_lived(const ResonanceSpectrum& spectrum, const DecayQuery& query);

/// Orders by decreasing modulus, ties by ascending arg; returns the permutation.
std::vector<std::size_t> spectral_order(std::span<const Complex> eigenvalues);

struct EigenOptions {
    bool right_vectors = false;
    bool left_vectors = false;
};

/// Complete spectrum of the complex channel matrix (LAPACK zgeev). S is consumed.
ResonanceSpectrum full_spectrum(SuperoperatorMatrix S, EigenOptions options = {});
/// Complete spectrum through the real Hermitian-basis form (LAPACK dgeev).
/// Only right vectors are available on this path. S is consumed.
ResonanceSpectrum full_spectrum(HermitianSuperoperator S, EigenOptions options = {});

struct SchurOptions {
    /// Also return right eigenvectors of the leading block, computed from the
    /// triangular factor without touching the rest of the spectrum.
    bool leading_eigenvectors = true;
};

/// Schur decomposition with every long-lived eigenvalue moved into the leading
/// block (LAPACK zgees). The spectrum holds all eigenvalues; schur and
/// right_vectors cover the k = count_long_lived leading states.
ResonanceSpectrum ordered_schur(SuperoperatorMatrix S, const DecayQuery& query, SchurOptions options = {});
/// Same through real Schur (dgees) followed by a complex Schur form of the
/// small leading quasi-triangular block.
ResonanceSpectrum ordered_schur(HermitianSuperoperator S, const DecayQuery& query, SchurOptions options = {});

enum class Backend { complex_dense, real_hermitian };

/// Pre-flight memory estimate in bytes: the matrix itself plus three matrix-sized
/// buffers of backend workspace (vectors, Schur basis, copies).
std::size_t eigensolver_bytes(int N, Backend backend);

/// Largest ||S v - lambda v|| / ||v|| over the given eigenpairs, with S applied
/// by a caller-supplied action so the matrix need not exist.
template <class Action>
double eigen_residual(const Action& apply, const ResonanceSpectrum& spectrum, Eigen::Index count) {
    if (!spectrum.right_vectors) throw std::invalid_argument("eigen_residual: no right vectors");
    const auto& V = *spectrum.right_vectors;
    double worst = 0.0;
    for (Eigen::Index c = 0; c < std::min(count, V.cols()); ++c) {
        const Eigen::VectorXcd v = V.col(c);
        const Eigen::VectorXcd r = apply(v) - spectrum.eigenvalues[static_cast<std::size_t>(c)] * v;
        worst = std::max(worst, r.norm() / v.norm());
    }
    return worst;
}

}  // namespace cweyl

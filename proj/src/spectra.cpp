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

#include "cweyl/spectra.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace cweyl {

namespace {

// LAPACK's selection callbacks carry no user data.
thread_local double t_select_threshold = 0.0;

lapack_logical select_complex(const lapack_complex_double* w) {
    return std::abs(*w) > t_select_threshold ? 1 : 0;
}

lapack_logical select_real(const double* re, const double* im) {
    return std::abs(Complex(*re, *im)) > t_select_threshold ? 1 : 0;
}

void check_geev(lapack_int info, const char* routine) {
    if (info < 0) {
        throw std::invalid_argument(std::string(routine) + ": illegal argument " + std::to_string(-info));
    }
    if (info > 0) {
        throw SolverError(std::string(routine) + ": QR iteration failed to converge; eigenvalues " +
                              std::to_string(info) + " onward are incomplete",
                          static_cast<int>(info));
    }
}

void check_gees(lapack_int info, lapack_int n, const char* routine) {
    if (info < 0) {
        throw std::invalid_argument(std::string(routine) + ": illegal argument " + std::to_string(-info));
    }
    if (info > 0 && info <= n) {
        throw SolverError(std::string(routine) + ": QR iteration failed to converge at index " +
                              std::to_string(info),
                          static_cast<int>(info));
    }
    if (info == n + 1) {
        throw SolverError(std::string(routine) + ": eigenvalues could not be reordered (ill-conditioned cluster)",
                          static_cast<int>(info));
    }
    if (info == n + 2) {
        throw SolverError(std::string(routine) +
                              ": reordering perturbed eigenvalues across the selection threshold",
                          static_cast<int>(info));
    }
}

std::vector<Complex> permuted(const std::vector<Complex>& values, const std::vector<std::size_t>& order) {
    std::vector<Complex> out(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[i] = values[order[i]];
    return out;
}

Eigen::MatrixXcd permuted_columns(const Eigen::MatrixXcd& m, const std::vector<std::size_t>& order) {
    Eigen::MatrixXcd out(m.rows(), static_cast<Eigen::Index>(order.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = m.col(static_cast<Eigen::Index>(order[i]));
    return out;
}

void normalize_columns(Eigen::MatrixXcd& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double n = m.col(c).norm();
        if (n > 0.0) m.col(c) /= n;
    }
}

// Right eigenvectors of an upper-triangular block, back-transformed by the
// Schur basis and sorted like the block's eigenvalues.
Eigen::MatrixXcd leading_eigenvectors(const Eigen::MatrixXcd& basis, Eigen::MatrixXcd triangular,
                                      const std::vector<std::size_t>& order) {
    const auto k = static_cast<lapack_int>(triangular.rows());
    if (k == 0) return Eigen::MatrixXcd(basis.rows(), 0);
    Eigen::MatrixXcd Y(k, k);
    lapack_int used = 0;
    const lapack_int info = LAPACKE_ztrevc(LAPACK_COL_MAJOR, 'R', 'A', nullptr, k, triangular.data(), k, nullptr, 1,
                                           Y.data(), k, k, &used);
    check_geev(info, "ztrevc");
    Eigen::MatrixXcd vectors = basis * Y;
    normalize_columns(vectors);
    return permuted_columns(vectors, order);
}

std::vector<Complex> diagonal_of(const Eigen::MatrixXcd& T) {
    std::vector<Complex> d(static_cast<std::size_t>(T.rows()));
    for (Eigen::Index i = 0; i < T.rows(); ++i) d[static_cast<std::size_t>(i)] = T(i, i);
    return d;
}

}  // namespace

double decay_rate(Complex lambda) {
    const double modulus = std::abs(lambda);
    if (modulus == 0.0) return std::numeric_limits<double>::infinity();
    if (modulus > 1.0 + kModulusOvershoot) {
        throw std::domain_error("decay_rate: |lambda| = " + std::to_string(modulus) +
                                " exceeds the unit circle; the channel is not contractive");
    }
    if (modulus >= 1.0) return 0.0;
    return -2.0 * std::log(modulus);
}

bool is_long_lived(Complex lambda, const DecayQuery& query) {
    return std::abs(lambda) > query.modulus_threshold();
}

std::size_t count_long_lived(std::span<const Complex> eigenvalues, const DecayQuery& query) {
    return static_cast<std::size_t>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](Complex l) { return is_long_lived(l, query); }));
}

std::size_t count_long_lived(const ResonanceSpectrum& spectrum, const DecayQuery& query) {
    return count_long_lived(std::span<const Complex>(spectrum.eigenvalues), query);
}

std::vector<std::size_t> spectral_order(std::span<const Complex> eigenvalues) {
    std::vector<std::size_t> order(eigenvalues.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> modulus(eigenvalues.size());
    std::vector<double> angle(eigenvalues.size());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        modulus[i] = std::abs(eigenvalues[i]);
        angle[i] = std::arg(eigenvalues[i]);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (modulus[a] != modulus[b]) return modulus[a] > modulus[b];
        return angle[a] < angle[b];
    });
    return order;
}

ResonanceSpectrum full_spectrum(SuperoperatorMatrix S, EigenOptions options) {
    const auto n = static_cast<lapack_int>(S.dim());
    std::vector<Complex> w(static_cast<std::size_t>(n));
    Eigen::MatrixXcd VL;
    Eigen::MatrixXcd VR;
    if (options.left_vectors) VL.resize(n, n);
    if (options.right_vectors) VR.resize(n, n);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, options.left_vectors ? 'V' : 'N', options.right_vectors ? 'V' : 'N', n,
                      S.entries.data(), n, w.data(), options.left_vectors ? VL.data() : nullptr, options.left_vectors ? n : 1,
                      options.right_vectors ? VR.data() : nullptr, options.right_vectors ? n : 1);
    check_geev(info, "zgeev");
    S.entries.resize(0, 0);

    const auto order = spectral_order(w);
    ResonanceSpectrum out;
    out.N = S.N;
    out.eigenvalues = permuted(w, order);
    if (options.right_vectors) {
        normalize_columns(VR);
        out.right_vectors = permuted_columns(VR, order);
    }
    if (options.left_vectors) {
        normalize_columns(VL);
        out.left_vectors = permuted_columns(VL, order);
    }
    return out;
}

ResonanceSpectrum full_spectrum(HermitianSuperoperator S, EigenOptions options) {
    if (options.left_vectors) {
        throw std::invalid_argument("full_spectrum: left vectors need the complex backend");
    }
    const auto n = static_cast<lapack_int>(S.dim());
    std::vector<double> wr(static_cast<std::size_t>(n));
    std::vector<double> wi(static_cast<std::size_t>(n));
    Eigen::MatrixXd VR;
    if (options.right_vectors) VR.resize(n, n);
    const lapack_int info =
        LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', options.right_vectors ? 'V' : 'N', n, S.entries.data(), n, wr.data(),
                      wi.data(), nullptr, 1, options.right_vectors ? VR.data() : nullptr, options.right_vectors ? n : 1);
    check_geev(info, "dgeev");
    S.entries.resize(0, 0);

    std::vector<Complex> w(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = {wr[i], wi[i]};
    const auto order = spectral_order(w);

    ResonanceSpectrum out;
    out.N = S.N;
    out.eigenvalues = permuted(w, order);
    if (options.right_vectors) {
        // dgeev packs a conjugate pair as (re, im) in consecutive columns
        Eigen::MatrixXcd coords(n, n);
        for (lapack_int j = 0; j < n; ++j) {
            if (wi[static_cast<std::size_t>(j)] == 0.0) {
                coords.col(j) = VR.col(j).cast<Complex>();
            } else {
                const Eigen::VectorXcd v = VR.col(j).cast<Complex>() + Complex(0.0, 1.0) * VR.col(j + 1).cast<Complex>();
                coords.col(j) = v;
                coords.col(j + 1) = v.conjugate();
                ++j;
            }
        }
        VR.resize(0, 0);
        Eigen::MatrixXcd vecs = hermitian_to_vec(coords, S.N);
        coords.resize(0, 0);
        normalize_columns(vecs);
        out.right_vectors = permuted_columns(vecs, order);
    }
    return out;
}

ResonanceSpectrum ordered_schur(SuperoperatorMatrix S, const DecayQuery& query, SchurOptions options) {
    const auto n = static_cast<lapack_int>(S.dim());
    std::vector<Complex> w(static_cast<std::size_t>(n));
    Eigen::MatrixXcd Z(n, n);
    lapack_int sdim = 0;
    t_select_threshold = query.modulus_threshold();
    const lapack_int info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'S', select_complex, n, S.entries.data(), n, &sdim,
                                          w.data(), Z.data(), n);
    check_gees(info, n, "zgees");

    SchurBlock block;
    block.basis = Z.leftCols(sdim);
    block.triangular = S.entries.topLeftCorner(sdim, sdim).triangularView<Eigen::Upper>();
    Z.resize(0, 0);
    S.entries.resize(0, 0);

    ResonanceSpectrum out;
    out.N = S.N;
    out.eigenvalues = permuted(w, spectral_order(w));
    if (options.leading_eigenvectors) {
        const auto lead = diagonal_of(block.triangular);
        out.right_vectors = leading_eigenvectors(block.basis, block.triangular, spectral_order(lead));
    }
    out.schur = std::move(block);
    return out;
}

ResonanceSpectrum ordered_schur(HermitianSuperoperator S, const DecayQuery& query, SchurOptions options) {
    const auto n = static_cast<lapack_int>(S.dim());
    std::vector<double> wr(static_cast<std::size_t>(n));
    std::vector<double> wi(static_cast<std::size_t>(n));
    Eigen::MatrixXd Z(n, n);
    lapack_int sdim = 0;
    t_select_threshold = query.modulus_threshold();
    const lapack_int info = LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'S', select_real, n, S.entries.data(), n, &sdim,
                                          wr.data(), wi.data(), Z.data(), n);
    check_gees(info, n, "dgees");

    // Quasi-triangular leading block -> complex Schur form T11 = Q T Q^H.
    Eigen::MatrixXcd T = S.entries.topLeftCorner(sdim, sdim).cast<Complex>();
    for (Eigen::Index j = 0; j < sdim; ++j)
        for (Eigen::Index i = j + 2; i < sdim; ++i) T(i, j) = 0.0;
    const Eigen::MatrixXd Z1 = Z.leftCols(sdim);
    Z.resize(0, 0);
    S.entries.resize(0, 0);

    Eigen::MatrixXcd Q(sdim, sdim);
    std::vector<Complex> lead(static_cast<std::size_t>(sdim));
    if (sdim > 0) {
        lapack_int unused = 0;
        const lapack_int small_info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, sdim, T.data(), sdim,
                                                    &unused, lead.data(), Q.data(), sdim);
        check_gees(small_info, sdim, "zgees");
    }

    SchurBlock block;
    block.triangular = T.triangularView<Eigen::Upper>();
    block.basis = hermitian_to_vec(Z1.cast<Complex>() * Q, S.N);

    // dgees returns the selected eigenvalues first. The leading ones are replaced
    // by the complex block's diagonal so values and vectors pair exactly.
    std::vector<Complex> w(lead);
    for (auto i = static_cast<std::size_t>(sdim); i < static_cast<std::size_t>(n); ++i) w.emplace_back(wr[i], wi[i]);

    ResonanceSpectrum out;
    out.N = S.N;
    out.eigenvalues = permuted(w, spectral_order(w));
    if (options.leading_eigenvectors) {
        out.right_vectors = leading_eigenvectors(block.basis, block.triangular, spectral_order(lead));
    }
    out.schur = std::move(block);
    return out;
}

std::size_t eigensolver_bytes(int N, Backend backend) {
    const std::size_t matrix =
        backend == Backend::complex_dense ? complex_superoperator_bytes(N) : real_superoperator_bytes(N);
    return 4 * matrix;
}

}  // namespace cweyl

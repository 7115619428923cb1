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

#include "cweyl/channels.hpp"

#include <cmath>
#include <new>
#include <stdexcept>
#include <string>

namespace cweyl {

namespace {

const double kSqrtHalf = std::sqrt(0.5);
const double kSqrtTwo = std::sqrt(2.0);

void check_square(const Eigen::MatrixXcd& m, int N, const char* what) {
    if (m.rows() != N || m.cols() != N) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(N) + "x" +
                                    std::to_string(N) + " matrix, got " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()));
    }
}

// Per input column k, the stacked vectors K_mu(:, k) for mu < active[k].
std::vector<Eigen::MatrixXcd> column_stacks(const KrausList& kraus) {
    std::vector<Eigen::MatrixXcd> stacks(static_cast<std::size_t>(kraus.N));
    for (int k = 0; k < kraus.N; ++k) {
        auto& U = stacks[static_cast<std::size_t>(k)];
        U.resize(kraus.N, kraus.active[static_cast<std::size_t>(k)]);
        for (int mu = 0; mu < U.cols(); ++mu) U.col(mu) = kraus.operators[static_cast<std::size_t>(mu)].col(k);
    }
    return stacks;
}

Eigen::MatrixXcd unit_image(const std::vector<Eigen::MatrixXcd>& stacks, int k, int l) {
    const auto& Uk = stacks[static_cast<std::size_t>(k)];
    const auto& Ul = stacks[static_cast<std::size_t>(l)];
    const auto m = std::min(Uk.cols(), Ul.cols());
    return Uk.leftCols(m) * Ul.leftCols(m).adjoint();
}

template <class Matrix>
Matrix allocate_square(Eigen::Index n, std::size_t bytes) {
    try {
        return Matrix(n, n);
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("superoperator allocation failed: " + std::to_string(bytes) + " bytes required");
    }
}

}  // namespace

KrausSet::KrausSet(const TorusContext& ctx, double epsilon)
    : N_(ctx.N), epsilon_(epsilon), amplitudes_(static_cast<std::size_t>(ctx.N) * ctx.N, 0.0) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("kraus_set: epsilon must lie in (0, 1], got " + std::to_string(epsilon));
    }
    const double log_eps = std::log(epsilon);
    const double log_rest = epsilon < 1.0 ? std::log1p(-epsilon) : 0.0;
    for (int mu = 0; mu < N_; ++mu) {
        if (epsilon == 1.0 && mu > 0) break;  // A^0 = I, the rest vanish
        for (int i = mu; i < N_; ++i) {
            const int kept = i - mu;
            const double log_weight = std::lgamma(i + 1.0) - std::lgamma(kept + 1.0) - std::lgamma(mu + 1.0) +
                                      kept * log_eps + mu * log_rest;
            amplitudes_[static_cast<std::size_t>(mu) * N_ + i] = std::exp(0.5 * log_weight);
        }
    }
}

Eigen::MatrixXcd KrausSet::dense(int mu) const {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N_, N_);
    for (int i = mu; i < N_; ++i) A(i - mu, i) = amplitude(mu, i);
    return A;
}

Eigen::MatrixXcd KrausSet::apply(const Eigen::MatrixXcd& rho) const {
    check_square(rho, N_, "KrausSet::apply");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N_, N_);
    for (int b = 0; b < N_; ++b) {
        for (int a = 0; a < N_; ++a) {
            Complex acc = 0.0;
            const int steps = N_ - std::max(a, b);
            for (int mu = 0; mu < steps; ++mu) {
                acc += amplitude(mu, a + mu) * amplitude(mu, b + mu) * rho(a + mu, b + mu);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

KrausSet kraus_set(const TorusContext& ctx, double epsilon) { return KrausSet(ctx, epsilon); }

Eigen::MatrixXcd apply_channel(const KrausSet& kraus, const UnitaryMap& B, const Eigen::MatrixXcd& rho) {
    if (B.N != kraus.dimension()) {
        throw std::invalid_argument("apply_channel: Kraus set and unitary differ in dimension");
    }
    check_square(rho, kraus.dimension(), "apply_channel");
    const Eigen::MatrixXcd contracted = kraus.apply(rho);
    return B.matrix * contracted * B.matrix.adjoint();
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
    const auto N = rho.rows();
    Eigen::VectorXcd v(N * rho.cols());
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
    return v;
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int N) {
    if (v.size() != static_cast<Eigen::Index>(N) * N) {
        throw std::invalid_argument("unvectorize: length is not N^2");
    }
    Eigen::MatrixXcd rho(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) rho(i, j) = v(static_cast<Eigen::Index>(i) * N + j);
    return rho;
}

KrausList KrausList::contractive(const KrausSet& kraus, const UnitaryMap& B) {
    if (B.N != kraus.dimension()) {
        throw std::invalid_argument("KrausList: Kraus set and unitary differ in dimension");
    }
    const int N = kraus.dimension();
    KrausList list;
    list.N = N;
    const int count = kraus.epsilon() == 1.0 ? 1 : N;
    list.operators.reserve(static_cast<std::size_t>(count));
    for (int mu = 0; mu < count; ++mu) {
        // (B A^mu)(:, i) = amplitude(mu, i) B(:, i - mu)
        Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(N, N);
        for (int i = mu; i < N; ++i) K.col(i) = kraus.amplitude(mu, i) * B.matrix.col(i - mu);
        list.operators.push_back(std::move(K));
    }
    list.active.resize(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) list.active[static_cast<std::size_t>(k)] = std::min(k + 1, count);
    return list;
}

KrausList KrausList::single(const Eigen::MatrixXcd& K) {
    if (K.rows() != K.cols()) throw std::invalid_argument("KrausList: operator must be square");
    KrausList list;
    list.N = static_cast<int>(K.rows());
    list.operators = {K};
    list.active.assign(static_cast<std::size_t>(list.N), 1);
    return list;
}

Eigen::MatrixXcd KrausList::image_of_unit(int k, int l) const {
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(N, N);
    const int m = std::min(active[static_cast<std::size_t>(k)], active[static_cast<std::size_t>(l)]);
    for (int mu = 0; mu < m; ++mu) {
        const auto& K = operators[static_cast<std::size_t>(mu)];
        X.noalias() += K.col(k) * K.col(l).adjoint();
    }
    return X;
}

std::size_t complex_superoperator_bytes(int N) {
    const auto n = static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
    return n * n * sizeof(Complex);
}

std::size_t real_superoperator_bytes(int N) {
    const auto n = static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
    return n * n * sizeof(double);
}

SuperoperatorMatrix superoperator_matrix(const KrausList& kraus) {
    const int N = kraus.N;
    const Eigen::Index n = static_cast<Eigen::Index>(N) * N;
    SuperoperatorMatrix S;
    S.N = N;
    S.entries = allocate_square<Eigen::MatrixXcd>(n, complex_superoperator_bytes(N));
    const auto stacks = column_stacks(kraus);
    for (int k = 0; k < N; ++k) {
        for (int l = 0; l < N; ++l) {
            const Eigen::MatrixXcd X = unit_image(stacks, k, l);
            auto column = S.entries.col(static_cast<Eigen::Index>(k) * N + l);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) column(static_cast<Eigen::Index>(i) * N + j) = X(i, j);
        }
    }
    return S;
}

SuperoperatorMatrix superoperator_matrix(const KrausSet& kraus, const UnitaryMap& B) {
    return superoperator_matrix(KrausList::contractive(kraus, B));
}

SuperoperatorMatrix projective_superoperator(const UnitaryMap& B, const Eigen::MatrixXcd& P, OpeningOrder order) {
    return superoperator_matrix(KrausList::single(open_map(B, P, order)));
}

HermitianSuperoperator hermitian_superoperator(const KrausList& kraus) {
    const int N = kraus.N;
    const Eigen::Index n = static_cast<Eigen::Index>(N) * N;
    HermitianSuperoperator R;
    R.N = N;
    R.entries = allocate_square<Eigen::MatrixXd>(n, real_superoperator_bytes(N));
    const auto stacks = column_stacks(kraus);

    // Hermitian-basis coordinates of a Hermitian Y written into column `col`.
    auto write_coords = [&](const Eigen::MatrixXcd& Y, Eigen::Index col) {
        auto c = R.entries.col(col);
        for (int i = 0; i < N; ++i) {
            c(static_cast<Eigen::Index>(i) * N + i) = Y(i, i).real();
            for (int j = i + 1; j < N; ++j) {
                c(static_cast<Eigen::Index>(i) * N + j) = kSqrtTwo * Y(i, j).real();
                c(static_cast<Eigen::Index>(j) * N + i) = kSqrtTwo * Y(i, j).imag();
            }
        }
    };

    for (int k = 0; k < N; ++k) {
        write_coords(unit_image(stacks, k, k), static_cast<Eigen::Index>(k) * N + k);
        for (int l = k + 1; l < N; ++l) {
            // the channel maps E_lk to the adjoint of the image of E_kl
            const Eigen::MatrixXcd X = unit_image(stacks, k, l);
            const Eigen::MatrixXcd Xh = X.adjoint();
            write_coords(kSqrtHalf * (X + Xh), static_cast<Eigen::Index>(k) * N + l);
            write_coords(Complex(0.0, kSqrtHalf) * (X - Xh), static_cast<Eigen::Index>(l) * N + k);
        }
    }
    return R;
}

HermitianSuperoperator hermitian_superoperator(const KrausSet& kraus, const UnitaryMap& B) {
    return hermitian_superoperator(KrausList::contractive(kraus, B));
}

HermitianSuperoperator hermitian_projective_superoperator(const UnitaryMap& B, const Eigen::MatrixXcd& P,
                                                          OpeningOrder order) {
    return hermitian_superoperator(KrausList::single(open_map(B, P, order)));
}

Eigen::MatrixXcd hermitian_to_vec(const Eigen::MatrixXcd& coords, int N) {
    if (coords.rows() != static_cast<Eigen::Index>(N) * N) {
        throw std::invalid_argument("hermitian_to_vec: row count is not N^2");
    }
    Eigen::MatrixXcd out(coords.rows(), coords.cols());
    const Complex i_unit(0.0, 1.0);
    for (int i = 0; i < N; ++i) {
        const Eigen::Index d = static_cast<Eigen::Index>(i) * N + i;
        out.row(d) = coords.row(d);
        for (int j = i + 1; j < N; ++j) {
            const Eigen::Index upper = static_cast<Eigen::Index>(i) * N + j;
            const Eigen::Index lower = static_cast<Eigen::Index>(j) * N + i;
            out.row(upper) = kSqrtHalf * (coords.row(upper) + i_unit * coords.row(lower));
            out.row(lower) = kSqrtHalf * (coords.row(upper) - i_unit * coords.row(lower));
        }
    }
    return out;
}

Eigen::MatrixXcd vec_to_hermitian(const Eigen::MatrixXcd& vecs, int N) {
    if (vecs.rows() != static_cast<Eigen::Index>(N) * N) {
        throw std::invalid_argument("vec_to_hermitian: row count is not N^2");
    }
    Eigen::MatrixXcd out(vecs.rows(), vecs.cols());
    const Complex i_unit(0.0, 1.0);
    for (int i = 0; i < N; ++i) {
        const Eigen::Index d = static_cast<Eigen::Index>(i) * N + i;
        out.row(d) = vecs.row(d);
        for (int j = i + 1; j < N; ++j) {
            const Eigen::Index upper = static_cast<Eigen::Index>(i) * N + j;
            const Eigen::Index lower = static_cast<Eigen::Index>(j) * N + i;
            out.row(upper) = kSqrtHalf * (vecs.row(upper) + vecs.row(lower));
            out.row(lower) = kSqrtHalf * i_unit * (vecs.row(lower) - vecs.row(upper));
        }
    }
    return out;
}

}  // namespace cweyl

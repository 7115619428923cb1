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

#include <string>

namespace cweyl {

/// Name of the OpenBLAS kernel set selected at load time.
std::string blas_core_name();

/// OpenBLAS 0.3.20 autodetects some AVX-512 parts as Cooperlake, whose dgemm
/// path stalls the real nonsymmetric QR sweep (n = 1000 dgeev takes minutes
/// instead of a second). When that core is detected and OPENBLAS_CORETYPE is
/// unset, re-executes the current binary with OPENBLAS_CORETYPE=SkylakeX.
/// Returns normally when no re-exec is needed.
void pin_blas_kernels(char** argv);

}  // namespace cweyl

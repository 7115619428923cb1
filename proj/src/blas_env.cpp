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

#include "cweyl/blas_env.hpp"

#include <cstdio>
#include <cstdlib>

#include <unistd.h>

extern "C" char* openblas_get_corename();

namespace cweyl {

std::string blas_core_name() {
    const char* name = openblas_get_corename();
    return name ? name : "";
}

void pin_blas_kernels(char** argv) {
    if (std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
    if (blas_core_name() != "Cooperlake") return;
    ::setenv("OPENBLAS_CORETYPE", "SkylakeX", 1);
    ::execv("/proc/self/exe", argv);
    std::perror("cweyl: re-exec with OPENBLAS_CORETYPE=SkylakeX failed");
}

}  // namespace cweyl

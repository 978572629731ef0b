// Copyright 2026 The zsexplore Authors.
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

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define ZSX_KERNELS_X86 1
#else
#define ZSX_KERNELS_X86 0
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define ZSX_KERNELS_NEON 1
#else
#define ZSX_KERNELS_NEON 0
#endif

namespace zsx::kernels {

#if ZSX_KERNELS_X86
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void combine_rows(const double* w, const double* m, std::size_t rows,
                  std::size_t cols, double* out);
void mat_vec(const double* m, const double* x, std::size_t rows,
             std::size_t cols, double* out);
}  // namespace avx2
#endif

#if ZSX_KERNELS_NEON
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void combine_rows(const double* w, const double* m, std::size_t rows,
                  std::size_t cols, double* out);
void mat_vec(const double* m, const double* x, std::size_t rows,
             std::size_t cols, double* out);
}  // namespace neon
#endif

}  // namespace zsx::kernels

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

// Dense double-precision inner loops used by the solvers and exploration
// strategies. Every kernel has a scalar reference implementation; SIMD
// variants (AVX2+FMA on x86-64, NEON on AArch64) are selected at runtime and
// must agree with the reference to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace zsx::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view backend_name(Backend backend);

// True when the backend was compiled in and the running CPU supports it.
bool backend_supported(Backend backend);

// The backend in use. Chosen on first use: the best supported backend, unless
// the ZSX_KERNELS environment variable names another one ("scalar", "avx2",
// "neon").
Backend active_backend();

// Throws std::invalid_argument if the backend is not supported.
void set_backend(Backend backend);

// Raw-pointer entry points shared by every backend. Matrices are row-major.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  // out[j] = sum_i w[i] * m[i * cols + j]
  void (*combine_rows)(const double* w, const double* m, std::size_t rows,
                       std::size_t cols, double* out);
  // out[i] = sum_j m[i * cols + j] * x[j]
  void (*mat_vec)(const double* m, const double* x, std::size_t rows,
                  std::size_t cols, double* out);
};

const KernelTable& table(Backend backend);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void combine_rows(const double* w, const double* m, std::size_t rows,
                  std::size_t cols, double* out);
void mat_vec(const double* m, const double* x, std::size_t rows,
             std::size_t cols, double* out);
}  // namespace scalar

// Span front-ends over the active backend. Sizes are checked in debug
// builds only; callers own the shape contract.
double dot(std::span<const double> a, std::span<const double> b);

// Weighted sum of the rows of a rows x cols matrix: out = w^T M.
void combine_rows(std::span<const double> w, std::span<const double> m,
                  std::size_t cols, std::span<double> out);

// out = M x for a rows x cols matrix.
void mat_vec(std::span<const double> m, std::span<const double> x,
             std::span<double> out);

}  // namespace zsx::kernels

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

// AArch64 only. Advanced SIMD is mandatory there, so no runtime probe.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace zsx::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void combine_rows(const double* w, const double* m, std::size_t rows,
                  std::size_t cols, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= cols; j += 4) {
    float64x2_t c0 = vdupq_n_f64(0.0);
    float64x2_t c1 = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const float64x2_t wi = vdupq_n_f64(w[i]);
      const double* row = m + i * cols + j;
      c0 = vfmaq_f64(c0, wi, vld1q_f64(row));
      c1 = vfmaq_f64(c1, wi, vld1q_f64(row + 2));
    }
    vst1q_f64(out + j, c0);
    vst1q_f64(out + j + 2, c1);
  }
  for (; j < cols; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < rows; ++i) c += w[i] * m[i * cols + j];
    out[j] = c;
  }
}

void mat_vec(const double* m, const double* x, std::size_t rows,
             std::size_t cols, double* out) {
  for (std::size_t i = 0; i < rows; ++i) out[i] = dot(m + i * cols, x, cols);
}

}  // namespace zsx::kernels::neon

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

// Compiled with -mavx2 -mfma. Only reachable through the dispatch table after
// a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace zsx::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void combine_rows(const double* w, const double* m, std::size_t rows,
                  std::size_t cols, double* out) {
  std::size_t j = 0;
  // Four column blocks of 4 at a time keep 4 accumulators live across rows.
  for (; j + 16 <= cols; j += 16) {
    __m256d c0 = _mm256_setzero_pd();
    __m256d c1 = _mm256_setzero_pd();
    __m256d c2 = _mm256_setzero_pd();
    __m256d c3 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < rows; ++i) {
      const __m256d wi = _mm256_set1_pd(w[i]);
      const double* row = m + i * cols + j;
      c0 = _mm256_fmadd_pd(wi, _mm256_loadu_pd(row), c0);
      c1 = _mm256_fmadd_pd(wi, _mm256_loadu_pd(row + 4), c1);
      c2 = _mm256_fmadd_pd(wi, _mm256_loadu_pd(row + 8), c2);
      c3 = _mm256_fmadd_pd(wi, _mm256_loadu_pd(row + 12), c3);
    }
    _mm256_storeu_pd(out + j, c0);
    _mm256_storeu_pd(out + j + 4, c1);
    _mm256_storeu_pd(out + j + 8, c2);
    _mm256_storeu_pd(out + j + 12, c3);
  }
  for (; j + 4 <= cols; j += 4) {
    __m256d c = _mm256_setzero_pd();
    for (std::size_t i = 0; i < rows; ++i) {
      c = _mm256_fmadd_pd(_mm256_set1_pd(w[i]),
                          _mm256_loadu_pd(m + i * cols + j), c);
    }
    _mm256_storeu_pd(out + j, c);
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

}  // namespace zsx::kernels::avx2

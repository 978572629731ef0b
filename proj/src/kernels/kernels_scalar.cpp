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

#include "zsx/kernels.hpp"

namespace zsx::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void combine_rows(const double* w, const double* m, std::size_t rows,
                  std::size_t cols, double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double wi = w[i];
    const double* row = m + i * cols;
    for (std::size_t j = 0; j < cols; ++j) out[j] += wi * row[j];
  }
}

void mat_vec(const double* m, const double* x, std::size_t rows,
             std::size_t cols, double* out) {
  for (std::size_t i = 0; i < rows; ++i) out[i] = dot(m + i * cols, x, cols);
}

}  // namespace zsx::kernels::scalar

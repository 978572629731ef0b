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

#include "zsx/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace zsx {
namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kPriceTolerance = 1e-11;
constexpr std::size_t kDegenerateRunBeforeBland = 32;

}  // namespace

LpSolution solve_lp(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c) {
  const std::size_t m = b.size();
  const std::size_t n = c.size();
  if (a.size() != m * n) throw std::invalid_argument("solve_lp: A has wrong size");
  for (double bi : b) {
    if (!(bi >= 0.0)) throw std::invalid_argument("solve_lp: b must be nonnegative");
  }

  // Columns: n structural, m slack, 1 rhs. Row m is the objective row holding
  // reduced costs (negated prices) and the objective value in the rhs slot.
  const std::size_t width = n + m + 1;
  std::vector<double> t((m + 1) * width, 0.0);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    double* row = &t[i * width];
    for (std::size_t j = 0; j < n; ++j) row[j] = a[i * n + j];
    row[n + i] = 1.0;
    row[width - 1] = b[i];
    basis[i] = n + i;
  }
  double* obj = &t[m * width];
  for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];

  const std::size_t max_pivots = 200 * (m + n) + 1000;
  std::size_t pivots = 0;
  std::size_t degenerate_run = 0;
  bool bland = false;

  while (true) {
    std::size_t enter = width;
    double best = -kPriceTolerance;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (obj[j] < best) {
        enter = j;
        if (bland) break;
        best = obj[j];
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = t[i * width + enter];
      if (coef <= kPivotTolerance) continue;
      const double ratio = t[i * width + width - 1] / coef;
      if (ratio < best_ratio - 1e-13 ||
          (ratio <= best_ratio + 1e-13 && leave < m && basis[i] < basis[leave])) {
        if (ratio < best_ratio) best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == m) throw std::runtime_error("solve_lp: problem is unbounded");
    if (++pivots > max_pivots) {
      throw std::runtime_error("solve_lp: pivot limit reached (" +
                               std::to_string(max_pivots) + ")");
    }
    degenerate_run = best_ratio <= 1e-13 ? degenerate_run + 1 : 0;
    if (degenerate_run > kDegenerateRunBeforeBland) bland = true;

    double* prow = &t[leave * width];
    const double inv = 1.0 / prow[enter];
    for (std::size_t j = 0; j < width; ++j) prow[j] *= inv;
    prow[enter] = 1.0;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double* row = &t[i * width];
      const double factor = row[enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) row[j] -= factor * prow[j];
      row[enter] = 0.0;
    }
    basis[leave] = enter;
  }

  LpSolution out;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.x[basis[i]] = t[i * width + width - 1];
  }
  out.duals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) out.duals[i] = obj[n + i];
  out.objective = obj[width - 1];
  out.pivots = pivots;
  return out;
}

}  // namespace zsx

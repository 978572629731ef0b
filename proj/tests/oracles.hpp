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

// Reference computations used only by tests. None of them call into the
// library's solvers: they are brute force, closed form, or textbook
// iterations written independently.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

namespace zsx::oracle {

using Grid = std::vector<std::vector<double>>;

inline Grid random_grid(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                        double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> unit(lo, hi);
  Grid g(rows, std::vector<double>(cols));
  for (auto& r : g) {
    for (double& x : r) x = unit(rng);
  }
  return g;
}

// max over p on a grid of step `step` of min_j (p u(0,j) + (1-p) u(1,j)),
// for a 2-row game. Returns {value, p}.
inline std::pair<double, double> grid_maxmin_two_rows(const Grid& u, double step = 1e-3) {
  double best = -std::numeric_limits<double>::infinity();
  double best_p = 0.0;
  const auto n = static_cast<long>(std::llround(1.0 / step));
  for (long i = 0; i <= n; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(n);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u[0].size(); ++j) {
      worst = std::min(worst, p * u[0][j] + (1.0 - p) * u[1][j]);
    }
    if (worst > best) {
      best = worst;
      best_p = p;
    }
  }
  return {best, best_p};
}

// min over q on a grid of max_i (q u(i,0) + (1-q) u(i,1)), for a 2-column
// game. Returns {value, q}.
inline std::pair<double, double> grid_minmax_two_cols(const Grid& u, double step = 1e-3) {
  double best = std::numeric_limits<double>::infinity();
  double best_q = 0.0;
  const auto n = static_cast<long>(std::llround(1.0 / step));
  for (long i = 0; i <= n; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(n);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& row : u) worst = std::max(worst, q * row[0] + (1.0 - q) * row[1]);
    if (worst < best) {
      best = worst;
      best_q = q;
    }
  }
  return {best, best_q};
}

struct TwoByTwo {
  double value = 0.0;
  double p = 0.0;  // probability Player 1 plays row 0
  double q = 0.0;  // probability Player 2 plays column 0
};

// Closed-form solution of [[a, b], [c, d]]: a pure saddle point when the pure
// maxmin and minmax coincide, otherwise the indifference solution.
inline TwoByTwo solve_two_by_two(double a, double b, double c, double d) {
  const double row0 = std::min(a, b);
  const double row1 = std::min(c, d);
  const double col0 = std::max(a, c);
  const double col1 = std::max(b, d);
  const double lower = std::max(row0, row1);
  const double upper = std::min(col0, col1);
  if (lower == upper) {
    TwoByTwo out;
    out.value = lower;
    out.p = row0 >= row1 ? 1.0 : 0.0;
    out.q = col0 <= col1 ? 1.0 : 0.0;
    return out;
  }
  const double den = a - b - c + d;
  return {(a * d - b * c) / den, (d - c) / den, (d - b) / den};
}

// Value iteration for a maximizing MDP. rewards[s][a], trans[s][a][s'].
inline std::vector<double> value_iteration(
    const std::vector<std::vector<double>>& rewards,
    const std::vector<std::vector<std::vector<double>>>& trans, double gamma,
    double tol) {
  const std::size_t n = rewards.size();
  std::vector<double> v(n, 0.0);
  std::vector<double> next(n);
  for (int it = 0; it < 1000000; ++it) {
    double change = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < rewards[s].size(); ++a) {
        double q = rewards[s][a];
        for (std::size_t t = 0; t < n; ++t) q += gamma * trans[s][a][t] * v[t];
        best = std::max(best, q);
      }
      next[s] = best;
      change = std::max(change, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    if (change * gamma / (1.0 - gamma) < tol) break;
  }
  return v;
}

// Sort-based linear-interpolation quantile.
inline double sorted_quantile(std::vector<double> x, double q) {
  std::sort(x.begin(), x.end());
  const double h = static_cast<double>(x.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

// Textbook UCB1 arm choice; unplayed arms first (lowest index).
inline std::size_t ucb1_arm(const std::vector<double>& means,
                            const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < means.size(); ++a) {
    const double score = counts[a] == 0.0
                             ? std::numeric_limits<double>::infinity()
                             : means[a] + std::sqrt(2.0 * std::log(total) / counts[a]);
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

}  // namespace zsx::oracle

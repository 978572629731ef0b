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

#include "zsx/nfg_solve.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "zsx/kernels.hpp"
#include "zsx/simplex.hpp"

namespace zsx {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kColumnGenerationTolerance = 1e-10;
constexpr std::size_t kMaxColumnGenerationRounds = 100000;

// Shift that makes every entry >= 1, so the game value is positive and the
// simplex constraint can be relaxed to sum(s1) <= 1 without changing the
// optimum.
double positive_shift(double min_entry) { return 1.0 - min_entry; }

void check_samples(std::span<const PayoffMatrix> samples) {
  if (samples.empty()) throw std::invalid_argument("need at least one payoff sample");
  for (const auto& u : samples) {
    if (u.rows() != samples[0].rows() || u.cols() != samples[0].cols()) {
      throw std::invalid_argument("payoff samples have different dimensions");
    }
  }
}

std::size_t lowest_index_near_min(std::span<const double> values, double* min_out) {
  const double lo = *std::min_element(values.begin(), values.end());
  const double slack = kTieTolerance * (1.0 + std::abs(lo));
  std::size_t idx = 0;
  while (values[idx] > lo + slack) ++idx;
  *min_out = lo;
  return idx;
}

MeanWorstCase maxmeanmin_direct(std::span<const PayoffMatrix> samples) {
  const std::size_t k_count = samples.size();
  const std::size_t m = samples[0].rows();
  const std::size_t n = samples[0].cols();
  double lo = samples[0].min_entry();
  for (const auto& u : samples) lo = std::min(lo, u.min_entry());
  const double shift = positive_shift(lo);

  // Variables [s1 (m), v (K)]; rows: v_k - s1 . u_k(., j) <= 0, sum s1 <= 1.
  const std::size_t vars = m + k_count;
  const std::size_t rows = k_count * n + 1;
  std::vector<double> a(rows * vars, 0.0);
  std::vector<double> b(rows, 0.0);
  std::vector<double> c(vars, 0.0);
  for (std::size_t k = 0; k < k_count; ++k) {
    c[m + k] = 1.0 / static_cast<double>(k_count);
    for (std::size_t j = 0; j < n; ++j) {
      double* row = &a[(k * n + j) * vars];
      for (std::size_t i = 0; i < m; ++i) row[i] = -(samples[k](i, j) + shift);
      row[m + k] = 1.0;
    }
  }
  for (std::size_t i = 0; i < m; ++i) a[(rows - 1) * vars + i] = 1.0;
  b[rows - 1] = 1.0;

  const LpSolution lp = solve_lp(a, b, c);
  MixedStrategy s1 = MixedStrategy::normalized(
      std::vector<double>(lp.x.begin(), lp.x.begin() + static_cast<long>(m)));
  SampleStack stack(samples);
  std::vector<double> worst(k_count);
  stack.worst_cases(s1.probs(), worst);
  double mean = 0.0;
  for (double w : worst) mean += w;
  return {std::move(s1), mean / static_cast<double>(k_count)};
}

MeanWorstCase maxmeanmin_column_generation(std::span<const PayoffMatrix> samples) {
  const std::size_t k_count = samples.size();
  const std::size_t m = samples[0].rows();
  const SampleStack stack(samples);
  const double inv_k = 1.0 / static_cast<double>(k_count);

  std::vector<double> worst(k_count);
  std::vector<std::size_t> reply(k_count);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<double>> columns;

  auto add_column = [&](const std::vector<std::size_t>& joint) {
    std::vector<double> col(m, 0.0);
    for (std::size_t k = 0; k < k_count; ++k) {
      for (std::size_t i = 0; i < m; ++i) col[i] += samples[k](i, joint[k]);
    }
    for (double& x : col) x *= inv_k;
    columns.push_back(std::move(col));
    seen.insert(joint);
  };

  MixedStrategy s1 = MixedStrategy::uniform(m);
  stack.worst_cases(s1.probs(), worst, reply);
  add_column(reply);

  for (std::size_t round = 0; round < kMaxColumnGenerationRounds; ++round) {
    std::vector<double> master(m * columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (std::size_t i = 0; i < m; ++i) master[i * columns.size() + c] = columns[c][i];
    }
    const NfgSolution restricted =
        solve_nfg(PayoffMatrix(m, columns.size(), std::move(master)));
    s1 = restricted.maxmin;
    stack.worst_cases(s1.probs(), worst, reply);
    double mean = 0.0;
    for (double w : worst) mean += w;
    mean *= inv_k;
    // The restricted value bounds the true optimum from above and `mean` is
    // achieved by s1, so a closed gap certifies optimality.
    if (mean >= restricted.value - kColumnGenerationTolerance || seen.contains(reply)) {
      return {std::move(s1), mean};
    }
    add_column(reply);
  }
  throw std::runtime_error("solve_maxmeanmin: column generation did not converge");
}

}  // namespace

SampleStack::SampleStack(std::span<const PayoffMatrix> samples) {
  check_samples(samples);
  rows_ = samples[0].rows();
  cols_ = samples[0].cols();
  samples_ = samples.size();
  const std::size_t width = samples_ * cols_;
  data_.resize(rows_ * width);
  for (std::size_t k = 0; k < samples_; ++k) {
    for (std::size_t i = 0; i < rows_; ++i) {
      auto row = samples[k].row(i);
      std::copy(row.begin(), row.end(), data_.begin() + static_cast<long>(i * width + k * cols_));
    }
  }
}

void SampleStack::worst_cases(std::span<const double> s, std::span<double> out,
                              std::span<std::size_t> argmins) const {
  std::vector<double> payoffs(samples_ * cols_);
  kernels::combine_rows(s, data_, samples_ * cols_, payoffs);
  for (std::size_t k = 0; k < samples_; ++k) {
    const double* p = &payoffs[k * cols_];
    std::size_t best = 0;
    for (std::size_t j = 1; j < cols_; ++j) {
      if (p[j] < p[best]) best = j;
    }
    out[k] = p[best];
    if (!argmins.empty()) argmins[k] = best;
  }
}

BestResponse best_response_value(const PayoffMatrix& u, const MixedStrategy& s1) {
  if (s1.size() != u.rows()) {
    throw std::invalid_argument("best_response_value: strategy has " +
                                std::to_string(s1.size()) + " entries, matrix has " +
                                std::to_string(u.rows()) + " rows");
  }
  std::vector<double> values(u.cols());
  kernels::combine_rows(s1.probs(), u.data(), u.cols(), values);
  BestResponse br;
  br.action = lowest_index_near_min(values, &br.value);
  return br;
}

BestResponse best_response_row(const PayoffMatrix& u, const MixedStrategy& s2) {
  if (s2.size() != u.cols()) {
    throw std::invalid_argument("best_response_row: strategy size mismatch");
  }
  std::vector<double> values(u.rows());
  kernels::mat_vec(u.data(), s2.probs(), values);
  for (double& v : values) v = -v;
  BestResponse br;
  br.action = lowest_index_near_min(values, &br.value);
  br.value = -br.value;
  return br;
}

NfgSolution solve_nfg(const PayoffMatrix& u) {
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  const double lo = u.min_entry();
  if (u.max_entry() - lo <= 0.0) {
    return {lo, MixedStrategy::uniform(m), MixedStrategy::uniform(n)};
  }
  const double shift = positive_shift(lo);

  // Variables [s1 (m), v]; rows: v - s1 . u(., j) <= 0 for each j, sum s1 <= 1.
  const std::size_t vars = m + 1;
  std::vector<double> a((n + 1) * vars, 0.0);
  std::vector<double> b(n + 1, 0.0);
  std::vector<double> c(vars, 0.0);
  c[m] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[j * vars + i] = -(u(i, j) + shift);
    a[j * vars + m] = 1.0;
  }
  for (std::size_t i = 0; i < m; ++i) a[n * vars + i] = 1.0;
  b[n] = 1.0;

  const LpSolution lp = solve_lp(a, b, c);
  NfgSolution out;
  out.value = lp.x[m] - shift;
  out.maxmin = MixedStrategy::normalized(
      std::vector<double>(lp.x.begin(), lp.x.begin() + static_cast<long>(m)));
  out.minmax = MixedStrategy::normalized(
      std::vector<double>(lp.duals.begin(), lp.duals.begin() + static_cast<long>(n)));
  return out;
}

MixedStrategy solve_minmax_transposed(const PayoffMatrix& u) {
  return solve_nfg(u.transposed_negated()).maxmin;
}

MeanWorstCase solve_maxmeanmin(std::span<const PayoffMatrix> samples,
                               MeanWorstCaseMethod method) {
  check_samples(samples);
  if (method == MeanWorstCaseMethod::kDirectLp) return maxmeanmin_direct(samples);
  return maxmeanmin_column_generation(samples);
}

MeanWorstCase solve_minmeanmax(std::span<const PayoffMatrix> samples,
                               MeanWorstCaseMethod method) {
  check_samples(samples);
  std::vector<PayoffMatrix> flipped;
  flipped.reserve(samples.size());
  for (const auto& u : samples) flipped.push_back(u.transposed_negated());
  MeanWorstCase r = solve_maxmeanmin(flipped, method);
  r.value = -r.value;
  return r;
}

double simple_regret(const PayoffMatrix& u_true, const MixedStrategy& recommended) {
  return solve_nfg(u_true).value - best_response_value(u_true, recommended).value;
}

nlohmann::json to_json(const NfgSolution& solution) {
  return {{"value", solution.value},
          {"maxmin", to_json(solution.maxmin)},
          {"minmax", to_json(solution.minmax)}};
}

}  // namespace zsx

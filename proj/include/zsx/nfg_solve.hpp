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

// Linear-programming solvers for zero-sum normal-form games: maxmin/minmax
// strategies of a known game and maxmeanmin/minmeanmax strategies against a
// Monte-Carlo sample of games drawn from a belief.

#include <cstddef>
#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "zsx/game.hpp"

namespace zsx {

struct NfgSolution {
  double value = 0.0;
  MixedStrategy maxmin;  // Player 1
  MixedStrategy minmax;  // Player 2
};

struct BestResponse {
  double value = 0.0;
  std::size_t action = 0;
};

// Player 2's best pure reply to s1: min_{a2} u(s1, a2). Ties go to the
// lowest column index (entries within 1e-12 of the minimum count as tied).
BestResponse best_response_value(const PayoffMatrix& u, const MixedStrategy& s1);

// Player 1's best pure reply to s2: max_{a1} u(a1, s2), lowest index on ties.
BestResponse best_response_row(const PayoffMatrix& u, const MixedStrategy& s2);

// Solves  max v  s.t.  v <= u(s1, a2) for all a2,  s1 in the simplex.
// Player 1's maxmin is read from the primal solution and Player 2's minmax
// from the dual prices of the v <= u(s1, a2) rows. Games whose entries are
// all equal get uniform strategies.
NfgSolution solve_nfg(const PayoffMatrix& u);

// Player 2's minmax computed by solving the transposed, negated game as a
// primal LP. Agrees with solve_nfg(u).minmax on the value it guarantees.
MixedStrategy solve_minmax_transposed(const PayoffMatrix& u);

struct MeanWorstCase {
  MixedStrategy strategy;
  double value = 0.0;  // (1/K) sum_k worst case under sample k
};

enum class MeanWorstCaseMethod {
  // Double-oracle column generation over joint replies (j_1, ..., j_K); each
  // master problem is a small matrix game solved by solve_nfg.
  kColumnGeneration,
  // The full LP with one epigraph variable per sample, solved in one shot.
  kDirectLp,
};

// argmax_{s1} (1/K) sum_k min_{a2} u_k(s1, a2), with its objective value.
// Throws std::invalid_argument on an empty or ragged sample list.
MeanWorstCase solve_maxmeanmin(
    std::span<const PayoffMatrix> samples,
    MeanWorstCaseMethod method = MeanWorstCaseMethod::kColumnGeneration);

// argmin_{s2} (1/K) sum_k max_{a1} u_k(a1, s2), with its objective value.
MeanWorstCase solve_minmeanmax(
    std::span<const PayoffMatrix> samples,
    MeanWorstCaseMethod method = MeanWorstCaseMethod::kColumnGeneration);

// value(u_true) - min_{a2} u_true(recommended, a2).
double simple_regret(const PayoffMatrix& u_true, const MixedStrategy& recommended);

// K equal-shape matrices packed side by side as one rows x (K * cols) matrix so
// a strategy's payoff against every column of every sample is one kernel
// call.
class SampleStack {
 public:
  SampleStack() = default;
  explicit SampleStack(std::span<const PayoffMatrix> samples);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return samples_; }
  std::span<const double> data() const { return data_; }

  // out[k] = min_{j} (s^T u_k)_j for the row player's weights s. When
  // `argmins` is non-empty it receives the minimizing column per sample.
  void worst_cases(std::span<const double> s, std::span<double> out,
                   std::span<std::size_t> argmins = {}) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t samples_ = 0;
  std::vector<double> data_;
};

nlohmann::json to_json(const NfgSolution& solution);

}  // namespace zsx

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

// Exploration strategies: each maps what is known about one matrix game
// (visit counts, posterior means, an ensemble of belief samples) to the
// action profile to try next. In stochastic games the same strategies act on
// the per-state slices of solved Q-functions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zsx/game.hpp"
#include "zsx/rng.hpp"

namespace zsx {

inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr std::size_t kDefaultStrategySamples = 100;

enum class StrategyType {
  kRandom,
  kMinCount,
  kGreedy,
  kEpsGreedy,
  kThompson,
  kUcb1,
  kBayesUcb,
};

struct StrategyKind {
  StrategyType type = StrategyType::kRandom;
  double epsilon = kDefaultEpsilon;  // used by kEpsGreedy only

  // Accepts random, min-count, greedy, eps-greedy, eps-greedy:<eps>,
  // thompson, ucb1, bayes-ucb. Throws std::invalid_argument otherwise or when
  // eps is outside [0, 1].
  static StrategyKind parse(std::string_view text);
  // Inverse of parse; eps-greedy always carries its epsilon.
  std::string to_string() const;

  // Whether pick() reads ExplorationContext::ensemble.
  bool needs_ensemble() const;

  bool operator==(const StrategyKind&) const = default;
};

// A read-only view of the information a strategy may use for one matrix game.
struct ExplorationContext {
  std::size_t n_a1 = 0;
  std::size_t n_a2 = 0;
  std::span<const std::uint64_t> counts;  // row-major n(a1, a2)
  std::uint64_t total = 0;                // n
  const PayoffMatrix* mean = nullptr;     // posterior mean payoffs (UCB1)
  std::span<const PayoffMatrix> ensemble; // belief samples u_1..u_K
  std::size_t n_strategy_samples = kDefaultStrategySamples;
  // Multiplies the UCB1 exploration bonus; payoffs in [0, 1/(1-gamma)] use
  // 1/(1-gamma).
  double bonus_scale = 1.0;
};

struct StrategyPair {
  MixedStrategy s1;
  MixedStrategy s2;
};

// Draws a1 ~ s1 and then a2 ~ s2, independently.
ActionProfile sample_profile(const StrategyPair& pair, Rng& rng);

ActionProfile pick_random(const ExplorationContext& ctx, Rng& rng);
ActionProfile pick_min_count(const ExplorationContext& ctx, Rng& rng);
ActionProfile pick_greedy(const ExplorationContext& ctx, Rng& rng);
ActionProfile pick_eps_greedy(const ExplorationContext& ctx, double epsilon, Rng& rng);
ActionProfile pick_thompson(const ExplorationContext& ctx, Rng& rng);
ActionProfile pick_ucb1(const ExplorationContext& ctx, Rng& rng);
ActionProfile pick_bayes_ucb(const ExplorationContext& ctx, Rng& rng);

ActionProfile pick(const StrategyKind& kind, const ExplorationContext& ctx, Rng& rng);

// The (s1, s2) pair behind the strategies that commit to mixed strategies.
// Greedy: maxmeanmin / minmeanmax of the ensemble.
StrategyPair greedy_pair(std::span<const PayoffMatrix> ensemble);
// Thompson: the equilibrium of one ensemble member chosen uniformly.
StrategyPair thompson_pair(std::span<const PayoffMatrix> ensemble, Rng& rng);
// UCB1: optimistic candidates scored on ctx.mean with count bonuses.
StrategyPair ucb1_pair(const ExplorationContext& ctx, Rng& rng);
// Bayes-UCB: candidates scored by quantiles of per-sample worst cases.
StrategyPair bayes_ucb_pair(const ExplorationContext& ctx, Rng& rng);

// Candidate strategies: the n pure strategies followed by `samples` draws
// from the uniform distribution on the simplex.
std::vector<MixedStrategy> candidate_strategies(std::size_t n, std::size_t samples,
                                                Rng& rng);

// Linear-interpolation quantile: sorted x, h = (K - 1) q, result
// x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h]). q must be in
// [0, 1] and x nonempty.
double empirical_quantile(std::span<const double> x, double q);

// Bayes-UCB levels (1 - 1/n for Player 1, 1/n for Player 2) clipped to
// [1/(K+1), 1 - 1/(K+1)]. n = 0 is treated as n = 1.
std::pair<double, double> bayes_ucb_levels(std::uint64_t n, std::size_t k);

}  // namespace zsx

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

#include "zsx/explore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "zsx/kernels.hpp"
#include "zsx/nfg_solve.hpp"

namespace zsx {
namespace {

constexpr double kScoreTieTolerance = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_shape(const ExplorationContext& ctx) {
  if (ctx.n_a1 == 0 || ctx.n_a2 == 0) {
    throw std::invalid_argument("exploration context has an empty action set");
  }
}

void check_ensemble(const ExplorationContext& ctx, const char* who) {
  check_shape(ctx);
  if (ctx.ensemble.empty()) {
    throw std::invalid_argument(std::string(who) + ": ensemble is empty");
  }
  for (const auto& u : ctx.ensemble) {
    if (u.rows() != ctx.n_a1 || u.cols() != ctx.n_a2) {
      throw std::invalid_argument(std::string(who) + ": ensemble shape mismatch");
    }
  }
}

void check_counts(const ExplorationContext& ctx, const char* who) {
  check_shape(ctx);
  if (ctx.counts.size() != ctx.n_a1 * ctx.n_a2) {
    throw std::invalid_argument(std::string(who) + ": counts have the wrong size");
  }
}

std::size_t uniform_index(std::size_t n, Rng& rng) {
  if (n == 1) return 0;
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(rng);
}

// Index of the highest score, ties (within a relative tolerance, or equal
// infinities) broken uniformly at random.
std::size_t argmax_uniform_ties(std::span<const double> scores, Rng& rng) {
  const double best = *std::max_element(scores.begin(), scores.end());
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool tie = std::isinf(best)
                         ? scores[i] == best
                         : scores[i] >= best - kScoreTieTolerance * (1.0 + std::abs(best));
    if (tie) tied.push_back(i);
  }
  return tied[uniform_index(tied.size(), rng)];
}

double ucb_bonus(double scale, std::uint64_t total, double visits) {
  if (total == 0 || !(visits > 0.0)) return kInf;
  return scale * std::sqrt(2.0 * std::log(static_cast<double>(total)) / visits);
}

}  // namespace

StrategyKind StrategyKind::parse(std::string_view text) {
  StrategyKind kind;
  if (text == "random") {
    kind.type = StrategyType::kRandom;
  } else if (text == "min-count") {
    kind.type = StrategyType::kMinCount;
  } else if (text == "greedy") {
    kind.type = StrategyType::kGreedy;
  } else if (text == "thompson") {
    kind.type = StrategyType::kThompson;
  } else if (text == "ucb1") {
    kind.type = StrategyType::kUcb1;
  } else if (text == "bayes-ucb") {
    kind.type = StrategyType::kBayesUcb;
  } else if (text == "eps-greedy") {
    kind.type = StrategyType::kEpsGreedy;
  } else if (text.starts_with("eps-greedy:")) {
    kind.type = StrategyType::kEpsGreedy;
    const std::string number(text.substr(11));
    std::size_t used = 0;
    double eps = 0.0;
    try {
      eps = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (number.empty() || used != number.size()) {
      throw std::invalid_argument("bad epsilon in strategy '" + std::string(text) + "'");
    }
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("epsilon must lie in [0, 1], got " + number);
    }
    kind.epsilon = eps;
  } else {
    throw std::invalid_argument(
        "unknown strategy '" + std::string(text) +
        "' (expected random, min-count, greedy, eps-greedy[:eps], thompson, ucb1, "
        "bayes-ucb)");
  }
  return kind;
}

std::string StrategyKind::to_string() const {
  switch (type) {
    case StrategyType::kRandom:
      return "random";
    case StrategyType::kMinCount:
      return "min-count";
    case StrategyType::kGreedy:
      return "greedy";
    case StrategyType::kEpsGreedy: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "eps-greedy:%.17g", epsilon);
      // Prefer the shortest spelling that parses back to the same value.
      for (int digits = 1; digits <= 17; ++digits) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", digits, epsilon);
        if (std::stod(shorter) == epsilon) {
          return std::string("eps-greedy:") + shorter;
        }
      }
      return buf;
    }
    case StrategyType::kThompson:
      return "thompson";
    case StrategyType::kUcb1:
      return "ucb1";
    case StrategyType::kBayesUcb:
      return "bayes-ucb";
  }
  return "unknown";
}

bool StrategyKind::needs_ensemble() const {
  return type == StrategyType::kGreedy || type == StrategyType::kEpsGreedy ||
         type == StrategyType::kThompson || type == StrategyType::kBayesUcb;
}

ActionProfile sample_profile(const StrategyPair& pair, Rng& rng) {
  const std::size_t a1 = pair.s1.sample(rng);
  const std::size_t a2 = pair.s2.sample(rng);
  return {a1, a2};
}

ActionProfile pick_random(const ExplorationContext& ctx, Rng& rng) {
  check_shape(ctx);
  const std::size_t k = uniform_index(ctx.n_a1 * ctx.n_a2, rng);
  return {k / ctx.n_a2, k % ctx.n_a2};
}

ActionProfile pick_min_count(const ExplorationContext& ctx, Rng& rng) {
  check_counts(ctx, "pick_min_count");
  const std::uint64_t lo = *std::min_element(ctx.counts.begin(), ctx.counts.end());
  std::vector<std::size_t> tied;
  for (std::size_t k = 0; k < ctx.counts.size(); ++k) {
    if (ctx.counts[k] == lo) tied.push_back(k);
  }
  const std::size_t k = tied[uniform_index(tied.size(), rng)];
  return {k / ctx.n_a2, k % ctx.n_a2};
}

StrategyPair greedy_pair(std::span<const PayoffMatrix> ensemble) {
  return {solve_maxmeanmin(ensemble).strategy, solve_minmeanmax(ensemble).strategy};
}

ActionProfile pick_greedy(const ExplorationContext& ctx, Rng& rng) {
  check_ensemble(ctx, "pick_greedy");
  return sample_profile(greedy_pair(ctx.ensemble), rng);
}

ActionProfile pick_eps_greedy(const ExplorationContext& ctx, double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  std::bernoulli_distribution explore(epsilon);
  return explore(rng) ? pick_random(ctx, rng) : pick_greedy(ctx, rng);
}

StrategyPair thompson_pair(std::span<const PayoffMatrix> ensemble, Rng& rng) {
  if (ensemble.empty()) throw std::invalid_argument("thompson_pair: ensemble is empty");
  NfgSolution eq = solve_nfg(ensemble[uniform_index(ensemble.size(), rng)]);
  return {std::move(eq.maxmin), std::move(eq.minmax)};
}

ActionProfile pick_thompson(const ExplorationContext& ctx, Rng& rng) {
  check_ensemble(ctx, "pick_thompson");
  return sample_profile(thompson_pair(ctx.ensemble, rng), rng);
}

std::vector<MixedStrategy> candidate_strategies(std::size_t n, std::size_t samples,
                                                Rng& rng) {
  if (n == 0) throw std::invalid_argument("candidate_strategies: no actions");
  std::vector<MixedStrategy> out;
  out.reserve(n + samples);
  for (std::size_t a = 0; a < n; ++a) out.push_back(MixedStrategy::pure(n, a));
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < samples; ++k) {
    double total = 0.0;
    do {
      total = 0.0;
      for (double& x : w) {
        x = expo(rng);
        total += x;
      }
    } while (!(total > 0.0));
    for (double& x : w) x /= total;
    out.push_back(MixedStrategy::normalized(w));
  }
  return out;
}

StrategyPair ucb1_pair(const ExplorationContext& ctx, Rng& rng) {
  check_counts(ctx, "ucb1_pair");
  if (ctx.mean == nullptr || ctx.mean->rows() != ctx.n_a1 || ctx.mean->cols() != ctx.n_a2) {
    throw std::invalid_argument("ucb1_pair: posterior mean missing or misshapen");
  }
  std::vector<double> row_visits(ctx.n_a1, 0.0);
  std::vector<double> col_visits(ctx.n_a2, 0.0);
  for (std::size_t a1 = 0; a1 < ctx.n_a1; ++a1) {
    for (std::size_t a2 = 0; a2 < ctx.n_a2; ++a2) {
      const auto c = static_cast<double>(ctx.counts[a1 * ctx.n_a2 + a2]);
      row_visits[a1] += c;
      col_visits[a2] += c;
    }
  }

  const auto c1 = candidate_strategies(ctx.n_a1, ctx.n_strategy_samples, rng);
  const auto c2 = candidate_strategies(ctx.n_a2, ctx.n_strategy_samples, rng);
  const PayoffMatrix& u = *ctx.mean;

  std::vector<double> scores(c1.size());
  std::vector<double> payoffs(ctx.n_a2);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    kernels::combine_rows(c1[i].probs(), u.data(), ctx.n_a2, payoffs);
    const double worst = *std::min_element(payoffs.begin(), payoffs.end());
    scores[i] = worst + ucb_bonus(ctx.bonus_scale, ctx.total,
                                  kernels::dot(c1[i].probs(), row_visits));
  }
  const std::size_t best1 = argmax_uniform_ties(scores, rng);

  // Player 2 minimizes an optimistic (lower) bound; negate to reuse argmax.
  scores.assign(c2.size(), 0.0);
  std::vector<double> replies(ctx.n_a1);
  for (std::size_t j = 0; j < c2.size(); ++j) {
    kernels::mat_vec(u.data(), c2[j].probs(), replies);
    const double worst = *std::max_element(replies.begin(), replies.end());
    scores[j] = -worst + ucb_bonus(ctx.bonus_scale, ctx.total,
                                   kernels::dot(c2[j].probs(), col_visits));
  }
  const std::size_t best2 = argmax_uniform_ties(scores, rng);
  return {c1[best1], c2[best2]};
}

ActionProfile pick_ucb1(const ExplorationContext& ctx, Rng& rng) {
  return sample_profile(ucb1_pair(ctx, rng), rng);
}

double empirical_quantile(std::span<const double> x, double q) {
  if (x.empty()) throw std::invalid_argument("empirical_quantile: no data");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("empirical_quantile: level must lie in [0, 1]");
  }
  std::vector<double> v(x.begin(), x.end());
  const double h = static_cast<double>(v.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  std::nth_element(v.begin(), v.begin() + static_cast<long>(lo), v.end());
  const double below = v[lo];
  if (lo + 1 >= v.size()) return below;
  const double above = *std::min_element(v.begin() + static_cast<long>(lo) + 1, v.end());
  return below + (h - static_cast<double>(lo)) * (above - below);
}

std::pair<double, double> bayes_ucb_levels(std::uint64_t n, std::size_t k) {
  const double inv_n = 1.0 / static_cast<double>(std::max<std::uint64_t>(n, 1));
  const double lo = 1.0 / static_cast<double>(k + 1);
  const double hi = 1.0 - lo;
  return {std::clamp(1.0 - inv_n, lo, hi), std::clamp(inv_n, lo, hi)};
}

StrategyPair bayes_ucb_pair(const ExplorationContext& ctx, Rng& rng) {
  check_ensemble(ctx, "bayes_ucb_pair");
  const std::size_t k_count = ctx.ensemble.size();
  const auto [q1, q2] = bayes_ucb_levels(ctx.total, k_count);

  const auto c1 = candidate_strategies(ctx.n_a1, ctx.n_strategy_samples, rng);
  const auto c2 = candidate_strategies(ctx.n_a2, ctx.n_strategy_samples, rng);

  const SampleStack stack1(ctx.ensemble);
  std::vector<PayoffMatrix> flipped;
  flipped.reserve(k_count);
  for (const auto& u : ctx.ensemble) flipped.push_back(u.transposed_negated());
  const SampleStack stack2(flipped);

  std::vector<double> per_sample(k_count);
  std::vector<double> scores(c1.size());
  for (std::size_t i = 0; i < c1.size(); ++i) {
    stack1.worst_cases(c1[i].probs(), per_sample);
    scores[i] = empirical_quantile(per_sample, q1);
  }
  const std::size_t best1 = argmax_uniform_ties(scores, rng);

  scores.assign(c2.size(), 0.0);
  for (std::size_t j = 0; j < c2.size(); ++j) {
    // stack2 yields min_{a1} -u_k(a1, s2) = -max_{a1} u_k(a1, s2).
    stack2.worst_cases(c2[j].probs(), per_sample);
    for (double& x : per_sample) x = -x;
    scores[j] = -empirical_quantile(per_sample, q2);
  }
  const std::size_t best2 = argmax_uniform_ties(scores, rng);
  return {c1[best1], c2[best2]};
}

ActionProfile pick_bayes_ucb(const ExplorationContext& ctx, Rng& rng) {
  return sample_profile(bayes_ucb_pair(ctx, rng), rng);
}

ActionProfile pick(const StrategyKind& kind, const ExplorationContext& ctx, Rng& rng) {
  switch (kind.type) {
    case StrategyType::kRandom:
      return pick_random(ctx, rng);
    case StrategyType::kMinCount:
      return pick_min_count(ctx, rng);
    case StrategyType::kGreedy:
      return pick_greedy(ctx, rng);
    case StrategyType::kEpsGreedy:
      return pick_eps_greedy(ctx, kind.epsilon, rng);
    case StrategyType::kThompson:
      return pick_thompson(ctx, rng);
    case StrategyType::kUcb1:
      return pick_ucb1(ctx, rng);
    case StrategyType::kBayesUcb:
      return pick_bayes_ucb(ctx, rng);
  }
  throw std::logic_error("pick: unhandled strategy type");
}

}  // namespace zsx

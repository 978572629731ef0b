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

// Ground-truth game representations for two-player zero-sum games: payoff
// matrices, mixed strategies, and tabular discounted stochastic games.
// Player 1 maximizes, Player 2 minimizes; every payoff is Player 1's.

#include <cstddef>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <random>
#include <span>
#include <vector>

namespace zsx {

inline constexpr double kProbabilityTolerance = 1e-9;

// Dense row-major |A1| x |A2| grid of mean payoffs to Player 1.
class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  PayoffMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws std::invalid_argument on empty dimensions, size mismatch, or
  // non-finite entries.
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t a1, std::size_t a2) const {
    return data_[a1 * cols_ + a2];
  }
  double& operator()(std::size_t a1, std::size_t a2) {
    return data_[a1 * cols_ + a2];
  }

  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t a1) const {
    return std::span<const double>(data_).subspan(a1 * cols_, cols_);
  }

  double min_entry() const;
  double max_entry() const;

  // The same game seen from Player 2 as a maximizer: entry (a2, a1) = -u(a1, a2).
  PayoffMatrix transposed_negated() const;

  bool operator==(const PayoffMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Probability vector over one player's actions.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  // Validates nonnegativity and unit sum within kProbabilityTolerance; no
  // renormalization.
  explicit MixedStrategy(std::vector<double> probs);
  MixedStrategy(std::initializer_list<double> probs)
      : MixedStrategy(std::vector<double>(probs)) {}

  static MixedStrategy uniform(std::size_t n);
  static MixedStrategy pure(std::size_t n, std::size_t action);
  // Clips negatives (down to -1e-7, larger negatives are an error) and
  // rescales to unit sum. For solver output and belief samples only.
  static MixedStrategy normalized(std::vector<double> weights);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // Draws an action index by inverse CDF.
  template <class Urng>
  std::size_t sample(Urng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return sample_at(unit(rng));
  }
  std::size_t sample_at(double u) const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<double> probs_;
};

// Inverse-CDF draw from a probability vector given u in [0, 1). Zero-weight
// entries are never returned.
std::size_t sample_index(std::span<const double> probs, double u);

struct ActionProfile {
  std::size_t a1 = 0;
  std::size_t a2 = 0;
  bool operator==(const ActionProfile&) const = default;
};

// Per-state quantities. Index = state.
using Policy = std::vector<MixedStrategy>;
using QFunction = std::vector<PayoffMatrix>;
using ValueFunction = std::vector<double>;

// Tabular two-player zero-sum discounted stochastic game (S, A1, A2, gamma, R,
// T). Rewards are stored [s][a1][a2]; transitions [s][a1][a2][s'].
class StochasticGame {
 public:
  StochasticGame() = default;
  // Throws std::invalid_argument unless sizes match, rewards are finite,
  // every transition row is a distribution within kProbabilityTolerance, and
  // gamma is in [0, 1].
  StochasticGame(std::size_t n_states, std::size_t n_a1, std::size_t n_a2,
                 double gamma, std::vector<double> rewards,
                 std::vector<double> transitions);

  // The 1-state, gamma = 0 game with a self loop.
  static StochasticGame from_matrix(const PayoffMatrix& u);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_a1() const { return n_a1_; }
  std::size_t n_a2() const { return n_a2_; }
  double gamma() const { return gamma_; }

  double reward(std::size_t s, std::size_t a1, std::size_t a2) const {
    return rewards_[cell(s, a1, a2)];
  }
  std::span<const double> transition(std::size_t s, std::size_t a1,
                                     std::size_t a2) const {
    return std::span<const double>(transitions_)
        .subspan(cell(s, a1, a2) * n_states_, n_states_);
  }
  PayoffMatrix reward_matrix(std::size_t s) const;

  std::span<const double> rewards() const { return rewards_; }
  std::span<const double> transitions() const { return transitions_; }

  std::size_t cell(std::size_t s, std::size_t a1, std::size_t a2) const {
    return (s * n_a1_ + a1) * n_a2_ + a2;
  }

  bool operator==(const StochasticGame&) const = default;

 private:
  std::size_t n_states_ = 0;
  std::size_t n_a1_ = 0;
  std::size_t n_a2_ = 0;
  double gamma_ = 0.0;
  std::vector<double> rewards_;
  std::vector<double> transitions_;
};

// u(s1, s2) = sum_{a1, a2} u(a1, a2) s1(a1) s2(a2).
double expected_payoff(const PayoffMatrix& u, const MixedStrategy& s1,
                       const MixedStrategy& s2);

// Q(s)(a1, a2) = R(s)(a1, a2) + gamma * <T(s)(a1, a2), v>.
QFunction q_from_v(const StochasticGame& game, std::span<const double> v);

// JSON schema: {"n_states", "n_a1", "n_a2", "gamma", "rewards": [s][a1][a2],
// "transitions": [s][a1][a2][s']}.
nlohmann::json to_json(const StochasticGame& game);
StochasticGame stochastic_game_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MixedStrategy& s);
nlohmann::json to_json(const PayoffMatrix& u);

}  // namespace zsx

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

#include "zsx/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "zsx/kernels.hpp"

namespace zsx {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool is_distribution(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= kProbabilityTolerance;
}

std::vector<double> flatten(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<double> out;
  for (const auto& r : rows) {
    require(r.size() == rows.begin()->size(), "ragged payoff matrix");
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols, double fill)
    : PayoffMatrix(rows, cols, std::vector<double>(rows * cols, fill)) {}

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require(rows_ >= 1 && cols_ >= 1, "payoff matrix needs at least one action per player");
  require(data_.size() == rows_ * cols_, "payoff matrix data size mismatch");
  require(std::all_of(data_.begin(), data_.end(),
                      [](double x) { return std::isfinite(x); }),
          "payoff matrix entries must be finite");
}

PayoffMatrix::PayoffMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : PayoffMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(),
                   flatten(rows)) {}

double PayoffMatrix::min_entry() const {
  return *std::min_element(data_.begin(), data_.end());
}

double PayoffMatrix::max_entry() const {
  return *std::max_element(data_.begin(), data_.end());
}

PayoffMatrix PayoffMatrix::transposed_negated() const {
  std::vector<double> out(data_.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = -(*this)(i, j);
  }
  return PayoffMatrix(cols_, rows_, std::move(out));
}

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  require(!probs_.empty(), "mixed strategy over an empty action set");
  require(is_distribution(probs_),
          "mixed strategy must be nonnegative and sum to 1");
}

MixedStrategy MixedStrategy::uniform(std::size_t n) {
  require(n >= 1, "uniform strategy over an empty action set");
  return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

MixedStrategy MixedStrategy::pure(std::size_t n, std::size_t action) {
  require(action < n, "pure strategy action out of range");
  std::vector<double> p(n, 0.0);
  p[action] = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::normalized(std::vector<double> weights) {
  require(!weights.empty(), "mixed strategy over an empty action set");
  double sum = 0.0;
  for (double& w : weights) {
    require(std::isfinite(w) && w >= -1e-7, "strategy weight is negative");
    w = std::max(w, 0.0);
    sum += w;
  }
  require(sum > 0.0, "strategy weights sum to zero");
  for (double& w : weights) w /= sum;
  MixedStrategy out;
  out.probs_ = std::move(weights);
  return out;
}

std::size_t sample_index(std::span<const double> probs, double u) {
  double cdf = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    cdf += probs[i];
    if (u < cdf) return i;
  }
  return last_positive;
}

std::size_t MixedStrategy::sample_at(double u) const { return sample_index(probs_, u); }

StochasticGame::StochasticGame(std::size_t n_states, std::size_t n_a1,
                               std::size_t n_a2, double gamma,
                               std::vector<double> rewards,
                               std::vector<double> transitions)
    : n_states_(n_states),
      n_a1_(n_a1),
      n_a2_(n_a2),
      gamma_(gamma),
      rewards_(std::move(rewards)),
      transitions_(std::move(transitions)) {
  require(n_states_ >= 1 && n_a1_ >= 1 && n_a2_ >= 1,
          "stochastic game dimensions must be at least 1");
  require(gamma_ >= 0.0 && gamma_ <= 1.0, "discount must lie in [0, 1]");
  const std::size_t cells = n_states_ * n_a1_ * n_a2_;
  require(rewards_.size() == cells, "reward grid size mismatch");
  require(transitions_.size() == cells * n_states_,
          "transition grid size mismatch");
  require(std::all_of(rewards_.begin(), rewards_.end(),
                      [](double x) { return std::isfinite(x); }),
          "rewards must be finite");
  for (std::size_t c = 0; c < cells; ++c) {
    require(is_distribution(std::span<const double>(transitions_)
                                .subspan(c * n_states_, n_states_)),
            "transition row " + std::to_string(c) + " is not a distribution");
  }
}

StochasticGame StochasticGame::from_matrix(const PayoffMatrix& u) {
  std::vector<double> rewards(u.data().begin(), u.data().end());
  std::vector<double> transitions(rewards.size(), 1.0);
  return StochasticGame(1, u.rows(), u.cols(), 0.0, std::move(rewards),
                        std::move(transitions));
}

PayoffMatrix StochasticGame::reward_matrix(std::size_t s) const {
  const std::size_t n = n_a1_ * n_a2_;
  return PayoffMatrix(n_a1_, n_a2_,
                      std::vector<double>(rewards_.begin() + s * n,
                                          rewards_.begin() + (s + 1) * n));
}

double expected_payoff(const PayoffMatrix& u, const MixedStrategy& s1,
                       const MixedStrategy& s2) {
  require(s1.size() == u.rows() && s2.size() == u.cols(),
          "strategy dimensions do not match the payoff matrix");
  std::vector<double> col_values(u.cols());
  kernels::combine_rows(s1.probs(), u.data(), u.cols(), col_values);
  return kernels::dot(col_values, s2.probs());
}

QFunction q_from_v(const StochasticGame& game, std::span<const double> v) {
  require(v.size() == game.n_states(), "value function size mismatch");
  const std::size_t n_cells = game.n_a1() * game.n_a2();
  QFunction q;
  q.reserve(game.n_states());
  std::vector<double> continuation(n_cells);
  for (std::size_t s = 0; s < game.n_states(); ++s) {
    std::vector<double> entries(game.rewards().begin() + s * n_cells,
                                game.rewards().begin() + (s + 1) * n_cells);
    if (game.gamma() != 0.0) {
      kernels::mat_vec(game.transitions().subspan(s * n_cells * game.n_states(),
                                                  n_cells * game.n_states()),
                       v, continuation);
      for (std::size_t c = 0; c < n_cells; ++c) {
        entries[c] += game.gamma() * continuation[c];
      }
    }
    q.emplace_back(game.n_a1(), game.n_a2(), std::move(entries));
  }
  return q;
}

nlohmann::json to_json(const StochasticGame& game) {
  nlohmann::json rewards = nlohmann::json::array();
  nlohmann::json transitions = nlohmann::json::array();
  for (std::size_t s = 0; s < game.n_states(); ++s) {
    nlohmann::json rs = nlohmann::json::array();
    nlohmann::json ts = nlohmann::json::array();
    for (std::size_t a1 = 0; a1 < game.n_a1(); ++a1) {
      nlohmann::json rr = nlohmann::json::array();
      nlohmann::json tr = nlohmann::json::array();
      for (std::size_t a2 = 0; a2 < game.n_a2(); ++a2) {
        rr.push_back(game.reward(s, a1, a2));
        auto t = game.transition(s, a1, a2);
        tr.push_back(std::vector<double>(t.begin(), t.end()));
      }
      rs.push_back(std::move(rr));
      ts.push_back(std::move(tr));
    }
    rewards.push_back(std::move(rs));
    transitions.push_back(std::move(ts));
  }
  return {{"n_states", game.n_states()},
          {"n_a1", game.n_a1()},
          {"n_a2", game.n_a2()},
          {"gamma", game.gamma()},
          {"rewards", std::move(rewards)},
          {"transitions", std::move(transitions)}};
}

StochasticGame stochastic_game_from_json(const nlohmann::json& j) {
  const auto n_states = j.at("n_states").get<std::size_t>();
  const auto n_a1 = j.at("n_a1").get<std::size_t>();
  const auto n_a2 = j.at("n_a2").get<std::size_t>();
  const auto gamma = j.value("gamma", 0.0);
  const auto& r = j.at("rewards");
  require(r.size() == n_states, "rewards: expected one entry per state");
  std::vector<double> rewards;
  std::vector<double> transitions;
  const bool has_transitions = j.contains("transitions");
  require(has_transitions || n_states == 1,
          "transitions may be omitted only for 1-state games");
  for (std::size_t s = 0; s < n_states; ++s) {
    require(r[s].size() == n_a1, "rewards: wrong number of rows");
    for (std::size_t a1 = 0; a1 < n_a1; ++a1) {
      require(r[s][a1].size() == n_a2, "rewards: wrong number of columns");
      for (std::size_t a2 = 0; a2 < n_a2; ++a2) {
        rewards.push_back(r[s][a1][a2].get<double>());
        if (!has_transitions) {
          transitions.push_back(1.0);
          continue;
        }
        const auto& t = j["transitions"].at(s).at(a1).at(a2);
        require(t.size() == n_states, "transitions: wrong row length");
        for (const auto& p : t) transitions.push_back(p.get<double>());
      }
    }
  }
  return StochasticGame(n_states, n_a1, n_a2, gamma, std::move(rewards),
                        std::move(transitions));
}

nlohmann::json to_json(const MixedStrategy& s) {
  return std::vector<double>(s.probs().begin(), s.probs().end());
}

nlohmann::json to_json(const PayoffMatrix& u) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < u.rows(); ++i) {
    rows.push_back(std::vector<double>(u.row(i).begin(), u.row(i).end()));
  }
  return rows;
}

}  // namespace zsx

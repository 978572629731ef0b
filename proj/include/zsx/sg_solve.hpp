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

#include <cstddef>
#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "zsx/game.hpp"

namespace zsx {

inline constexpr double kGroundTruthEps = 1e-8;
inline constexpr double kBeliefSampleEps = 1e-6;

// Single-agent discounted MDP, maximizing. Rewards are [s][a], transitions
// [s][a][s'].
class Mdp {
 public:
  Mdp() = default;
  // Throws std::invalid_argument on size mismatches, non-finite rewards,
  // transition rows that are not distributions, or gamma outside [0, 1).
  Mdp(std::size_t n_states, std::size_t n_actions, double gamma,
      std::vector<double> rewards, std::vector<double> transitions);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }
  double gamma() const { return gamma_; }
  double reward(std::size_t s, std::size_t a) const { return rewards_[s * n_actions_ + a]; }
  std::span<const double> transition(std::size_t s, std::size_t a) const {
    return std::span<const double>(transitions_)
        .subspan((s * n_actions_ + a) * n_states_, n_states_);
  }

 private:
  std::size_t n_states_ = 0;
  std::size_t n_actions_ = 0;
  double gamma_ = 0.0;
  std::vector<double> rewards_;
  std::vector<double> transitions_;
};

struct MdpSolution {
  ValueFunction v;
  std::vector<std::size_t> policy;  // deterministic action per state
  std::size_t iterations = 0;
};

struct SgSolution {
  QFunction q;
  ValueFunction v;
  Policy pi1;
  Policy pi2;
  std::size_t iterations = 0;
};

// V = (I - gamma T_pi)^{-1} R_pi by dense LU factorization.
ValueFunction evaluate_policy(const Mdp& mdp, std::span<const std::size_t> policy);

// Howard's policy iteration. Improvement picks the lowest action index among
// those within 1e-12 (relative) of the best. `initial` may be empty (all
// zeros) or hold one action per state.
MdpSolution policy_iteration(const Mdp& mdp, std::span<const std::size_t> initial = {});

// Player 1's MDP when Player 2 follows pi2: rewards and transitions averaged
// over a2 under pi2(s).
Mdp induced_mdp(const StochasticGame& game, const Policy& pi2);

// Player 2's MDP when Player 1 follows pi1, written as a maximization over
// a2 of the negated averaged rewards.
Mdp opponent_mdp(const StochasticGame& game, const Policy& pi1);

// One application of the minimax Bellman operator: the per-state values of
// the matrix games q_from_v(game, v).
ValueFunction bellman_update(const StochasticGame& game, std::span<const double> v);

// Both solvers iterate until the sup-norm change between successive value
// functions drops below eps * (1 - gamma) / gamma, which keeps the returned V
// within eps of the fixed point. With gamma = 0 one step is exact. The
// result carries Q = q_from_v(V_last), per-state values of that Q, and the
// per-state maxmin/minmax strategies. `v0` (empty = zeros) is the starting
// point. Throws std::invalid_argument for gamma >= 1 or eps <= 0.
SgSolution shapley(const StochasticGame& game, double eps,
                   std::span<const double> v0 = {});

// Alternates Player 2's per-state minmax strategies with an exact policy
// iteration solve of Player 1's induced MDP.
SgSolution hoffman_karp(const StochasticGame& game, double eps,
                        std::span<const double> v0 = {});

// min over Player 2 policies of the state-averaged value of (pi1, pi2).
double minpay(const StochasticGame& game, const Policy& pi1);

// Mean of the per-state optimal values.
double optimal_minpay(const SgSolution& solution);

// optimal_minpay - minpay(pi1_hat). The two-argument form solves the game
// with hoffman_karp at kGroundTruthEps first.
double sg_regret(const StochasticGame& game, const Policy& pi1_hat);
double sg_regret(const StochasticGame& game, const Policy& pi1_hat,
                 double optimal);

nlohmann::json to_json(const SgSolution& solution);

}  // namespace zsx

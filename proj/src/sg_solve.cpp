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

#include "zsx/sg_solve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "zsx/kernels.hpp"
#include "zsx/nfg_solve.hpp"

namespace zsx {
namespace {

constexpr double kImprovementTolerance = 1e-12;
constexpr std::size_t kMaxPolicyIterations = 10000;
constexpr std::size_t kMaxOuterIterations = 1000000;

void check_solver_args(const StochasticGame& game, double eps,
                       std::span<const double> v0) {
  if (!(game.gamma() < 1.0)) {
    throw std::invalid_argument("solvers require gamma < 1");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!v0.empty() && v0.size() != game.n_states()) {
    throw std::invalid_argument("initial value function has wrong length");
  }
}

void check_policy(const Policy& pi, std::size_t n_states, std::size_t n_actions,
                  const char* who) {
  if (pi.size() != n_states) {
    throw std::invalid_argument(std::string(who) + ": policy has " +
                                std::to_string(pi.size()) + " states, game has " +
                                std::to_string(n_states));
  }
  for (const auto& s : pi) {
    if (s.size() != n_actions) {
      throw std::invalid_argument(std::string(who) + ": strategy size mismatch");
    }
  }
}

double stop_threshold(double eps, double gamma) {
  if (gamma == 0.0) return std::numeric_limits<double>::infinity();
  return eps * (1.0 - gamma) / gamma;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

SgSolution finish(const StochasticGame& game, std::span<const double> v,
                  std::size_t iterations) {
  SgSolution out;
  out.q = q_from_v(game, v);
  out.iterations = iterations;
  for (const auto& q : out.q) {
    NfgSolution nfg = solve_nfg(q);
    out.v.push_back(nfg.value);
    out.pi1.push_back(std::move(nfg.maxmin));
    out.pi2.push_back(std::move(nfg.minmax));
  }
  return out;
}

}  // namespace

Mdp::Mdp(std::size_t n_states, std::size_t n_actions, double gamma,
         std::vector<double> rewards, std::vector<double> transitions)
    : n_states_(n_states),
      n_actions_(n_actions),
      gamma_(gamma),
      rewards_(std::move(rewards)),
      transitions_(std::move(transitions)) {
  if (n_states_ == 0 || n_actions_ == 0) {
    throw std::invalid_argument("MDP needs at least one state and one action");
  }
  if (!(gamma_ >= 0.0 && gamma_ < 1.0)) {
    throw std::invalid_argument("MDP discount must lie in [0, 1)");
  }
  if (rewards_.size() != n_states_ * n_actions_ ||
      transitions_.size() != n_states_ * n_actions_ * n_states_) {
    throw std::invalid_argument("MDP grid sizes do not match its dimensions");
  }
  for (double r : rewards_) {
    if (!std::isfinite(r)) throw std::invalid_argument("MDP reward is not finite");
  }
  for (std::size_t row = 0; row < n_states_ * n_actions_; ++row) {
    double sum = 0.0;
    for (std::size_t t = 0; t < n_states_; ++t) {
      const double p = transitions_[row * n_states_ + t];
      if (!(p >= 0.0)) throw std::invalid_argument("MDP transition is negative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      throw std::invalid_argument("MDP transition row does not sum to 1");
    }
  }
}

ValueFunction evaluate_policy(const Mdp& mdp, std::span<const std::size_t> policy) {
  const std::size_t n = mdp.n_states();
  if (policy.size() != n) throw std::invalid_argument("policy length mismatch");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  Eigen::VectorXd r(static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) {
    if (policy[s] >= mdp.n_actions()) throw std::invalid_argument("action out of range");
    const auto row = mdp.transition(s, policy[s]);
    const auto si = static_cast<Eigen::Index>(s);
    for (std::size_t t = 0; t < n; ++t) {
      a(si, static_cast<Eigen::Index>(t)) -= mdp.gamma() * row[t];
    }
    r(si) = mdp.reward(s, policy[s]);
  }
  const Eigen::VectorXd v = a.partialPivLu().solve(r);
  return ValueFunction(v.data(), v.data() + v.size());
}

MdpSolution policy_iteration(const Mdp& mdp, std::span<const std::size_t> initial) {
  const std::size_t n = mdp.n_states();
  const std::size_t n_actions = mdp.n_actions();
  MdpSolution out;
  if (initial.empty()) {
    out.policy.assign(n, 0);
  } else {
    if (initial.size() != n) throw std::invalid_argument("initial policy length mismatch");
    out.policy.assign(initial.begin(), initial.end());
  }

  std::vector<double> q(n_actions);
  for (out.iterations = 1; out.iterations <= kMaxPolicyIterations; ++out.iterations) {
    out.v = evaluate_policy(mdp, out.policy);
    bool changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t a = 0; a < n_actions; ++a) {
        q[a] = mdp.reward(s, a) + mdp.gamma() * kernels::dot(mdp.transition(s, a), out.v);
      }
      const double best = *std::max_element(q.begin(), q.end());
      const double slack = kImprovementTolerance * (1.0 + std::abs(best));
      // Keep the incumbent unless something is strictly better, so ties
      // cannot make the policy oscillate.
      if (q[out.policy[s]] >= best - slack) continue;
      std::size_t a = 0;
      while (q[a] < best - slack) ++a;
      out.policy[s] = a;
      changed = true;
    }
    if (!changed) return out;
  }
  throw std::runtime_error("policy_iteration: no convergence after " +
                           std::to_string(kMaxPolicyIterations) + " improvements");
}

Mdp induced_mdp(const StochasticGame& game, const Policy& pi2) {
  check_policy(pi2, game.n_states(), game.n_a2(), "induced_mdp");
  const std::size_t n = game.n_states();
  std::vector<double> rewards(n * game.n_a1(), 0.0);
  std::vector<double> transitions(n * game.n_a1() * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a1 = 0; a1 < game.n_a1(); ++a1) {
      double* trow = &transitions[(s * game.n_a1() + a1) * n];
      for (std::size_t a2 = 0; a2 < game.n_a2(); ++a2) {
        const double w = pi2[s][a2];
        if (w == 0.0) continue;
        rewards[s * game.n_a1() + a1] += w * game.reward(s, a1, a2);
        const auto t = game.transition(s, a1, a2);
        for (std::size_t t2 = 0; t2 < n; ++t2) trow[t2] += w * t[t2];
      }
    }
  }
  return Mdp(n, game.n_a1(), game.gamma(), std::move(rewards), std::move(transitions));
}

Mdp opponent_mdp(const StochasticGame& game, const Policy& pi1) {
  check_policy(pi1, game.n_states(), game.n_a1(), "opponent_mdp");
  const std::size_t n = game.n_states();
  std::vector<double> rewards(n * game.n_a2(), 0.0);
  std::vector<double> transitions(n * game.n_a2() * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a1 = 0; a1 < game.n_a1(); ++a1) {
      const double w = pi1[s][a1];
      if (w == 0.0) continue;
      for (std::size_t a2 = 0; a2 < game.n_a2(); ++a2) {
        rewards[s * game.n_a2() + a2] -= w * game.reward(s, a1, a2);
        double* trow = &transitions[(s * game.n_a2() + a2) * n];
        const auto t = game.transition(s, a1, a2);
        for (std::size_t t2 = 0; t2 < n; ++t2) trow[t2] += w * t[t2];
      }
    }
  }
  return Mdp(n, game.n_a2(), game.gamma(), std::move(rewards), std::move(transitions));
}

ValueFunction bellman_update(const StochasticGame& game, std::span<const double> v) {
  ValueFunction out;
  out.reserve(game.n_states());
  for (const auto& q : q_from_v(game, v)) out.push_back(solve_nfg(q).value);
  return out;
}

SgSolution shapley(const StochasticGame& game, double eps, std::span<const double> v0) {
  check_solver_args(game, eps, v0);
  const double threshold = stop_threshold(eps, game.gamma());
  ValueFunction v = v0.empty() ? ValueFunction(game.n_states(), 0.0)
                               : ValueFunction(v0.begin(), v0.end());
  for (std::size_t it = 1; it <= kMaxOuterIterations; ++it) {
    ValueFunction next = bellman_update(game, v);
    const double step = sup_distance(v, next);
    v = std::move(next);
    if (step < threshold) return finish(game, v, it);
  }
  throw std::runtime_error("shapley: iteration limit reached");
}

SgSolution hoffman_karp(const StochasticGame& game, double eps,
                        std::span<const double> v0) {
  check_solver_args(game, eps, v0);
  const double threshold = stop_threshold(eps, game.gamma());
  ValueFunction v = v0.empty() ? ValueFunction(game.n_states(), 0.0)
                               : ValueFunction(v0.begin(), v0.end());
  std::vector<std::size_t> actions;
  for (std::size_t it = 1; it <= kMaxOuterIterations; ++it) {
    Policy pi2;
    pi2.reserve(game.n_states());
    for (const auto& q : q_from_v(game, v)) pi2.push_back(solve_nfg(q).minmax);
    MdpSolution best = policy_iteration(induced_mdp(game, pi2), actions);
    const double step = sup_distance(v, best.v);
    v = std::move(best.v);
    actions = std::move(best.policy);
    if (step < threshold) return finish(game, v, it);
  }
  throw std::runtime_error("hoffman_karp: iteration limit reached");
}

double minpay(const StochasticGame& game, const Policy& pi1) {
  const MdpSolution reply = policy_iteration(opponent_mdp(game, pi1));
  double total = 0.0;
  for (double x : reply.v) total -= x;
  return total / static_cast<double>(reply.v.size());
}

double optimal_minpay(const SgSolution& solution) {
  return std::accumulate(solution.v.begin(), solution.v.end(), 0.0) /
         static_cast<double>(solution.v.size());
}

double sg_regret(const StochasticGame& game, const Policy& pi1_hat) {
  return sg_regret(game, pi1_hat, optimal_minpay(hoffman_karp(game, kGroundTruthEps)));
}

double sg_regret(const StochasticGame& game, const Policy& pi1_hat, double optimal) {
  return optimal - minpay(game, pi1_hat);
}

nlohmann::json to_json(const SgSolution& solution) {
  nlohmann::json pi1 = nlohmann::json::array();
  nlohmann::json pi2 = nlohmann::json::array();
  for (const auto& s : solution.pi1) pi1.push_back(to_json(s));
  for (const auto& s : solution.pi2) pi2.push_back(to_json(s));
  return {{"value", solution.v}, {"pi1", pi1}, {"pi2", pi2},
          {"iterations", solution.iterations}};
}

}  // namespace zsx

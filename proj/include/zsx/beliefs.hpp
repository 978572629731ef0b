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

// Conjugate beliefs over unknown games: Beta posteriors over Bernoulli reward
// means and Dirichlet posteriors over categorical next-state distributions,
// together with per-cell visit counts.
//
// Exploration code only ever draws samples and reads posterior means and
// counts, so a different likelihood can be swapped in by providing the same
// sample/mean surface.

#include <cstddef>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "zsx/game.hpp"
#include "zsx/rng.hpp"

namespace zsx {

inline constexpr double kJeffreysConcentration = 0.5;

class NfgBelief;
class SgBelief;
NfgBelief nfg_belief_from_json(const nlohmann::json& j);
SgBelief sg_belief_from_json(const nlohmann::json& j);

struct BetaPosterior {
  double alpha = kJeffreysConcentration;
  double beta = kJeffreysConcentration;

  double mean() const { return alpha / (alpha + beta); }
  double variance() const;
  // Gamma-ratio construction; the result is clamped into the open interval.
  double sample(Rng& rng) const;

  bool operator==(const BetaPosterior&) const = default;
};

struct DirichletPosterior {
  std::vector<double> concentrations;

  std::vector<double> mean() const;
  // Normalized independent Gamma(concentration_i, 1) draws.
  std::vector<double> sample(Rng& rng) const;
};

class NfgBelief {
 public:
  NfgBelief() = default;
  // Explicit posteriors, zero counts. Throws std::invalid_argument on empty
  // dimensions, a size mismatch, or a non-positive concentration.
  NfgBelief(std::size_t n_a1, std::size_t n_a2, std::vector<BetaPosterior> cells);

  std::size_t n_a1() const { return n_a1_; }
  std::size_t n_a2() const { return n_a2_; }

  const BetaPosterior& posterior(std::size_t a1, std::size_t a2) const {
    return cells_[a1 * n_a2_ + a2];
  }
  std::uint64_t count(std::size_t a1, std::size_t a2) const {
    return counts_[a1 * n_a2_ + a2];
  }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t total_count() const { return total_; }

  // Conjugate update for one Bernoulli observation at `profile`. Throws
  // std::invalid_argument on an out-of-range profile or a reward not in {0,1}.
  void update(ActionProfile profile, int reward);

  bool operator==(const NfgBelief&) const = default;

 private:
  friend NfgBelief nfg_belief_from_json(const nlohmann::json& j);

  std::size_t n_a1_ = 0;
  std::size_t n_a2_ = 0;
  std::vector<BetaPosterior> cells_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

NfgBelief jeffreys_nfg(std::size_t n_a1, std::size_t n_a2);
NfgBelief update_nfg(NfgBelief belief, ActionProfile profile, int reward);
// Each cell drawn independently from its Beta posterior, row-major order.
PayoffMatrix sample_nfg(const NfgBelief& belief, Rng& rng);
PayoffMatrix mean_nfg(const NfgBelief& belief);
// Beta(strength * u, strength * (1 - u)) per cell: a near point mass at u,
// whose entries must lie in (0, 1).
NfgBelief concentrated_nfg(const PayoffMatrix& u, double strength);

// One observed step of a stochastic game.
struct Transition {
  std::size_t state = 0;
  ActionProfile profile;
  int reward = 0;
  std::size_t next_state = 0;
  bool operator==(const Transition&) const = default;
};

class SgBelief {
 public:
  SgBelief() = default;
  // Uniform symmetric prior: Beta(reward_prior, reward_prior) rewards and
  // Dirichlet(transition_prior, ...) transitions.
  SgBelief(std::size_t n_states, std::size_t n_a1, std::size_t n_a2,
           double reward_prior, double transition_prior);
  // Explicit posteriors; `transition_concentrations` is [s][a1][a2][s'].
  SgBelief(std::size_t n_states, std::size_t n_a1, std::size_t n_a2,
           std::vector<BetaPosterior> rewards,
           std::vector<double> transition_concentrations);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_a1() const { return n_a1_; }
  std::size_t n_a2() const { return n_a2_; }

  std::size_t cell(std::size_t s, std::size_t a1, std::size_t a2) const {
    return (s * n_a1_ + a1) * n_a2_ + a2;
  }
  const BetaPosterior& reward_posterior(std::size_t s, std::size_t a1,
                                        std::size_t a2) const {
    return rewards_[cell(s, a1, a2)];
  }
  std::span<const double> transition_concentrations(std::size_t s, std::size_t a1,
                                                    std::size_t a2) const {
    return std::span<const double>(transitions_)
        .subspan(cell(s, a1, a2) * n_states_, n_states_);
  }
  std::uint64_t count(std::size_t s, std::size_t a1, std::size_t a2) const {
    return counts_[cell(s, a1, a2)];
  }
  // Visit counts of state s as an |A1| x |A2| block.
  std::span<const std::uint64_t> state_counts(std::size_t s) const {
    return std::span<const std::uint64_t>(counts_).subspan(s * n_a1_ * n_a2_,
                                                           n_a1_ * n_a2_);
  }
  std::uint64_t state_total(std::size_t s) const { return state_totals_[s]; }

  // Throws std::invalid_argument on invalid indices or a non-binary reward.
  void update(const Transition& t);

  bool operator==(const SgBelief&) const = default;

 private:
  friend SgBelief sg_belief_from_json(const nlohmann::json& j);

  std::size_t n_states_ = 0;
  std::size_t n_a1_ = 0;
  std::size_t n_a2_ = 0;
  std::vector<BetaPosterior> rewards_;
  std::vector<double> transitions_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> state_totals_;
};

SgBelief jeffreys_sg(std::size_t n_states, std::size_t n_a1, std::size_t n_a2);
SgBelief update_sg(SgBelief belief, const Transition& t);
// Draws rewards cell by cell, then each transition row, in cell order.
StochasticGame sample_sg(const SgBelief& belief, double gamma, Rng& rng);
StochasticGame mean_sg(const SgBelief& belief, double gamma);
SgBelief concentrated_sg(const StochasticGame& game, double strength);

nlohmann::json to_json(const NfgBelief& belief);
nlohmann::json to_json(const SgBelief& belief);
NfgBelief nfg_belief_from_json(const nlohmann::json& j);
SgBelief sg_belief_from_json(const nlohmann::json& j);

}  // namespace zsx

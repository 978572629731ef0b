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

#include "zsx/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace zsx {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double gamma_draw(double shape, Rng& rng) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(rng);
}

void check_binary(int reward) {
  if (reward != 0 && reward != 1) {
    throw std::invalid_argument("reward must be 0 or 1, got " + std::to_string(reward));
  }
}

void check_positive(const BetaPosterior& p) {
  require(p.alpha > 0.0 && p.beta > 0.0 && std::isfinite(p.alpha) &&
              std::isfinite(p.beta),
          "Beta concentrations must be positive and finite");
}

constexpr double kMinConcentration = 1e-12;

}  // namespace

double BetaPosterior::variance() const {
  const double s = alpha + beta;
  return alpha * beta / (s * s * (s + 1.0));
}

double BetaPosterior::sample(Rng& rng) const {
  double x = 0.0;
  double y = 0.0;
  do {
    x = gamma_draw(alpha, rng);
    y = gamma_draw(beta, rng);
  } while (!(x + y > 0.0));
  const double p = x / (x + y);
  return std::clamp(p, std::numeric_limits<double>::min(),
                    std::nextafter(1.0, 0.0));
}

std::vector<double> DirichletPosterior::mean() const {
  double total = 0.0;
  for (double c : concentrations) total += c;
  std::vector<double> out(concentrations.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = concentrations[i] / total;
  return out;
}

std::vector<double> DirichletPosterior::sample(Rng& rng) const {
  std::vector<double> out(concentrations.size());
  double total = 0.0;
  do {
    total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = gamma_draw(concentrations[i], rng);
      total += out[i];
    }
  } while (!(total > 0.0));
  for (double& x : out) x /= total;
  return out;
}

NfgBelief::NfgBelief(std::size_t n_a1, std::size_t n_a2,
                     std::vector<BetaPosterior> cells)
    : n_a1_(n_a1), n_a2_(n_a2), cells_(std::move(cells)) {
  require(n_a1_ >= 1 && n_a2_ >= 1, "belief needs at least one action per player");
  require(cells_.size() == n_a1_ * n_a2_, "belief cell count mismatch");
  for (const auto& c : cells_) check_positive(c);
  counts_.assign(cells_.size(), 0);
}

void NfgBelief::update(ActionProfile profile, int reward) {
  require(profile.a1 < n_a1_ && profile.a2 < n_a2_, "action profile out of range");
  check_binary(reward);
  const std::size_t c = profile.a1 * n_a2_ + profile.a2;
  if (reward == 1) {
    cells_[c].alpha += 1.0;
  } else {
    cells_[c].beta += 1.0;
  }
  ++counts_[c];
  ++total_;
}

NfgBelief jeffreys_nfg(std::size_t n_a1, std::size_t n_a2) {
  require(n_a1 >= 1 && n_a2 >= 1, "belief needs at least one action per player");
  return NfgBelief(n_a1, n_a2, std::vector<BetaPosterior>(n_a1 * n_a2));
}

NfgBelief update_nfg(NfgBelief belief, ActionProfile profile, int reward) {
  belief.update(profile, reward);
  return belief;
}

PayoffMatrix sample_nfg(const NfgBelief& belief, Rng& rng) {
  std::vector<double> data(belief.n_a1() * belief.n_a2());
  for (std::size_t a1 = 0; a1 < belief.n_a1(); ++a1) {
    for (std::size_t a2 = 0; a2 < belief.n_a2(); ++a2) {
      data[a1 * belief.n_a2() + a2] = belief.posterior(a1, a2).sample(rng);
    }
  }
  return PayoffMatrix(belief.n_a1(), belief.n_a2(), std::move(data));
}

PayoffMatrix mean_nfg(const NfgBelief& belief) {
  PayoffMatrix out(belief.n_a1(), belief.n_a2());
  for (std::size_t a1 = 0; a1 < belief.n_a1(); ++a1) {
    for (std::size_t a2 = 0; a2 < belief.n_a2(); ++a2) {
      out(a1, a2) = belief.posterior(a1, a2).mean();
    }
  }
  return out;
}

NfgBelief concentrated_nfg(const PayoffMatrix& u, double strength) {
  require(strength > 0.0, "concentration strength must be positive");
  std::vector<BetaPosterior> cells;
  for (double p : u.data()) {
    require(p > 0.0 && p < 1.0, "concentrated belief needs entries in (0, 1)");
    cells.push_back({strength * p, strength * (1.0 - p)});
  }
  return NfgBelief(u.rows(), u.cols(), std::move(cells));
}

SgBelief::SgBelief(std::size_t n_states, std::size_t n_a1, std::size_t n_a2,
                   double reward_prior, double transition_prior)
    : SgBelief(n_states, n_a1, n_a2,
               std::vector<BetaPosterior>(n_states * n_a1 * n_a2,
                                          {reward_prior, reward_prior}),
               std::vector<double>(n_states * n_a1 * n_a2 * n_states,
                                   transition_prior)) {}

SgBelief::SgBelief(std::size_t n_states, std::size_t n_a1, std::size_t n_a2,
                   std::vector<BetaPosterior> rewards,
                   std::vector<double> transition_concentrations)
    : n_states_(n_states),
      n_a1_(n_a1),
      n_a2_(n_a2),
      rewards_(std::move(rewards)),
      transitions_(std::move(transition_concentrations)) {
  require(n_states_ >= 1 && n_a1_ >= 1 && n_a2_ >= 1,
          "belief dimensions must be at least 1");
  const std::size_t cells = n_states_ * n_a1_ * n_a2_;
  require(rewards_.size() == cells, "reward posterior count mismatch");
  require(transitions_.size() == cells * n_states_,
          "transition concentration count mismatch");
  for (const auto& r : rewards_) check_positive(r);
  for (double c : transitions_) {
    require(c > 0.0 && std::isfinite(c), "Dirichlet concentrations must be positive");
  }
  counts_.assign(cells, 0);
  state_totals_.assign(n_states_, 0);
}

void SgBelief::update(const Transition& t) {
  require(t.state < n_states_ && t.next_state < n_states_ && t.profile.a1 < n_a1_ &&
              t.profile.a2 < n_a2_,
          "transition index out of range");
  check_binary(t.reward);
  const std::size_t c = cell(t.state, t.profile.a1, t.profile.a2);
  if (t.reward == 1) {
    rewards_[c].alpha += 1.0;
  } else {
    rewards_[c].beta += 1.0;
  }
  transitions_[c * n_states_ + t.next_state] += 1.0;
  ++counts_[c];
  ++state_totals_[t.state];
}

SgBelief jeffreys_sg(std::size_t n_states, std::size_t n_a1, std::size_t n_a2) {
  require(n_states >= 1 && n_a1 >= 1 && n_a2 >= 1, "belief dimensions must be at least 1");
  return SgBelief(n_states, n_a1, n_a2, kJeffreysConcentration, kJeffreysConcentration);
}

SgBelief update_sg(SgBelief belief, const Transition& t) {
  belief.update(t);
  return belief;
}

StochasticGame sample_sg(const SgBelief& belief, double gamma, Rng& rng) {
  require(gamma >= 0.0 && gamma < 1.0, "discount must lie in [0, 1)");
  const std::size_t n = belief.n_states();
  const std::size_t cells = n * belief.n_a1() * belief.n_a2();
  std::vector<double> rewards(cells);
  std::vector<double> transitions(cells * n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a1 = 0; a1 < belief.n_a1(); ++a1) {
      for (std::size_t a2 = 0; a2 < belief.n_a2(); ++a2) {
        rewards[belief.cell(s, a1, a2)] = belief.reward_posterior(s, a1, a2).sample(rng);
      }
    }
  }
  DirichletPosterior dir;
  for (std::size_t c = 0; c < cells; ++c) {
    auto conc = std::span<const double>(belief.transition_concentrations(0, 0, 0).data() + c * n, n);
    dir.concentrations.assign(conc.begin(), conc.end());
    const auto row = dir.sample(rng);
    std::copy(row.begin(), row.end(), transitions.begin() + static_cast<long>(c * n));
  }
  return StochasticGame(n, belief.n_a1(), belief.n_a2(), gamma, std::move(rewards),
                        std::move(transitions));
}

StochasticGame mean_sg(const SgBelief& belief, double gamma) {
  const std::size_t n = belief.n_states();
  const std::size_t cells = n * belief.n_a1() * belief.n_a2();
  std::vector<double> rewards(cells);
  std::vector<double> transitions(cells * n);
  DirichletPosterior dir;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a1 = 0; a1 < belief.n_a1(); ++a1) {
      for (std::size_t a2 = 0; a2 < belief.n_a2(); ++a2) {
        const std::size_t c = belief.cell(s, a1, a2);
        rewards[c] = belief.reward_posterior(s, a1, a2).mean();
        auto conc = belief.transition_concentrations(s, a1, a2);
        dir.concentrations.assign(conc.begin(), conc.end());
        const auto row = dir.mean();
        std::copy(row.begin(), row.end(), transitions.begin() + static_cast<long>(c * n));
      }
    }
  }
  return StochasticGame(n, belief.n_a1(), belief.n_a2(), gamma, std::move(rewards),
                        std::move(transitions));
}

SgBelief concentrated_sg(const StochasticGame& game, double strength) {
  require(strength > 0.0, "concentration strength must be positive");
  std::vector<BetaPosterior> rewards;
  for (double r : game.rewards()) {
    require(r > 0.0 && r < 1.0, "concentrated belief needs rewards in (0, 1)");
    rewards.push_back({strength * r, strength * (1.0 - r)});
  }
  std::vector<double> transitions;
  for (double p : game.transitions()) {
    transitions.push_back(std::max(strength * p, kMinConcentration));
  }
  return SgBelief(game.n_states(), game.n_a1(), game.n_a2(), std::move(rewards),
                  std::move(transitions));
}

nlohmann::json to_json(const NfgBelief& belief) {
  nlohmann::json alpha = nlohmann::json::array();
  nlohmann::json beta = nlohmann::json::array();
  nlohmann::json counts = nlohmann::json::array();
  for (std::size_t a1 = 0; a1 < belief.n_a1(); ++a1) {
    nlohmann::json ar = nlohmann::json::array();
    nlohmann::json br = nlohmann::json::array();
    nlohmann::json cr = nlohmann::json::array();
    for (std::size_t a2 = 0; a2 < belief.n_a2(); ++a2) {
      ar.push_back(belief.posterior(a1, a2).alpha);
      br.push_back(belief.posterior(a1, a2).beta);
      cr.push_back(belief.count(a1, a2));
    }
    alpha.push_back(std::move(ar));
    beta.push_back(std::move(br));
    counts.push_back(std::move(cr));
  }
  return {{"n_a1", belief.n_a1()}, {"n_a2", belief.n_a2()}, {"alpha", alpha},
          {"beta", beta},          {"counts", counts},      {"total", belief.total_count()}};
}

NfgBelief nfg_belief_from_json(const nlohmann::json& j) {
  const auto n_a1 = j.at("n_a1").get<std::size_t>();
  const auto n_a2 = j.at("n_a2").get<std::size_t>();
  std::vector<BetaPosterior> cells;
  for (std::size_t a1 = 0; a1 < n_a1; ++a1) {
    for (std::size_t a2 = 0; a2 < n_a2; ++a2) {
      cells.push_back({j.at("alpha").at(a1).at(a2).get<double>(),
                       j.at("beta").at(a1).at(a2).get<double>()});
    }
  }
  NfgBelief out(n_a1, n_a2, std::move(cells));
  std::uint64_t total = 0;
  for (std::size_t a1 = 0; a1 < n_a1; ++a1) {
    for (std::size_t a2 = 0; a2 < n_a2; ++a2) {
      const auto c = j.at("counts").at(a1).at(a2).get<std::uint64_t>();
      out.counts_[a1 * n_a2 + a2] = c;
      total += c;
    }
  }
  require(total == j.at("total").get<std::uint64_t>(), "belief counts do not sum to total");
  out.total_ = total;
  return out;
}

nlohmann::json to_json(const SgBelief& belief) {
  const std::size_t cells = belief.n_states() * belief.n_a1() * belief.n_a2();
  std::vector<double> alpha(cells);
  std::vector<double> beta(cells);
  std::vector<std::uint64_t> counts(cells);
  std::vector<double> transitions;
  for (std::size_t s = 0; s < belief.n_states(); ++s) {
    for (std::size_t a1 = 0; a1 < belief.n_a1(); ++a1) {
      for (std::size_t a2 = 0; a2 < belief.n_a2(); ++a2) {
        const std::size_t c = belief.cell(s, a1, a2);
        alpha[c] = belief.reward_posterior(s, a1, a2).alpha;
        beta[c] = belief.reward_posterior(s, a1, a2).beta;
        counts[c] = belief.count(s, a1, a2);
        auto t = belief.transition_concentrations(s, a1, a2);
        transitions.insert(transitions.end(), t.begin(), t.end());
      }
    }
  }
  // Flat row-major grids: [s][a1][a2] and [s][a1][a2][s'].
  return {{"n_states", belief.n_states()},
          {"n_a1", belief.n_a1()},
          {"n_a2", belief.n_a2()},
          {"reward_alpha", alpha},
          {"reward_beta", beta},
          {"transition_concentrations", transitions},
          {"counts", counts}};
}

SgBelief sg_belief_from_json(const nlohmann::json& j) {
  const auto n_states = j.at("n_states").get<std::size_t>();
  const auto n_a1 = j.at("n_a1").get<std::size_t>();
  const auto n_a2 = j.at("n_a2").get<std::size_t>();
  const auto alpha = j.at("reward_alpha").get<std::vector<double>>();
  const auto beta = j.at("reward_beta").get<std::vector<double>>();
  require(alpha.size() == beta.size(), "reward grids differ in size");
  std::vector<BetaPosterior> rewards;
  for (std::size_t c = 0; c < alpha.size(); ++c) rewards.push_back({alpha[c], beta[c]});
  SgBelief out(n_states, n_a1, n_a2, std::move(rewards),
               j.at("transition_concentrations").get<std::vector<double>>());
  const auto counts = j.at("counts").get<std::vector<std::uint64_t>>();
  require(counts.size() == out.counts_.size(), "count grid size mismatch");
  out.counts_ = counts;
  const std::size_t per_state = n_a1 * n_a2;
  for (std::size_t s = 0; s < n_states; ++s) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < per_state; ++c) total += counts[s * per_state + c];
    out.state_totals_[s] = total;
  }
  return out;
}

}  // namespace zsx

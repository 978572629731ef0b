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


#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "zsx/game.hpp"

namespace zsx {
namespace {

MixedStrategy random_strategy(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  for (double& x : w) x = e(rng);
  return MixedStrategy::normalized(w);
}

TEST(ExpectedPayoff, MatchingPenniesUniformIsZero) {
  const PayoffMatrix u{{1, -1}, {-1, 1}};
  EXPECT_NEAR(expected_payoff(u, {0.5, 0.5}, {0.5, 0.5}), 0.0, 1e-15);
}

TEST(ExpectedPayoff, PureProfileReadsEntry) {
  const PayoffMatrix u{{1, -1}, {-1, 1}};
  EXPECT_EQ(expected_payoff(u, {1, 0}, {1, 0}), 1.0);
}

TEST(ExpectedPayoff, HandExpandedSum) {
  // 0.25 * (0.2 + 0.8 + 0.6 + 0.4)
  const PayoffMatrix u{{0.2, 0.8}, {0.6, 0.4}};
  EXPECT_NEAR(expected_payoff(u, {0.5, 0.5}, {0.5, 0.5}), 0.5, 1e-15);
}

TEST(ExpectedPayoff, DimensionMismatchThrows) {
  const PayoffMatrix u{{1, 2, 3}, {4, 5, 6}};
  EXPECT_THROW(expected_payoff(u, {0.5, 0.5}, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(expected_payoff(u, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}),
               std::invalid_argument);
}

TEST(ExpectedPayoff, LinearInEachArgument) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 6;
    const std::size_t n = 1 + (trial / 6) % 5;
    std::vector<double> data(m * n);
    for (double& x : data) x = unit(rng) * 4.0 - 2.0;
    const PayoffMatrix u(m, n, data);
    const auto a = random_strategy(m, rng);
    const auto b = random_strategy(m, rng);
    const auto s2 = random_strategy(n, rng);
    const double lambda = unit(rng);
    std::vector<double> mix(m);
    for (std::size_t i = 0; i < m; ++i) mix[i] = lambda * a[i] + (1 - lambda) * b[i];
    const double lhs = expected_payoff(u, MixedStrategy::normalized(mix), s2);
    const double rhs =
        lambda * expected_payoff(u, a, s2) + (1 - lambda) * expected_payoff(u, b, s2);
    EXPECT_NEAR(lhs, rhs, 1e-9);

    const auto c = random_strategy(n, rng);
    std::vector<double> mix2(n);
    for (std::size_t j = 0; j < n; ++j) mix2[j] = lambda * s2[j] + (1 - lambda) * c[j];
    EXPECT_NEAR(expected_payoff(u, a, MixedStrategy::normalized(mix2)),
                lambda * expected_payoff(u, a, s2) + (1 - lambda) * expected_payoff(u, a, c),
                1e-9);
  }
}

TEST(ExpectedPayoff, PureStrategiesAreExact) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  std::vector<double> data(7 * 5);
  for (double& x : data) x = unit(rng);
  const PayoffMatrix u(7, 5, data);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_EQ(expected_payoff(u, MixedStrategy::pure(7, i), MixedStrategy::pure(5, j)),
                u(i, j));
    }
  }
}

TEST(PayoffMatrix, RejectsInvalidInput) {
  EXPECT_THROW(PayoffMatrix(0, 2, std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(PayoffMatrix(1, 2, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(PayoffMatrix(1, 1, std::vector<double>{std::nan("")}), std::invalid_argument);
  EXPECT_THROW((PayoffMatrix{{1, 2}, {3}}), std::invalid_argument);
}

TEST(PayoffMatrix, TransposedNegated) {
  const PayoffMatrix u{{1, 2, 3}, {4, 5, 6}};
  const PayoffMatrix t = u.transposed_negated();
  ASSERT_EQ(t.rows(), 3u);
  ASSERT_EQ(t.cols(), 2u);
  EXPECT_EQ(t(2, 1), -6.0);
  EXPECT_EQ(t(0, 1), -4.0);
}

TEST(MixedStrategy, Validation) {
  EXPECT_NO_THROW((MixedStrategy{0.25, 0.75}));
  EXPECT_THROW((MixedStrategy{0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW((MixedStrategy{1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(MixedStrategy(std::vector<double>{}), std::invalid_argument);
  const auto n = MixedStrategy::normalized({2.0, 6.0});
  EXPECT_DOUBLE_EQ(n[0], 0.25);
}

TEST(MixedStrategy, InverseCdfSkipsZeroWeights) {
  const MixedStrategy s{0.0, 0.5, 0.0, 0.5};
  EXPECT_EQ(s.sample_at(0.0), 1u);
  EXPECT_EQ(s.sample_at(0.49), 1u);
  EXPECT_EQ(s.sample_at(0.5), 3u);
  EXPECT_EQ(s.sample_at(0.999999), 3u);
}

StochasticGame one_state(double reward, double gamma) {
  return StochasticGame(1, 2, 2, gamma, std::vector<double>(4, reward),
                        std::vector<double>(4, 1.0));
}

TEST(QFromV, ZeroValueGivesRewards) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> rewards(3 * 2 * 2);
  for (double& r : rewards) r = unit(rng);
  std::vector<double> trans(3 * 2 * 2 * 3, 1.0 / 3.0);
  const StochasticGame g(3, 2, 2, 0.7, rewards, trans);
  const QFunction q = q_from_v(g, ValueFunction(3, 0.0));
  for (std::size_t s = 0; s < 3; ++s) EXPECT_EQ(q[s], g.reward_matrix(s));
}

TEST(QFromV, GammaZeroIsBitExact) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> rewards(2 * 3 * 2);
  for (double& r : rewards) r = unit(rng);
  std::vector<double> trans(2 * 3 * 2 * 2, 0.5);
  const StochasticGame g(2, 3, 2, 0.0, rewards, trans);
  const QFunction q = q_from_v(g, ValueFunction{123.0, -7.5});
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ(q[s].data()[i], rewards[s * 6 + i]);
    }
  }
}

TEST(QFromV, SelfLoopHandValue) {
  const QFunction q = q_from_v(one_state(0.5, 0.9), ValueFunction{1.0});
  for (double x : q[0].data()) EXPECT_NEAR(x, 1.4, 1e-15);
}

TEST(QFromV, WrongLengthThrows) {
  EXPECT_THROW(q_from_v(one_state(0.5, 0.9), ValueFunction{1.0, 2.0}), std::invalid_argument);
}

TEST(StochasticGame, RejectsBadTransitions) {
  EXPECT_THROW(StochasticGame(1, 1, 1, 0.5, {0.0}, {0.9}), std::invalid_argument);
  EXPECT_THROW(StochasticGame(2, 1, 1, 0.5, {0.0, 0.0}, {1.2, -0.2, 0.5, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(StochasticGame(1, 1, 1, 1.5, {0.0}, {1.0}), std::invalid_argument);
}

TEST(StochasticGame, JsonRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> rewards(2 * 2 * 3);
  for (double& r : rewards) r = unit(rng);
  std::vector<double> trans;
  for (int c = 0; c < 12; ++c) {
    const double p = unit(rng);
    trans.push_back(p);
    trans.push_back(1.0 - p);
  }
  const StochasticGame g(2, 2, 3, 0.8, rewards, trans);
  const auto back = stochastic_game_from_json(nlohmann::json::parse(to_json(g).dump()));
  EXPECT_EQ(back, g);
}

TEST(StochasticGame, NormalFormIsDegenerateGame) {
  const auto j = nlohmann::json::parse(
      R"({"n_states":1,"n_a1":2,"n_a2":2,"gamma":0,"rewards":[[[3,0],[1,2]]]})");
  const StochasticGame g = stochastic_game_from_json(j);
  EXPECT_EQ(g.reward_matrix(0), (PayoffMatrix{{3, 0}, {1, 2}}));
  EXPECT_EQ(g, StochasticGame::from_matrix(PayoffMatrix{{3, 0}, {1, 2}}));
}

}  // namespace
}  // namespace zsx

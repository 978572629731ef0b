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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "zsx/beliefs.hpp"
#include "zsx/harness.hpp"
#include "zsx/nfg_solve.hpp"
#include "zsx/sg_solve.hpp"

namespace zsx {
namespace {

ExperimentConfig small_nfg(std::size_t episodes = 30, std::size_t trials = 3) {
  ExperimentConfig c;
  c.n_a1 = 3;
  c.n_a2 = 2;
  c.episodes = episodes;
  c.trials = trials;
  c.belief_samples = 10;
  c.strategy_samples = 10;
  c.seed = 42;
  for (const char* s : {"random", "min-count", "greedy", "eps-greedy:0.2", "thompson", "ucb1",
                        "bayes-ucb"}) {
    c.strategies.push_back(StrategyKind::parse(s));
  }
  return c;
}

ExperimentConfig small_sg(std::size_t episodes = 6) {
  ExperimentConfig c = small_nfg(episodes, 2);
  c.mode = GameMode::kSg;
  c.n_states = 3;
  c.gamma = 0.7;
  c.steps_per_episode = 10;
  c.belief_samples = 4;
  return c;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(GroundTruth, NfgCellsFollowTheJeffreysPrior) {
  ExperimentConfig c = small_nfg();
  c.n_a1 = 10;
  c.n_a2 = 2;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    const auto u = std::get<PayoffMatrix>(trial_ground_truth(c, t));
    for (double x : u.data()) {
      EXPECT_GT(x, 0.0);
      EXPECT_LT(x, 1.0);
      sum += x;
      ++n;
    }
  }
  EXPECT_NEAR(sum / static_cast<double>(n), 0.5, 0.02);
}

TEST(GroundTruth, SgRowsAreDistributionsAndTrialsDiffer) {
  const ExperimentConfig c = small_sg();
  const auto g0 = std::get<StochasticGame>(trial_ground_truth(c, 0));
  const auto g1 = std::get<StochasticGame>(trial_ground_truth(c, 1));
  EXPECT_EQ(g0.gamma(), c.gamma);
  for (std::size_t s = 0; s < g0.n_states(); ++s) {
    for (std::size_t a1 = 0; a1 < g0.n_a1(); ++a1) {
      for (std::size_t a2 = 0; a2 < g0.n_a2(); ++a2) {
        double total = 0.0;
        for (double p : g0.transition(s, a1, a2)) total += p;
        EXPECT_NEAR(total, 1.0, 1e-12);
      }
    }
  }
  EXPECT_NE(to_json(g0), to_json(g1));
  EXPECT_EQ(to_json(g0), to_json(std::get<StochasticGame>(trial_ground_truth(c, 0))));
}

TEST(GroundTruth, FixedGameIsSharedAcrossTrials) {
  ExperimentConfig c = small_nfg();
  c.fixed_game = true;
  EXPECT_EQ(std::get<PayoffMatrix>(trial_ground_truth(c, 0)).data()[0],
            std::get<PayoffMatrix>(trial_ground_truth(c, 7)).data()[0]);
}

TEST(Checkpoints, GeometricSchedule) {
  ExperimentConfig c;
  c.episodes = 1000;
  const auto e = checkpoint_episodes(c);
  std::set<std::size_t> want;
  for (int i = 0; i < 20; ++i) {
    want.insert(static_cast<std::size_t>(std::llround(std::pow(1000.0, i / 19.0))));
  }
  EXPECT_EQ(e, std::vector<std::size_t>(want.begin(), want.end()));
  EXPECT_EQ(e.front(), 1u);
  EXPECT_EQ(e.back(), 1000u);
  c.episodes = 0;
  EXPECT_EQ(checkpoint_episodes(c), std::vector<std::size_t>{0});
}

TEST(Checkpoints, EveryAndExplicit) {
  ExperimentConfig c;
  c.episodes = 5;
  c.schedule = CheckpointSchedule::kEvery;
  EXPECT_EQ(checkpoint_episodes(c), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  c.schedule = CheckpointSchedule::kExplicit;
  c.checkpoints = {5, 0, 2, 2};
  EXPECT_EQ(checkpoint_episodes(c), (std::vector<std::size_t>{0, 2, 5}));
  c.checkpoints = {6};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig c = small_sg();
  c.schedule = CheckpointSchedule::kExplicit;
  c.checkpoints = {1, 6};
  c.sg_solver = SgSolverKind::kShapley;
  c.fixed_game = true;
  const nlohmann::json j = to_json(c);
  EXPECT_EQ(to_json(experiment_config_from_json(j)), j);
  ExperimentConfig d = small_nfg();
  EXPECT_EQ(to_json(experiment_config_from_json(to_json(d))), to_json(d));
}

TEST(Config, RejectsBadInput) {
  nlohmann::json j = to_json(small_nfg());
  j["unknown_key"] = 1;
  EXPECT_THROW(experiment_config_from_json(j), std::invalid_argument);
  ExperimentConfig c = small_nfg();
  c.strategies.push_back(StrategyKind::parse("thompson"));
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_sg();
  c.gamma = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_nfg();
  c.belief_samples = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Aggregate, Examples) {
  const auto one = aggregate({{10, "thompson", 0, 0.05}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].mean, 0.05);
  EXPECT_EQ(one[0].std, 0.0);
  EXPECT_EQ(one[0].trials, 1u);

  const auto two = aggregate({{10, "ucb1", 0, 0.2}, {10, "ucb1", 1, 0.4}});
  ASSERT_EQ(two.size(), 1u);
  EXPECT_NEAR(two[0].mean, 0.3, 1e-15);
  EXPECT_NEAR(two[0].std, 0.1414213562373095, 1e-12);
  EXPECT_THROW(aggregate({}), std::invalid_argument);
}

TEST(Aggregate, PermutationInvariantAndOrdered) {
  std::vector<RawRow> rows;
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const char* s : {"b", "a"}) {
    for (std::size_t t = 0; t < 7; ++t) {
      for (std::size_t e : {20, 10}) rows.push_back({e, s, t, unit(gen)});
    }
  }
  const auto base = aggregate(rows);
  ASSERT_EQ(base.size(), 4u);
  EXPECT_EQ(base[0].strategy, "b");
  EXPECT_EQ(base[0].episode, 10u);
  EXPECT_EQ(base[1].episode, 20u);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(rows.begin(), rows.end(), gen);
    const auto again = aggregate(rows);
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (again[k].strategy != base[k].strategy) continue;  // first-appearance order
      EXPECT_EQ(again[k].mean, base[k].mean);
      EXPECT_EQ(again[k].std, base[k].std);
    }
  }
}

TEST(Csv, RawRoundTripAndEmptyOutput) {
  const std::vector<RawRow> rows{{0, "thompson", 0, 0.1}, {5, "eps-greedy:0.1", 3, 1.0 / 3.0}};
  const auto back = parse_raw_csv(raw_csv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].episode, rows[i].episode);
    EXPECT_EQ(back[i].strategy, rows[i].strategy);
    EXPECT_EQ(back[i].trial, rows[i].trial);
    EXPECT_NEAR(back[i].regret, rows[i].regret, 1e-12);
  }
  EXPECT_EQ(raw_csv({}), "episode,strategy,trial,regret\n");
  EXPECT_EQ(aggregate_csv({}), "episode,strategy,mean,std\n");
  EXPECT_THROW(parse_raw_csv("a,b\n"), std::invalid_argument);
}

TEST(Experiment, EmptyStrategyListWritesHeaders) {
  ExperimentConfig c = small_nfg();
  c.strategies.clear();
  const auto result = run_experiment(c);
  EXPECT_TRUE(result.raw.empty());
  const auto dir = std::filesystem::temp_directory_path() / "zsx_test_empty";
  std::filesystem::remove_all(dir);
  emit_results(result, c, dir);
  EXPECT_EQ(read_text(dir / "raw.csv"), "episode,strategy,trial,regret\n");
  EXPECT_EQ(read_text(dir / "aggregate.csv"), "episode,strategy,mean,std\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
  std::filesystem::remove_all(dir);
}

TEST(Experiment, DeterministicAcrossWorkerCounts) {
  const ExperimentConfig c = small_nfg(20, 3);
  RunOptions one;
  RunOptions three;
  three.jobs = 3;
  EXPECT_EQ(raw_csv(run_experiment(c, one).raw), raw_csv(run_experiment(c, three).raw));
  const ExperimentConfig s = small_sg(3);
  EXPECT_EQ(raw_csv(run_experiment(s, one).raw), raw_csv(run_experiment(s, three).raw));
}

TEST(Experiment, ManifestReplaysTheConfig) {
  ExperimentConfig c = small_nfg(12, 2);
  c.strategies.resize(2);
  const auto dir = std::filesystem::temp_directory_path() / "zsx_test_manifest";
  std::filesystem::remove_all(dir);
  emit_results(run_experiment(c), c, dir);
  const ExperimentConfig back = config_from_manifest(dir / "manifest.json");
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(raw_csv(run_experiment(back).raw), read_text(dir / "raw.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Scoring, ZeroEpisodesScoresThePrior) {
  ExperimentConfig c = small_nfg(0, 1);
  const auto truth = std::get<PayoffMatrix>(trial_ground_truth(c, 0));
  double first = -1.0;
  for (const auto& s : c.strategies) {
    const TrialCurve curve = run_nfg_trial(c, s, truth, 0);
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_EQ(curve[0].episode, 0u);
    EXPECT_GE(curve[0].regret, -1e-9);
    if (first < 0.0) first = curve[0].regret;
    EXPECT_EQ(curve[0].regret, first) << s.to_string();
  }
}

TEST(Scoring, CheckpointsDoNotPerturbExploration) {
  // Recommendations draw from their own stream, so adding checkpoints leaves
  // the regret at the final episode unchanged.
  ExperimentConfig sparse = small_nfg(25, 1);
  sparse.schedule = CheckpointSchedule::kExplicit;
  sparse.checkpoints = {25};
  ExperimentConfig dense = sparse;
  dense.schedule = CheckpointSchedule::kEvery;
  const auto truth = std::get<PayoffMatrix>(trial_ground_truth(sparse, 0));
  for (const auto& s : sparse.strategies) {
    const TrialCurve a = run_nfg_trial(sparse, s, truth, 0);
    const TrialCurve b = run_nfg_trial(dense, s, truth, 0);
    EXPECT_EQ(a.back().regret, b.back().regret) << s.to_string();
  }
  ExperimentConfig sg_sparse = small_sg(4);
  sg_sparse.schedule = CheckpointSchedule::kExplicit;
  sg_sparse.checkpoints = {4};
  ExperimentConfig sg_dense = sg_sparse;
  sg_dense.schedule = CheckpointSchedule::kEvery;
  const auto game = std::get<StochasticGame>(trial_ground_truth(sg_sparse, 0));
  for (const char* name : {"thompson", "random"}) {
    const auto s = StrategyKind::parse(name);
    EXPECT_EQ(run_sg_trial(sg_sparse, s, game, 0).back().regret,
              run_sg_trial(sg_dense, s, game, 0).back().regret);
  }
}

TEST(Scoring, RegretIsNonnegative) {
  const ExperimentConfig c = small_sg(5);
  for (const auto& row : run_experiment(c).raw) EXPECT_GE(row.regret, -1e-6);
}

TEST(SgTrial, TransitionLogIsConsistentWithTheTruth) {
  ExperimentConfig c = small_sg(4);
  c.n_states = 2;
  // Deterministic rewards: always 1 in state 0 and never in state 1.
  std::vector<double> rewards(2 * 3 * 2);
  std::fill(rewards.begin(), rewards.begin() + 6, 1.0);
  std::vector<double> transitions;
  for (std::size_t cell = 0; cell < 12; ++cell) {
    transitions.push_back(cell % 2 == 0 ? 1.0 : 0.0);
    transitions.push_back(cell % 2 == 0 ? 0.0 : 1.0);
  }
  const StochasticGame truth(2, 3, 2, c.gamma, rewards, transitions);
  for (const auto& s : c.strategies) {
    std::vector<Transition> log;
    run_sg_trial(c, s, truth, 0, [&](const Transition& t) { log.push_back(t); });
    ASSERT_EQ(log.size(), c.episodes * c.steps_per_episode) << s.to_string();
    for (std::size_t i = 0; i < log.size(); ++i) {
      const Transition& t = log[i];
      EXPECT_EQ(t.reward, t.state == 0 ? 1 : 0);
      EXPECT_EQ(t.next_state, t.profile.a2 == 0 ? 0u : 1u);
      if ((i + 1) % c.steps_per_episode != 0) {
        EXPECT_EQ(log[i + 1].state, t.next_state);
      }
    }
  }
}

TEST(SgTrial, MinCountBalancesVisitsWithinEachState) {
  ExperimentConfig c = small_sg(20);
  c.n_states = 1;
  const StochasticGame truth(1, 3, 2, c.gamma, std::vector<double>(6, 0.5),
                             std::vector<double>(6, 1.0));
  std::vector<int> visits(6, 0);
  run_sg_trial(c, StrategyKind::parse("min-count"), truth, 0, [&](const Transition& t) {
    ++visits[t.profile.a1 * 2 + t.profile.a2];
  });
  const auto [lo, hi] = std::minmax_element(visits.begin(), visits.end());
  // Counts are frozen within an episode, so the spread is bounded by one
  // episode's worth of steps.
  EXPECT_LE(*hi - *lo, static_cast<int>(c.steps_per_episode));
  EXPECT_GT(*lo, 0);
}

TEST(Recommend, PointMassBeliefsAreNearlyOptimal) {
  const PayoffMatrix u{{0.5, 0.7}, {0.3, 0.9}, {0.2, 0.4}};
  Rng rng(5);
  const MixedStrategy s = recommend_nfg(concentrated_nfg(u, 1e10), 20, rng);
  EXPECT_LT(simple_regret(u, s), 1e-4);

  ExperimentConfig c = small_sg();
  c.gamma = 0.5;
  const auto truth = std::get<StochasticGame>(trial_ground_truth(c, 0));
  const Policy pi1 = recommend_sg(concentrated_sg(truth, 1e10), 8, c.gamma, rng);
  EXPECT_LT(sg_regret(truth, pi1), 1e-4);
  EXPECT_THROW(recommend_nfg(concentrated_nfg(u, 1e10), 0, rng), std::invalid_argument);
}

TEST(Learning, RegretShrinksWithMoreEpisodes) {
  ExperimentConfig c = small_nfg(200, 60);
  c.n_a1 = 2;
  c.n_a2 = 2;
  c.belief_samples = 20;
  c.schedule = CheckpointSchedule::kExplicit;
  c.checkpoints = {20, 200};
  c.strategies = {StrategyKind::parse("thompson"), StrategyKind::parse("min-count")};
  for (const auto& row : aggregate(run_experiment(c).raw)) {
    static double early = 0.0;
    if (row.episode == 20) {
      early = row.mean;
    } else {
      EXPECT_LE(row.mean, early) << row.strategy;
    }
  }
}

}  // namespace
}  // namespace zsx

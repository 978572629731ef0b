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

// Pure-exploration experiments. A trial draws a ground-truth game from the
// Jeffreys prior, lets one strategy explore it for T episodes, and scores the
// recommended strategy at checkpoint episodes by its exploitability.
//
// Random streams are addressed by (master seed, purpose, trial, ...), so
// every output byte is a function of the configuration alone:
//   * the ground truth depends on the trial (or on nothing in fixed-game
//     mode) and is shared by all strategies;
//   * environment noise is counter-based, keyed on (cell, visit number), so
//     two strategies that sample the same cell equally often see the same
//     outcomes;
//   * the recommendation at a checkpoint uses a stream keyed on (trial,
//     episode), making its regret a function of the belief and the truth.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "zsx/beliefs.hpp"
#include "zsx/explore.hpp"
#include "zsx/game.hpp"
#include "zsx/rng.hpp"

namespace zsx {

enum class GameMode { kNfg, kSg };
enum class SgSolverKind { kHoffmanKarp, kShapley };
enum class CheckpointSchedule { kGeometric, kEvery, kExplicit };

struct ExperimentConfig {
  GameMode mode = GameMode::kNfg;
  std::size_t n_a1 = 10;
  std::size_t n_a2 = 2;
  std::size_t n_states = 1;        // sg only
  double gamma = 0.0;              // sg only
  std::size_t steps_per_episode = 100;  // sg only
  std::size_t episodes = 1000;
  std::size_t trials = 1;
  std::size_t belief_samples = 100;    // K
  std::size_t strategy_samples = 100;  // candidates per player
  std::vector<StrategyKind> strategies;
  CheckpointSchedule schedule = CheckpointSchedule::kGeometric;
  std::vector<std::size_t> checkpoints;  // kExplicit only
  std::size_t geometric_points = 20;
  std::uint64_t seed = 0;
  bool fixed_game = false;
  SgSolverKind sg_solver = SgSolverKind::kHoffmanKarp;
  std::string output = "results";

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
// Missing keys keep their defaults; unknown keys are an error.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

// Sorted, distinct checkpoint episodes in [0, T]. The geometric schedule is
// round(T^(i / (points - 1))) for i = 0..points-1, always including T; T = 0
// yields {0}.
std::vector<std::size_t> checkpoint_episodes(const ExperimentConfig& config);

using GroundTruth = std::variant<PayoffMatrix, StochasticGame>;

// Cells from Beta(1/2, 1/2); in sg mode transitions from Dirichlet(1/2, ...).
GroundTruth generate_ground_truth(const ExperimentConfig& config, Rng& rng);
// The ground truth of a trial as run_experiment uses it.
GroundTruth trial_ground_truth(const ExperimentConfig& config, std::size_t trial);

struct CurvePoint {
  std::size_t episode = 0;
  double regret = 0.0;
};
using TrialCurve = std::vector<CurvePoint>;

// Observer for every belief update a trial applies (audit hooks in tests).
using TransitionLog = std::function<void(const Transition&)>;

TrialCurve run_nfg_trial(const ExperimentConfig& config, const StrategyKind& strategy,
                         const PayoffMatrix& truth, std::size_t trial);
TrialCurve run_sg_trial(const ExperimentConfig& config, const StrategyKind& strategy,
                        const StochasticGame& truth, std::size_t trial,
                        const TransitionLog& log = {});

// Maxmeanmin strategy over k fresh posterior samples.
MixedStrategy recommend_nfg(const NfgBelief& belief, std::size_t k, Rng& rng);
// Per state, the maxmeanmin strategy over the state-s Q matrices of k sampled
// and solved games.
Policy recommend_sg(const SgBelief& belief, std::size_t k, double gamma, Rng& rng,
                    SgSolverKind solver = SgSolverKind::kHoffmanKarp);

struct RawRow {
  std::size_t episode = 0;
  std::string strategy;
  std::size_t trial = 0;
  double regret = 0.0;
};

struct AggregateRow {
  std::size_t episode = 0;
  std::string strategy;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single trial
  std::size_t trials = 0;
};

// Groups by (strategy, episode); strategies keep first-appearance order,
// episodes ascend. Values are summed in sorted order so the result does not
// depend on row order. Throws std::invalid_argument on empty input.
std::vector<AggregateRow> aggregate(const std::vector<RawRow>& rows);

struct ExperimentResult {
  std::vector<RawRow> raw;
  std::vector<AggregateRow> summary;
};

struct RunOptions {
  std::size_t jobs = 1;
  // Called after each (strategy, trial) task completes, from worker threads
  // but never concurrently.
  std::function<void(std::size_t done, std::size_t total)> progress;
};

// Runs every (strategy, trial) pair; rows are ordered by strategy (config
// order), trial, then episode regardless of `jobs`.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const RunOptions& options = {});

// Writes raw.csv, aggregate.csv and manifest.json into `dir` (created if
// needed). Throws std::runtime_error naming the path on I/O failure.
void emit_results(const ExperimentResult& result, const ExperimentConfig& config,
                  const std::filesystem::path& dir);

nlohmann::json manifest_json(const ExperimentConfig& config);
ExperimentConfig config_from_manifest(const std::filesystem::path& manifest);

std::string raw_csv(const std::vector<RawRow>& rows);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);
std::vector<RawRow> parse_raw_csv(const std::string& text);

}  // namespace zsx

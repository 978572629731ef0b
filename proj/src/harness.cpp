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

#include "zsx/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "zsx/nfg_solve.hpp"
#include "zsx/sg_solve.hpp"

namespace zsx {
namespace {

constexpr std::uint64_t kTruthTag = hash_tag("ground-truth");
constexpr std::uint64_t kEnvTag = hash_tag("environment");
constexpr std::uint64_t kExploreTag = hash_tag("explore");
constexpr std::uint64_t kRecommendTag = hash_tag("recommend");
constexpr std::uint64_t kInitialStateTag = hash_tag("initial-state");

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string mode_name(GameMode mode) { return mode == GameMode::kNfg ? "nfg" : "sg"; }

std::string solver_name(SgSolverKind kind) {
  return kind == SgSolverKind::kShapley ? "shapley" : "hoffman-karp";
}

SgSolution solve_game(const StochasticGame& game, double eps, std::span<const double> v0,
                      SgSolverKind solver) {
  return solver == SgSolverKind::kShapley ? shapley(game, eps, v0)
                                          : hoffman_karp(game, eps, v0);
}

Rng explore_rng(const ExperimentConfig& config, const StrategyKind& strategy,
                std::size_t trial) {
  return make_rng(config.seed, {kExploreTag, trial, hash_tag(strategy.to_string())});
}

Rng recommend_rng(const ExperimentConfig& config, std::size_t trial, std::size_t episode) {
  return make_rng(config.seed, {kRecommendTag, trial, episode});
}

std::uint64_t env_seed(const ExperimentConfig& config, std::size_t trial) {
  return derive_seed(config.seed, {kEnvTag, trial});
}

std::uint64_t truth_key(const ExperimentConfig& config, std::size_t trial) {
  return config.fixed_game ? 0 : trial;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void ExperimentConfig::validate() const {
  require(n_a1 >= 1 && n_a2 >= 1, "n_a1 and n_a2 must be at least 1");
  require(trials >= 1, "trials must be at least 1");
  require(belief_samples >= 1, "belief_samples must be at least 1");
  require(strategy_samples >= 1, "strategy_samples must be at least 1");
  if (mode == GameMode::kSg) {
    require(n_states >= 1, "n_states must be at least 1");
    require(steps_per_episode >= 1, "steps_per_episode must be at least 1");
    require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  }
  if (schedule == CheckpointSchedule::kExplicit) {
    require(!checkpoints.empty(), "explicit checkpoint list is empty");
    for (std::size_t c : checkpoints) {
      require(c <= episodes, "checkpoint " + std::to_string(c) + " exceeds episodes (" +
                                 std::to_string(episodes) + ")");
    }
  }
  if (schedule == CheckpointSchedule::kGeometric) {
    require(geometric_points >= 2, "geometric_points must be at least 2");
  }
  std::set<std::string> names;
  for (const auto& s : strategies) {
    require(names.insert(s.to_string()).second, "strategy listed twice: " + s.to_string());
  }
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json strategies = nlohmann::json::array();
  for (const auto& s : config.strategies) strategies.push_back(s.to_string());
  nlohmann::json checkpoints;
  switch (config.schedule) {
    case CheckpointSchedule::kGeometric:
      checkpoints = "geometric";
      break;
    case CheckpointSchedule::kEvery:
      checkpoints = "every";
      break;
    case CheckpointSchedule::kExplicit:
      checkpoints = config.checkpoints;
      break;
  }
  return {{"mode", mode_name(config.mode)},
          {"n_a1", config.n_a1},
          {"n_a2", config.n_a2},
          {"n_states", config.n_states},
          {"gamma", config.gamma},
          {"steps_per_episode", config.steps_per_episode},
          {"episodes", config.episodes},
          {"trials", config.trials},
          {"belief_samples", config.belief_samples},
          {"strategy_samples", config.strategy_samples},
          {"strategies", strategies},
          {"checkpoints", checkpoints},
          {"geometric_points", config.geometric_points},
          {"seed", config.seed},
          {"fixed_game", config.fixed_game},
          {"sg_solver", solver_name(config.sg_solver)},
          {"output", config.output}};
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  require(j.is_object(), "experiment config must be a JSON object");
  static const std::set<std::string> known = {
      "mode",     "n_a1",           "n_a2",        "n_states", "gamma",
      "steps_per_episode", "episodes", "trials",  "belief_samples",
      "strategy_samples", "strategies", "checkpoints", "geometric_points",
      "seed",     "fixed_game",     "sg_solver",   "output"};
  for (const auto& item : j.items()) {
    require(known.contains(item.key()), "unknown config key '" + item.key() + "'");
  }

  ExperimentConfig c;
  try {
    if (j.contains("mode")) {
      const auto mode = j.at("mode").get<std::string>();
      require(mode == "nfg" || mode == "sg", "mode must be 'nfg' or 'sg', got '" + mode + "'");
      c.mode = mode == "nfg" ? GameMode::kNfg : GameMode::kSg;
    }
    auto read = [&j](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    read("n_a1", c.n_a1);
    read("n_a2", c.n_a2);
    read("n_states", c.n_states);
    read("gamma", c.gamma);
    read("steps_per_episode", c.steps_per_episode);
    read("episodes", c.episodes);
    read("trials", c.trials);
    read("belief_samples", c.belief_samples);
    read("strategy_samples", c.strategy_samples);
    read("geometric_points", c.geometric_points);
    read("seed", c.seed);
    read("fixed_game", c.fixed_game);
    read("output", c.output);
    if (j.contains("strategies")) {
      for (const auto& s : j.at("strategies")) {
        c.strategies.push_back(StrategyKind::parse(s.get<std::string>()));
      }
    }
    if (j.contains("checkpoints")) {
      const auto& cp = j.at("checkpoints");
      if (cp.is_string()) {
        const auto name = cp.get<std::string>();
        require(name == "geometric" || name == "every",
                "checkpoints must be 'geometric', 'every' or a list of episodes");
        c.schedule = name == "every" ? CheckpointSchedule::kEvery
                                     : CheckpointSchedule::kGeometric;
      } else {
        c.schedule = CheckpointSchedule::kExplicit;
        c.checkpoints = cp.get<std::vector<std::size_t>>();
      }
    }
    if (j.contains("sg_solver")) {
      const auto name = j.at("sg_solver").get<std::string>();
      require(name == "hoffman-karp" || name == "shapley",
              "sg_solver must be 'hoffman-karp' or 'shapley'");
      c.sg_solver = name == "shapley" ? SgSolverKind::kShapley : SgSolverKind::kHoffmanKarp;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

std::vector<std::size_t> checkpoint_episodes(const ExperimentConfig& config) {
  const std::size_t t = config.episodes;
  std::set<std::size_t> out;
  switch (config.schedule) {
    case CheckpointSchedule::kExplicit:
      out.insert(config.checkpoints.begin(), config.checkpoints.end());
      break;
    case CheckpointSchedule::kEvery:
      for (std::size_t e = 1; e <= t; ++e) out.insert(e);
      break;
    case CheckpointSchedule::kGeometric: {
      if (t == 0) break;
      const double last = static_cast<double>(config.geometric_points - 1);
      for (std::size_t i = 0; i < config.geometric_points; ++i) {
        const double e = std::pow(static_cast<double>(t), static_cast<double>(i) / last);
        out.insert(std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(e)), 1, t));
      }
      break;
    }
  }
  if (config.schedule != CheckpointSchedule::kExplicit) out.insert(t);
  return {out.begin(), out.end()};
}

GroundTruth generate_ground_truth(const ExperimentConfig& config, Rng& rng) {
  if (config.mode == GameMode::kNfg) {
    return sample_nfg(jeffreys_nfg(config.n_a1, config.n_a2), rng);
  }
  return sample_sg(jeffreys_sg(config.n_states, config.n_a1, config.n_a2), config.gamma,
                   rng);
}

GroundTruth trial_ground_truth(const ExperimentConfig& config, std::size_t trial) {
  Rng rng = make_rng(config.seed, {kTruthTag, truth_key(config, trial)});
  return generate_ground_truth(config, rng);
}

MixedStrategy recommend_nfg(const NfgBelief& belief, std::size_t k, Rng& rng) {
  require(k >= 1, "recommend_nfg needs at least one sample");
  std::vector<PayoffMatrix> samples;
  samples.reserve(k);
  for (std::size_t i = 0; i < k; ++i) samples.push_back(sample_nfg(belief, rng));
  return solve_maxmeanmin(samples).strategy;
}

Policy recommend_sg(const SgBelief& belief, std::size_t k, double gamma, Rng& rng,
                    SgSolverKind solver) {
  require(k >= 1, "recommend_sg needs at least one sample");
  std::vector<std::vector<PayoffMatrix>> slices(belief.n_states());
  for (std::size_t i = 0; i < k; ++i) {
    SgSolution sol = solve_game(sample_sg(belief, gamma, rng), kBeliefSampleEps, {}, solver);
    for (std::size_t s = 0; s < belief.n_states(); ++s) slices[s].push_back(std::move(sol.q[s]));
  }
  Policy out;
  out.reserve(belief.n_states());
  for (const auto& q : slices) out.push_back(solve_maxmeanmin(q).strategy);
  return out;
}

TrialCurve run_nfg_trial(const ExperimentConfig& config, const StrategyKind& strategy,
                         const PayoffMatrix& truth, std::size_t trial) {
  require(truth.rows() == config.n_a1 && truth.cols() == config.n_a2,
          "ground truth shape does not match the config");
  const auto checkpoints = checkpoint_episodes(config);
  const std::uint64_t env = env_seed(config, trial);
  Rng rng = explore_rng(config, strategy, trial);
  NfgBelief belief = jeffreys_nfg(config.n_a1, config.n_a2);
  const double value = solve_nfg(truth).value;

  TrialCurve curve;
  std::size_t next_checkpoint = 0;
  std::vector<PayoffMatrix> ensemble;
  for (std::size_t episode = 0;; ++episode) {
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == episode) {
      Rng rec = recommend_rng(config, trial, episode);
      const MixedStrategy s1 = recommend_nfg(belief, config.belief_samples, rec);
      curve.push_back({episode, value - best_response_value(truth, s1).value});
      ++next_checkpoint;
    }
    if (episode == config.episodes) break;

    StrategyType type = strategy.type;
    if (type == StrategyType::kEpsGreedy) {
      type = std::bernoulli_distribution(strategy.epsilon)(rng) ? StrategyType::kRandom
                                                                 : StrategyType::kGreedy;
    }
    ensemble.clear();
    if (type == StrategyType::kThompson) {
      ensemble.push_back(sample_nfg(belief, rng));
    } else if (type == StrategyType::kGreedy || type == StrategyType::kBayesUcb) {
      for (std::size_t k = 0; k < config.belief_samples; ++k) {
        ensemble.push_back(sample_nfg(belief, rng));
      }
    }
    const PayoffMatrix mean =
        type == StrategyType::kUcb1 ? mean_nfg(belief) : PayoffMatrix();

    ExplorationContext ctx;
    ctx.n_a1 = config.n_a1;
    ctx.n_a2 = config.n_a2;
    ctx.counts = belief.counts();
    ctx.total = belief.total_count();
    ctx.mean = &mean;
    ctx.ensemble = ensemble;
    ctx.n_strategy_samples = config.strategy_samples;
    const ActionProfile a = pick(StrategyKind{type, strategy.epsilon}, ctx, rng);

    const double u = counter_uniform(env, {a.a1 * config.n_a2 + a.a2, belief.count(a.a1, a.a2)});
    belief.update(a, u < truth(a.a1, a.a2) ? 1 : 0);
  }
  return curve;
}

TrialCurve run_sg_trial(const ExperimentConfig& config, const StrategyKind& strategy,
                        const StochasticGame& truth, std::size_t trial,
                        const TransitionLog& log) {
  require(truth.n_states() == config.n_states && truth.n_a1() == config.n_a1 &&
              truth.n_a2() == config.n_a2,
          "ground truth shape does not match the config");
  const auto checkpoints = checkpoint_episodes(config);
  const std::uint64_t env = env_seed(config, trial);
  Rng rng = explore_rng(config, strategy, trial);
  SgBelief belief = jeffreys_sg(config.n_states, config.n_a1, config.n_a2);
  const std::size_t n_states = config.n_states;
  const double gamma = config.gamma;
  const double optimal =
      optimal_minpay(solve_game(truth, kGroundTruthEps, {}, config.sg_solver));
  // Payoffs of the Q matrices span [0, 1/(1-gamma)], so the UCB1 bonus is
  // scaled to that range.
  const double bonus_scale = 1.0 / (1.0 - gamma);

  std::vector<ValueFunction> warm(config.belief_samples);
  std::vector<std::uint64_t> episode_visits(n_states * config.n_a1 * config.n_a2, 0);
  std::vector<Transition> pending;
  pending.reserve(config.steps_per_episode);

  auto state_context = [&](std::size_t s) {
    ExplorationContext ctx;
    ctx.n_a1 = config.n_a1;
    ctx.n_a2 = config.n_a2;
    ctx.counts = belief.state_counts(s);
    ctx.total = belief.state_total(s);
    ctx.n_strategy_samples = config.strategy_samples;
    ctx.bonus_scale = bonus_scale;
    return ctx;
  };

  TrialCurve curve;
  std::size_t next_checkpoint = 0;
  for (std::size_t episode = 0;; ++episode) {
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == episode) {
      Rng rec = recommend_rng(config, trial, episode);
      const Policy pi1 =
          recommend_sg(belief, config.belief_samples, gamma, rec, config.sg_solver);
      curve.push_back({episode, sg_regret(truth, pi1, optimal)});
      ++next_checkpoint;
    }
    if (episode == config.episodes) break;

    // Ensemble strategies fix one stationary pair per state for the whole
    // episode; eps-greedy follows the greedy pairs and flips its coin per step.
    const bool eps_greedy = strategy.type == StrategyType::kEpsGreedy;
    const StrategyType type = eps_greedy ? StrategyType::kGreedy : strategy.type;
    std::vector<StrategyPair> pairs;
    if (type == StrategyType::kThompson) {
      SgSolution sol = solve_game(sample_sg(belief, gamma, rng), kBeliefSampleEps, warm[0],
                                  config.sg_solver);
      for (std::size_t s = 0; s < n_states; ++s) {
        pairs.push_back({std::move(sol.pi1[s]), std::move(sol.pi2[s])});
      }
      warm[0] = std::move(sol.v);
    } else if (type == StrategyType::kGreedy || type == StrategyType::kUcb1 ||
               type == StrategyType::kBayesUcb) {
      std::vector<std::vector<PayoffMatrix>> slices(n_states);
      for (std::size_t k = 0; k < config.belief_samples; ++k) {
        SgSolution sol = solve_game(sample_sg(belief, gamma, rng), kBeliefSampleEps,
                                    warm[k], config.sg_solver);
        for (std::size_t s = 0; s < n_states; ++s) slices[s].push_back(std::move(sol.q[s]));
        warm[k] = std::move(sol.v);
      }
      for (std::size_t s = 0; s < n_states; ++s) {
        ExplorationContext ctx = state_context(s);
        ctx.ensemble = slices[s];
        if (type == StrategyType::kGreedy) {
          pairs.push_back(greedy_pair(slices[s]));
        } else if (type == StrategyType::kBayesUcb) {
          pairs.push_back(bayes_ucb_pair(ctx, rng));
        } else {
          PayoffMatrix mean(config.n_a1, config.n_a2, 0.0);
          for (const auto& q : slices[s]) {
            for (std::size_t a1 = 0; a1 < config.n_a1; ++a1) {
              for (std::size_t a2 = 0; a2 < config.n_a2; ++a2) mean(a1, a2) += q(a1, a2);
            }
          }
          const double inv = 1.0 / static_cast<double>(slices[s].size());
          for (std::size_t a1 = 0; a1 < config.n_a1; ++a1) {
            for (std::size_t a2 = 0; a2 < config.n_a2; ++a2) mean(a1, a2) *= inv;
          }
          ctx.mean = &mean;
          pairs.push_back(ucb1_pair(ctx, rng));
        }
      }
    }

    const double u0 = counter_uniform(env, {kInitialStateTag, episode});
    std::size_t s = std::min(n_states - 1,
                             static_cast<std::size_t>(u0 * static_cast<double>(n_states)));
    pending.clear();
    std::fill(episode_visits.begin(), episode_visits.end(), 0);
    for (std::size_t step = 0; step < config.steps_per_episode; ++step) {
      ActionProfile a;
      if (eps_greedy && std::bernoulli_distribution(strategy.epsilon)(rng)) {
        a = pick_random(state_context(s), rng);
      } else if (!pairs.empty()) {
        a = sample_profile(pairs[s], rng);
      } else {
        a = type == StrategyType::kRandom ? pick_random(state_context(s), rng)
                                          : pick_min_count(state_context(s), rng);
      }
      const std::size_t c = belief.cell(s, a.a1, a.a2);
      const std::uint64_t visit = belief.count(s, a.a1, a.a2) + episode_visits[c]++;
      const int reward = counter_uniform(env, {c, visit, 0}) < truth.reward(s, a.a1, a.a2);
      const std::size_t next =
          sample_index(truth.transition(s, a.a1, a.a2), counter_uniform(env, {c, visit, 1}));
      pending.push_back({s, a, reward, next});
      s = next;
    }
    for (const auto& t : pending) {
      belief.update(t);
      if (log) log(t);
    }
  }
  return curve;
}

std::vector<AggregateRow> aggregate(const std::vector<RawRow>& rows) {
  require(!rows.empty(), "aggregate: no rows");
  std::vector<std::string> order;
  std::map<std::string, std::map<std::size_t, std::vector<double>>> groups;
  for (const auto& r : rows) {
    if (!groups.contains(r.strategy)) order.push_back(r.strategy);
    groups[r.strategy][r.episode].push_back(r.regret);
  }
  std::vector<AggregateRow> out;
  for (const auto& name : order) {
    for (auto& [episode, values] : groups[name]) {
      std::sort(values.begin(), values.end());
      const auto n = static_cast<double>(values.size());
      double sum = 0.0;
      for (double v : values) sum += v;
      const double mean = sum / n;
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      out.push_back({episode, name, mean, sd, values.size()});
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const std::size_t n_strategies = config.strategies.size();
  const std::size_t n_tasks = n_strategies * config.trials;

  std::vector<GroundTruth> truths;
  truths.reserve(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) {
    truths.push_back(trial_ground_truth(config, t));
  }

  std::vector<TrialCurve> curves(n_tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::exception_ptr error;
  std::size_t done = 0;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      const StrategyKind& strategy = config.strategies[i / config.trials];
      const std::size_t trial = i % config.trials;
      try {
        if (config.mode == GameMode::kNfg) {
          curves[i] = run_nfg_trial(config, strategy, std::get<PayoffMatrix>(truths[trial]),
                                    trial);
        } else {
          curves[i] = run_sg_trial(config, strategy,
                                   std::get<StochasticGame>(truths[trial]), trial);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        if (!error) {
          error = std::make_exception_ptr(std::runtime_error(
              "strategy " + strategy.to_string() + ", trial " + std::to_string(trial) +
              ": " + e.what()));
        }
        failed = true;
        return;
      }
      std::lock_guard lock(mu);
      ++done;
      if (options.progress) options.progress(done, n_tasks);
    }
  };

  std::size_t jobs = options.jobs == 0 ? std::thread::hardware_concurrency() : options.jobs;
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n_tasks, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result;
  for (std::size_t i = 0; i < n_tasks; ++i) {
    const std::string name = config.strategies[i / config.trials].to_string();
    for (const auto& point : curves[i]) {
      result.raw.push_back({point.episode, name, i % config.trials, point.regret});
    }
  }
  if (!result.raw.empty()) result.summary = aggregate(result.raw);
  return result;
}

std::string raw_csv(const std::vector<RawRow>& rows) {
  std::string out = "episode,strategy,trial,regret\n";
  for (const auto& r : rows) {
    out += std::to_string(r.episode) + ',' + r.strategy + ',' + std::to_string(r.trial) +
           ',' + format_double(r.regret) + '\n';
  }
  return out;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::string out = "episode,strategy,mean,std\n";
  for (const auto& r : rows) {
    out += std::to_string(r.episode) + ',' + r.strategy + ',' + format_double(r.mean) +
           ',' + format_double(r.std) + '\n';
  }
  return out;
}

std::vector<RawRow> parse_raw_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "episode,strategy,trial,regret") {
    throw std::invalid_argument("raw CSV has an unexpected header");
  }
  std::vector<RawRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (fields.size() != 4) throw std::invalid_argument("malformed raw CSV row: " + line);
    rows.push_back({std::stoul(fields[0]), fields[1], std::stoul(fields[2]),
                    std::stod(fields[3])});
  }
  return rows;
}

nlohmann::json manifest_json(const ExperimentConfig& config) {
  nlohmann::json trials = nlohmann::json::array();
  for (std::size_t t = 0; t < config.trials; ++t) {
    trials.push_back({{"trial", t},
                      {"ground_truth_seed", derive_seed(config.seed, {kTruthTag, truth_key(config, t)})},
                      {"environment_seed", env_seed(config, t)}});
  }
  return {{"format", "zsexplore-manifest"},
          {"version", 1},
          {"config", to_json(config)},
          {"checkpoint_episodes", checkpoint_episodes(config)},
          {"seeds", {{"master", config.seed}, {"trials", trials}}}};
}

ExperimentConfig config_from_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw std::runtime_error("cannot open manifest " + manifest.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("manifest " + manifest.string() + " is not valid JSON: " +
                             e.what());
  }
  if (!j.contains("config") || j.value("format", "") != "zsexplore-manifest") {
    throw std::runtime_error(manifest.string() + " is not an experiment manifest");
  }
  return experiment_config_from_json(j.at("config"));
}

void emit_results(const ExperimentResult& result, const ExperimentConfig& config,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "raw.csv", raw_csv(result.raw));
  write_file(dir / "aggregate.csv", aggregate_csv(result.summary));
  write_file(dir / "manifest.json", manifest_json(config).dump(2) + "\n");
}

}  // namespace zsx

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

// Command-line front end:
//   explore run --config <file> [overrides]
//   explore solve-nfg <game.json>
//   explore solve-sg <game.json> --method shapley|hoffman-karp --eps <tol>
//   explore replay --manifest <file> [--out <dir>] [--jobs <n>]

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zsx/game.hpp"
#include "zsx/harness.hpp"
#include "zsx/nfg_solve.hpp"
#include "zsx/sg_solve.hpp"

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<zsx::StrategyKind> parse_strategy_list(const std::string& text) {
  std::vector<zsx::StrategyKind> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(zsx::StrategyKind::parse(item));
  }
  return out;
}

void run_and_emit(const zsx::ExperimentConfig& config, const std::filesystem::path& out,
                  std::size_t jobs, bool quiet) {
  zsx::RunOptions options;
  options.jobs = jobs;
  const auto start = std::chrono::steady_clock::now();
  if (!quiet) {
    options.progress = [start](std::size_t done, std::size_t total) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::fprintf(stderr, "\r[%zu/%zu] %.1fs", done, total, secs);
      if (done == total) std::fputc('\n', stderr);
    };
  }
  const zsx::ExperimentResult result = zsx::run_experiment(config, options);
  zsx::emit_results(result, config, out);
  if (!quiet) std::fprintf(stderr, "wrote %s\n", out.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pure-exploration benchmark for two-player zero-sum games"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::size_t> episodes;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategies;
  std::optional<std::string> out_dir;
  std::size_t jobs = 1;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run an exploration experiment from a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--episodes", episodes, "Override the episode budget T");
  run->add_option("--trials", trials, "Override the number of trials");
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--strategies", strategies,
                  "Comma-separated strategies, e.g. thompson,bayes-ucb,eps-greedy:0.1");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  run->add_flag("--quiet", quiet, "Suppress progress output");

  std::string game_path;
  auto* solve_nfg_cmd = app.add_subcommand("solve-nfg", "Solve a matrix game");
  solve_nfg_cmd->add_option("game", game_path, "Game JSON (1 state)")->required();

  std::string method = "hoffman-karp";
  double eps = zsx::kGroundTruthEps;
  auto* solve_sg_cmd = app.add_subcommand("solve-sg", "Solve a stochastic game");
  solve_sg_cmd->add_option("game", game_path, "Game JSON")->required();
  solve_sg_cmd->add_option("--method", method, "shapley or hoffman-karp")
      ->check(CLI::IsMember({"shapley", "hoffman-karp"}));
  solve_sg_cmd->add_option("--eps", eps, "Value accuracy")->check(CLI::PositiveNumber);

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run an experiment from its manifest");
  replay->add_option("--manifest", manifest_path, "manifest.json of a previous run")
      ->required();
  replay->add_option("--out", out_dir, "Output directory (default: <manifest dir>/replay)");
  replay->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  replay->add_flag("--quiet", quiet, "Suppress progress output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      zsx::ExperimentConfig config = zsx::experiment_config_from_json(read_json(config_path));
      if (episodes) config.episodes = *episodes;
      if (trials) config.trials = *trials;
      if (seed) config.seed = *seed;
      if (strategies) config.strategies = parse_strategy_list(*strategies);
      if (out_dir) config.output = *out_dir;
      config.validate();
      run_and_emit(config, config.output, jobs, quiet);
    } else if (solve_nfg_cmd->parsed()) {
      const zsx::StochasticGame game = zsx::stochastic_game_from_json(read_json(game_path));
      if (game.n_states() != 1) {
        throw std::invalid_argument("solve-nfg expects a 1-state game; use solve-sg");
      }
      std::cout << zsx::to_json(zsx::solve_nfg(game.reward_matrix(0))).dump(2) << '\n';
    } else if (solve_sg_cmd->parsed()) {
      const zsx::StochasticGame game = zsx::stochastic_game_from_json(read_json(game_path));
      const zsx::SgSolution sol =
          method == "shapley" ? zsx::shapley(game, eps) : zsx::hoffman_karp(game, eps);
      std::cout << zsx::to_json(sol).dump(2) << '\n';
    } else if (replay->parsed()) {
      const zsx::ExperimentConfig config = zsx::config_from_manifest(manifest_path);
      const std::filesystem::path out =
          out_dir ? std::filesystem::path(*out_dir)
                  : std::filesystem::path(manifest_path).parent_path() / "replay";
      run_and_emit(config, out, jobs, quiet);
    }
  } catch (const std::exception& e) {
    std::cerr << "explore: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

// Copyright 2026 The cfvfp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfvfp/errors.h"
#include "cfvfp/game.h"
#include "cfvfp/games.h"
#include "cfvfp/harness.h"
#include "cfvfp/metrics.h"
#include "cfvfp/solver.h"

namespace cfvfp {
namespace {

std::string FormatDouble(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

struct SolveOptions {
  std::string config_file;
  std::string game;
  std::vector<std::string> algos;
  std::string weight = "constant";
  int trials = 0;
  std::string budget;
  std::string cadence;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  int threads = 0;
  bool no_pruning = false;
  double threshold = 1e-20;
  bool checkpoints = false;
  std::string interval;
};

struct MatchOptions {
  std::string game;
  std::string profile_a;
  std::string profile_b;
  int players = 2;
  std::int64_t episodes = 1000;
  std::uint64_t seed = 0;
  std::string log_file;
};

int Solve(const SolveOptions& o, std::ostream& out) {
  ExperimentConfig config;
  if (!o.config_file.empty()) {
    std::ifstream f(o.config_file);
    if (!f) throw ConfigError("cannot read config " + o.config_file);
    config = ParseExperimentConfig(f);
  }
  if (!o.game.empty()) config.game = o.game;
  if (!o.algos.empty()) {
    config.solvers.clear();
    for (const auto& name : o.algos) {
      SolverSpec spec;
      spec.label = name;
      spec.algorithm = name;
      spec.weight = ParseWeightScheme(o.weight);
      spec.pruning = !o.no_pruning;
      spec.prune_threshold = o.threshold;
      config.solvers.push_back(spec);
    }
  }
  if (o.trials > 0) config.trials = o.trials;
  if (!o.budget.empty()) config.budget = ParseBudget(o.budget);
  if (!o.cadence.empty()) config.cadence = ParseCadence(o.cadence);
  if (o.seed_set) config.seed = o.seed;
  if (o.threads > 0) config.threads = o.threads;
  if (o.checkpoints) config.save_checkpoints = true;
  if (o.interval == "bootstrap") config.interval = IntervalMethod::kBootstrap;
  if (o.out_dir.empty()) throw ConfigError("--out is required");
  config.Validate();

  const auto records = RunExperiment(config);
  WriteExperimentOutputs(config, records, o.out_dir);
  const auto summary =
      Summarize(records, config.cadence.kind, config.interval, config.seed);
  for (const auto& solver : config.solvers) {
    const SummaryRow* last = nullptr;
    for (const auto& row : summary) {
      if (row.solver == solver.label) last = &row;
    }
    if (last == nullptr) continue;
    out << solver.label << " " << AxisKindName(last->x_kind) << "="
        << last->x << " exploitability=" << FormatDouble(last->mean)
        << " ci90=[" << FormatDouble(last->low) << ","
        << FormatDouble(last->high) << "]\n";
  }
  return kExitOk;
}

StrategyProfile LoadProfile(const std::string& path,
                            const std::string& canonical) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read profile " + path);
  LoadedCheckpoint loaded = LoadCheckpoint(f);
  if (loaded.game_selector != canonical) {
    throw ConfigError("profile " + path + " was trained on " +
                      loaded.game_selector + ", not " + canonical);
  }
  return loaded.state->AverageProfile();
}

int Match(const MatchOptions& o, std::ostream& out) {
  const GameSelection sel = ParseGameSelector(o.game);
  const StrategyProfile a = LoadProfile(o.profile_a, sel.canonical);
  const StrategyProfile b = LoadProfile(o.profile_b, sel.canonical);
  MatchConfig config;
  config.players = o.players;
  config.episodes = o.episodes;
  config.seed = o.seed;
  config.keep_log = !o.log_file.empty();
  const MatchResult r = RunMatch(*sel.game, a, b, config);
  out << "r1=" << FormatDouble(r.r1) << " se=" << FormatDouble(r.r1_se)
      << "\n";
  out << "r2=" << FormatDouble(r.r2) << " se=" << FormatDouble(r.r2_se)
      << "\n";
  if (config.keep_log) {
    std::ofstream f(o.log_file, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + o.log_file);
    f << "episode,competition,seat,payoff\n";
    for (std::size_t i = 0; i < r.log.size(); ++i) {
      f << i << ',' << r.log[i].competition << ',' << r.log[i].seat << ','
        << FormatDouble(r.log[i].payoff) << '\n';
    }
  }
  return kExitOk;
}

int Census(const std::string& game, std::ostream& out) {
  const GameSelection sel = ParseGameSelector(game);
  const TreeCensus c = EnumerateTree(*sel.game);
  out << "game " << sel.canonical << "\n";
  out << "infosets " << c.TotalInfosets() << "\n";
  out << "nodes " << c.nodes << "\n";
  out << "terminals " << c.terminals << "\n";
  out << "chance_nodes " << c.chance_nodes << "\n";
  for (std::size_t p = 0; p < c.infosets.size(); ++p) {
    out << "player " << p << " infosets " << c.infosets[p]
        << " decision_nodes " << c.decision_nodes[p] << "\n";
  }
  out << "max_depth " << c.max_depth << "\n";
  return kExitOk;
}

int PredictCensusCommand(int g, int h, std::ostream& out) {
  if (g < 2 || h < 1 || h > 40) {
    throw ConfigError("predict-census needs g >= 2 and 1 <= h <= 40");
  }
  const CensusPrediction c = PredictCensus(g, h);
  out << "g " << c.g << " h " << c.h << "\n";
  out << "red " << c.red << "\n";
  out << "blue " << c.blue << "\n";
  out << "yellow " << c.yellow << "\n";
  out << "pass " << c.pass << "\n";
  out << "layer " << c.layer << "\n";
  out << "all " << c.all << "\n";
  out << "method " << (c.closed_form ? "closed-form" : "recurrence") << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Counterfactual value fictitious play solvers"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run solver trials");
  solve_cmd->add_option("--config", solve.config_file, "Experiment config file");
  solve_cmd->add_option("--game", solve.game, "Game selector");
  solve_cmd->add_option("--algo", solve.algos, "Algorithm(s)")
      ->delimiter(',');
  solve_cmd->add_option("--weight", solve.weight,
                        "Averaging weight: constant, log, linear, quadratic");
  solve_cmd->add_option("--trials", solve.trials, "Trials per solver");
  solve_cmd->add_option("--budget", solve.budget, "iters=V, nodes=V or ms=V");
  solve_cmd->add_option("--cadence", solve.cadence,
                        "Evaluation cadence: K, iters=K or nodes=K");
  auto* seed_opt =
      solve_cmd->add_option("--seed", solve.seed, "Master seed");
  solve_cmd->add_option("--out", solve.out_dir, "Output directory");
  solve_cmd->add_option("--threads", solve.threads, "Worker threads");
  solve_cmd->add_flag("--no-pruning", solve.no_pruning, "Disable pruning");
  solve_cmd->add_option("--threshold", solve.threshold, "Pruning threshold");
  solve_cmd->add_flag("--checkpoints", solve.checkpoints,
                      "Write final checkpoints");
  solve_cmd->add_option("--interval", solve.interval,
                        "Confidence interval: normal or bootstrap");

  MatchOptions match;
  auto* match_cmd = app.add_subcommand("match", "Head-to-head evaluation");
  match_cmd->add_option("--game", match.game, "Game selector")->required();
  match_cmd->add_option("--profile-a", match.profile_a, "Checkpoint A")
      ->required();
  match_cmd->add_option("--profile-b", match.profile_b, "Checkpoint B")
      ->required();
  match_cmd->add_option("--players", match.players, "Players");
  match_cmd->add_option("--episodes", match.episodes, "Episodes per competition");
  match_cmd->add_option("--seed", match.seed, "Seed");
  match_cmd->add_option("--log", match.log_file, "Episode log CSV");

  std::string census_game;
  auto* census_cmd = app.add_subcommand("census", "Count infosets and nodes");
  census_cmd->add_option("--game", census_game, "Game selector")->required();

  int g = 0, h = 0;
  auto* predict_cmd =
      app.add_subcommand("predict-census", "Closed-form node-colour counts");
  predict_cmd->set_help_flag("--help", "Print this help message and exit");
  predict_cmd->add_option("--g", g, "Actions per node")->required();
  predict_cmd->add_option("--h", h, "Layers")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfigError;
  }
  solve.seed_set = seed_opt->count() > 0;

  try {
    if (solve_cmd->parsed()) return Solve(solve, out);
    if (match_cmd->parsed()) return Match(match, out);
    if (census_cmd->parsed()) return Census(census_game, out);
    if (predict_cmd->parsed()) return PredictCensusCommand(g, h, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidParams& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfigError;
}

}  // namespace cfvfp

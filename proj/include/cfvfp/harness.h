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

#ifndef CFVFP_HARNESS_H_
#define CFVFP_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cfvfp/game.h"
#include "cfvfp/rng.h"
#include "cfvfp/solver.h"

namespace cfvfp {

enum class BudgetKind { kIterations, kNodes, kMillis };
enum class AxisKind { kIteration, kNodes, kTime };

std::string_view AxisKindName(AxisKind kind);

struct Budget {
  BudgetKind kind = BudgetKind::kIterations;
  std::int64_t value = 1000;
};

struct Cadence {
  AxisKind kind = AxisKind::kIteration;  // kIteration or kNodes
  std::int64_t value = 100;
};

// "iters=V", "nodes=V", "ms=V". Throws ConfigError.
Budget ParseBudget(std::string_view text);
// "K", "iters=K" or "nodes=K". Throws ConfigError.
Cadence ParseCadence(std::string_view text);

// A solver entry. Normal-form learners are named "rm" and "fp" and need a
// matrix game selector.
struct SolverSpec {
  std::string label;
  std::string algorithm = "cfr";
  WeightScheme weight = WeightScheme::kConstant;
  bool pruning = true;
  double prune_threshold = 1e-20;
  bool simultaneous = true;
  bool random_initial_policy = false;
};

enum class IntervalMethod { kNormal, kBootstrap };

struct ExperimentConfig {
  std::string game;
  std::vector<SolverSpec> solvers;
  int trials = 30;
  Budget budget;
  Cadence cadence;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
  IntervalMethod interval = IntervalMethod::kNormal;
  bool save_checkpoints = false;

  // Throws ConfigError on invalid combinations.
  void Validate() const;
  // Canonical text of everything that determines the results.
  std::string Canonical() const;
};

struct Snapshot {
  std::int64_t iteration = 0;
  std::int64_t nodes = 0;
  std::int64_t elapsed_ns = 0;  // solve time only
  std::int64_t mark = 0;        // cadence point, used to align trials
  double exploitability = 0.0;
};

struct RunRecord {
  std::string game;
  std::string solver;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<Snapshot> rows;
  std::string checkpoint;  // set when checkpoints are requested
};

struct SummaryRow {
  std::string game;
  std::string solver;
  AxisKind x_kind = AxisKind::kIteration;
  std::int64_t x = 0;
  int trials = 0;
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

struct Interval {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// mean +- 1.645 s / sqrt(n).
Interval NormalInterval(const std::vector<double>& samples);
// Percentile bootstrap of the mean at the 90% level.
Interval BootstrapInterval(const std::vector<double>& samples, Rng& rng,
                           int resamples = 2000);

std::uint64_t TrialSeed(std::uint64_t master, int trial);
std::string ConfigHash(const ExperimentConfig& config);

// Runs a single seeded trial.
RunRecord RunTrial(const ExperimentConfig& config, const SolverSpec& solver,
                   int trial);
// All (solver, trial) pairs, on `threads` workers. Output order is by
// solver then trial regardless of scheduling.
std::vector<RunRecord> RunExperiment(const ExperimentConfig& config);

std::vector<SummaryRow> Summarize(const std::vector<RunRecord>& records,
                                  AxisKind x_kind, IntervalMethod method,
                                  std::uint64_t seed);

// Long-format rows `game,solver,trial,x_kind,x,exploitability`, one per
// snapshot per requested axis. Throws InvalidParams when there is nothing
// to emit.
void EmitPlotData(const std::vector<RunRecord>& records,
                  const std::vector<AxisKind>& axes, std::ostream& out);

// Writes runs.csv, summary.csv and plotdata.csv, whose bytes depend only
// on the config for iteration and node budgets, plus runs_timing.csv and
// plotdata_timing.csv with wall-clock data. Normal-form runs also get
// nf_timing.csv as `trial,iter,algo,exploitability,elapsed_ns`.
void WriteExperimentOutputs(const ExperimentConfig& config,
                            const std::vector<RunRecord>& records,
                            const std::string& out_dir);

// Flat key = value lines with [solver <label>] sections. Throws
// ConfigError.
ExperimentConfig ParseExperimentConfig(std::istream& in);

struct MatchConfig {
  int players = 2;
  std::int64_t episodes = 1000;
  std::uint64_t seed = 0;
  bool keep_log = false;
};

struct EpisodeRecord {
  int competition = 1;
  int seat = 0;
  double payoff = 0.0;
};

// Competition 1 seats profile A at one random seat and B elsewhere;
// competition 2 swaps the roles. r1 is A's mean payoff in competition 1,
// r2 is B's in competition 2.
struct MatchResult {
  double r1 = 0.0;
  double r1_se = 0.0;
  double r2 = 0.0;
  double r2_se = 0.0;
  std::vector<EpisodeRecord> log;
};

MatchResult RunMatch(const Game& game, const StrategyProfile& a,
                     const StrategyProfile& b, const MatchConfig& config);

}  // namespace cfvfp

#endif  // CFVFP_HARNESS_H_

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

#ifndef CFVFP_SOLVER_H_
#define CFVFP_SOLVER_H_

#include <array>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfvfp/game.h"
#include "cfvfp/rng.h"

namespace cfvfp {

enum class Algorithm {
  kCfr,
  kCfrPlus,
  kCfvfp,
  kCfvfpPlus,
  kMccfrEs,
  kMccfvfp,
  kMccfvfpPlus,
};

std::string_view AlgorithmName(Algorithm algorithm);
// Accepts the names above case-insensitively. Throws ConfigError.
Algorithm ParseAlgorithm(std::string_view name);
bool IsMonteCarlo(Algorithm algorithm);
// Next policy is regret matching (otherwise argmax).
bool UsesRegretMatching(Algorithm algorithm);
// Accumulator holds regrets (otherwise raw counterfactual values).
bool AccumulatesRegret(Algorithm algorithm);
bool IsPlus(Algorithm algorithm);

// Averaging weight w_t. kLog uses log(t + 1) so that w_1 > 0.
enum class WeightScheme { kConstant, kLog, kLinear, kQuadratic };

std::string_view WeightSchemeName(WeightScheme scheme);
WeightScheme ParseWeightScheme(std::string_view name);
double AveragingWeight(WeightScheme scheme, std::int64_t t);

struct SolverConfig {
  Algorithm algorithm = Algorithm::kCfr;
  WeightScheme weight = WeightScheme::kConstant;
  bool pruning = true;
  // A subtree is skipped when every player's counterfactual reach is at
  // most this value. Zero gives exact pruning.
  double prune_threshold = 1e-20;
  std::uint64_t seed = 0;
  // Full traversal and MCCFVFP update both players per pass. When false,
  // MCCFVFP alternates a single traverser like MCCFR-ES.
  bool simultaneous = true;
  bool random_initial_policy = false;
};

struct InfoSetAccumulator {
  int player = 0;
  std::string key;
  std::vector<double> cumulative;  // regrets or counterfactual value sums
  std::vector<double> avg_numerator;
  double avg_denominator = 0.0;
  Policy policy;  // current policy
  bool dirty = false;

  int num_actions() const { return static_cast<int>(cumulative.size()); }
};

class SolverState {
 public:
  // Throws InvalidParams for games that are not two-player.
  SolverState(std::shared_ptr<const Game> game, SolverConfig config);

  const Game& game() const { return *game_; }
  const std::shared_ptr<const Game>& game_ptr() const { return game_; }
  const SolverConfig& config() const { return config_; }
  std::int64_t iteration() const { return iteration_; }
  std::int64_t nodes_touched() const { return nodes_touched_; }
  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }

  InfoSetAccumulator* Find(int player, std::string_view key);
  const InfoSetAccumulator* Find(int player, std::string_view key) const;
  // Creates the accumulator with the initial policy when missing.
  InfoSetAccumulator& Lookup(int player, std::string_view key,
                             int num_actions);
  // In creation order.
  const std::deque<InfoSetAccumulator>& accumulators() const {
    return accumulators_;
  }

  // Uniform when the infoset is unknown or was never reached.
  Policy AveragePolicy(int player, std::string_view key,
                       int num_actions) const;
  StrategyProfile AverageProfile() const;
  StrategyProfile CurrentProfile() const;
  void SetCurrentPolicy(int player, std::string_view key, Policy policy);

  // Used by the iteration routines and checkpoint loading.
  void MarkDirty(InfoSetAccumulator& acc);
  void CountNode() { ++nodes_touched_; }
  void FinishIteration();
  void Restore(std::int64_t iteration, std::int64_t nodes_touched);

 private:
  std::shared_ptr<const Game> game_;
  SolverConfig config_;
  std::int64_t iteration_ = 0;
  std::int64_t nodes_touched_ = 0;
  Rng rng_;
  std::deque<InfoSetAccumulator> accumulators_;
  std::array<KeyMap<std::size_t>, 2> index_;
  std::vector<std::size_t> dirty_;
};

// max(x, 0) per entry.
void PlusClamp(std::span<double> values);

// Positive-part regret matching; uniform when no entry is positive.
Policy RegretMatchingPolicy(std::span<const double> regrets);

// One full pass of CFR or CFR+.
void CfrIteration(SolverState& state);
// One full pass of CFVFP or CFVFP+.
void CfvfpIteration(SolverState& state);
// One external-sampling pass for `traverser`.
void MccfrEsIteration(SolverState& state, int traverser);
// One MCCFVFP pass with sampled chance. `traverser` only matters when
// the simultaneous flag is off.
void MccfvfpIteration(SolverState& state, int traverser);
// Dispatches on the configured algorithm. Monte Carlo solvers alternate
// the traverser by iteration parity.
void RunIteration(SolverState& state);

// Reach-weighted traversal from `state` used by the full and sampled
// CFR/CFVFP passes. Returns each player's counterfactual value. Exposed
// for tests; does not finish the iteration.
std::array<double, 2> ReachTraverse(SolverState& solver, State& state,
                                    std::array<double, 2> reach,
                                    double chance_reach, bool sample_chance);

// Line-delimited, version-tagged snapshot sufficient to resume bit-exactly.
void SaveCheckpoint(const SolverState& state, std::string_view game_selector,
                    std::ostream& out);
struct LoadedCheckpoint {
  std::string game_selector;
  std::unique_ptr<SolverState> state;
};
// Parses a checkpoint and rebuilds the game from its selector. Throws
// ConfigError.
LoadedCheckpoint LoadCheckpoint(std::istream& in);

}  // namespace cfvfp

#endif  // CFVFP_SOLVER_H_

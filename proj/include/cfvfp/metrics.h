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

#ifndef CFVFP_METRICS_H_
#define CFVFP_METRICS_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cfvfp/game.h"
#include "cfvfp/game_tree.h"
#include "cfvfp/solver.h"

namespace cfvfp {

struct BestResponseResult {
  double value = 0.0;
  // Best action per infoset of the responding player.
  std::vector<int> actions;
};

// Pure best response. Values at each infoset aggregate the opponent-and-
// chance reach weighted values of its states before maximizing; ties go
// to the lowest action index.
BestResponseResult BestResponse(const GameTree& tree,
                                const TreeProfile& profile, int player);

struct ExploitabilityResult {
  double total = 0.0;
  std::vector<double> per_player;
};

ExploitabilityResult Exploitability(const GameTree& tree,
                                    const TreeProfile& profile);
// Builds the tree; throws TreeTooLarge past node_cap.
ExploitabilityResult Exploitability(const Game& game,
                                    const StrategyProfile& profile,
                                    std::int64_t node_cap = kDefaultNodeCap);

// Average-strategy profile of a solver projected onto a tree.
TreeProfile AverageTreeProfile(const GameTree& tree, const SolverState& state);

enum class NodeColor { kRed = 0, kGreen = 1, kBlue = 2, kYellow = 3 };

// Red: every reach 1. Green: every reach 0. Blue: own reach 1, other 0.
// Yellow: own reach 0, other 1. "Own" is the acting player, or for
// non-decision nodes the opponent of the last player to act.
struct ColorCensus {
  std::array<std::int64_t, 4> total = {0, 0, 0, 0};
  std::vector<std::array<std::int64_t, 4>> by_depth;

  std::int64_t Count(NodeColor c) const {
    return total[static_cast<int>(c)];
  }
  std::int64_t Pass() const;
  std::int64_t PassAtDepth(int depth) const;
};

// Throws NotPureProfile unless every infoset policy is one-hot.
ColorCensus CensusByColor(const GameTree& tree, const TreeProfile& profile);

// Counts on layer h (root is layer 1) of the complete alternating tree
// with g actions per node, plus the size of the whole tree.
struct CensusPrediction {
  int g = 0;
  int h = 0;
  std::int64_t red = 0;
  std::int64_t blue = 0;
  std::int64_t yellow = 0;
  std::int64_t pass = 0;
  std::int64_t layer = 0;  // g^(h-1)
  std::int64_t all = 0;    // (g^h - 1) / (g - 1)
  bool closed_form = false;
};

// Closed form, valid for g >= 2 and h >= 3. Throws OutOfFormulaRange.
CensusPrediction PredictCensusClosedForm(int g, int h);
// Layer recurrence, valid for g >= 2 and h >= 1.
CensusPrediction PredictCensusRecurrence(int g, int h);
// Closed form where valid, recurrence otherwise.
CensusPrediction PredictCensus(int g, int h);

struct OpCount {
  std::int64_t cfvfp_additions = 0;
  std::int64_t cfr_additions = 0;
  std::int64_t cfr_multiplications = 0;
  // CFVFP operations over CFR operations.
  double Ratio() const;
};

// Per-infoset arithmetic for x actions. Throws InvalidParams for x < 1.
OpCount OpCountModel(int x);

inline std::int64_t NodesTouched(const SolverState& state) {
  return state.nodes_touched();
}

// Deterministic complete tree with h layers and g actions per node.
// Players alternate by layer starting with player 0; every node is its
// own infoset. Leaf payoffs are seeded pseudo-random values in [-1, 1].
class CompleteTreeGame : public Game {
 public:
  CompleteTreeGame(int g, int h, std::uint64_t payoff_seed = 0);
  int NumPlayers() const override { return 2; }
  std::unique_ptr<State> NewInitialState() const override;
  std::string Name() const override;
  int g() const { return g_; }
  int h() const { return h_; }
  std::uint64_t payoff_seed() const { return payoff_seed_; }

 private:
  int g_;
  int h_;
  std::uint64_t payoff_seed_;
};

}  // namespace cfvfp

#endif  // CFVFP_METRICS_H_

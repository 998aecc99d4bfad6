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

#include "cfvfp/metrics.h"

#include <cmath>
#include <limits>
#include <vector>

#include "cfvfp/errors.h"

namespace cfvfp {
namespace {

class BestResponder {
 public:
  BestResponder(const GameTree& tree, const TreeProfile& profile, int player)
      : tree_(tree),
        profile_(profile),
        player_(player),
        reach_(tree.nodes.size(), 0.0),
        value_(tree.nodes.size(), std::numeric_limits<double>::quiet_NaN()),
        best_(tree.NumInfosets(player), -1) {
    reach_[0] = 1.0;
    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
      const TreeNode& node = tree.nodes[id];
      for (int a = 0; a < node.num_children; ++a) {
        double w = 1.0;
        if (node.kind == NodeKind::kChance) {
          w = tree.edge_probs[node.first_child + a];
        } else if (node.player != player_) {
          w = profile_[node.player][node.infoset][a];
        }
        reach_[tree.Child(id, a)] = reach_[id] * w;
      }
    }
  }

  double Value(std::int64_t id) {
    double& memo = value_[id];
    if (!std::isnan(memo)) return memo;
    const TreeNode& node = tree_.nodes[id];
    double v = 0.0;
    if (node.kind == NodeKind::kTerminal) {
      v = tree_.payoffs[node.payoff + player_];
    } else if (node.kind == NodeKind::kChance) {
      for (int a = 0; a < node.num_children; ++a) {
        v += tree_.edge_probs[node.first_child + a] * Value(tree_.Child(id, a));
      }
    } else if (node.player != player_) {
      const Policy& sigma = profile_[node.player][node.infoset];
      for (int a = 0; a < node.num_children; ++a) {
        if (sigma[a] > 0.0) v += sigma[a] * Value(tree_.Child(id, a));
      }
    } else {
      v = Value(tree_.Child(id, BestAction(node.infoset)));
    }
    memo = v;
    return v;
  }

  int BestAction(int infoset) {
    int& best = best_[infoset];
    if (best >= 0) return best;
    const int n = tree_.num_actions[player_][infoset];
    std::vector<double> q(n, 0.0);
    for (std::int64_t id : tree_.members[player_][infoset]) {
      if (reach_[id] == 0.0) continue;
      for (int a = 0; a < n; ++a) {
        q[a] += reach_[id] * Value(tree_.Child(id, a));
      }
    }
    int arg = 0;
    for (int a = 1; a < n; ++a) {
      if (q[a] > q[arg]) arg = a;
    }
    best = arg;
    return best;
  }

  std::vector<int> AllActions() {
    for (int i = 0; i < tree_.NumInfosets(player_); ++i) BestAction(i);
    return best_;
  }

 private:
  const GameTree& tree_;
  const TreeProfile& profile_;
  int player_;
  std::vector<double> reach_;
  std::vector<double> value_;
  std::vector<int> best_;
};

}  // namespace

BestResponseResult BestResponse(const GameTree& tree,
                                const TreeProfile& profile, int player) {
  if (player < 0 || player >= tree.num_players) {
    throw InvalidParams("player out of range");
  }
  BestResponder responder(tree, profile, player);
  BestResponseResult result;
  result.value = responder.Value(0);
  result.actions = responder.AllActions();
  return result;
}

ExploitabilityResult Exploitability(const GameTree& tree,
                                    const TreeProfile& profile) {
  const std::vector<double> ev = TreeExpectedValue(tree, profile);
  ExploitabilityResult result;
  for (int p = 0; p < tree.num_players; ++p) {
    BestResponder responder(tree, profile, p);
    result.per_player.push_back(responder.Value(0) - ev[p]);
    result.total += result.per_player.back();
  }
  return result;
}

ExploitabilityResult Exploitability(const Game& game,
                                    const StrategyProfile& profile,
                                    std::int64_t node_cap) {
  const GameTree tree = BuildGameTree(game, node_cap);
  return Exploitability(tree, ProjectProfile(tree, profile));
}

TreeProfile AverageTreeProfile(const GameTree& tree, const SolverState& state) {
  TreeProfile out(tree.num_players);
  for (int p = 0; p < tree.num_players; ++p) {
    out[p].reserve(tree.NumInfosets(p));
    for (int i = 0; i < tree.NumInfosets(p); ++i) {
      out[p].push_back(
          state.AveragePolicy(p, tree.keys[p][i], tree.num_actions[p][i]));
    }
  }
  return out;
}

double OpCount::Ratio() const {
  return static_cast<double>(cfvfp_additions) /
         static_cast<double>(cfr_additions + cfr_multiplications);
}

OpCount OpCountModel(int x) {
  if (x < 1) throw InvalidParams("op count needs x >= 1");
  OpCount c;
  c.cfvfp_additions = 2 * static_cast<std::int64_t>(x) + 1;
  c.cfr_additions = 6 * static_cast<std::int64_t>(x) - 2;
  c.cfr_multiplications = 3 * static_cast<std::int64_t>(x);
  return c;
}

}  // namespace cfvfp

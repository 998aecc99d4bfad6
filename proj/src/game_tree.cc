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

#include "cfvfp/game_tree.h"

#include <string>

#include "cfvfp/errors.h"

namespace cfvfp {

int GameTree::FindInfoset(int player, std::string_view key) const {
  const auto& table = index[player];
  auto it = table.find(key);
  return it == table.end() ? -1 : it->second;
}

namespace {

class Builder {
 public:
  Builder(GameTree& tree, std::int64_t cap) : tree_(tree), cap_(cap) {}

  std::int64_t Build(State& state, int depth, std::int64_t parent,
                     int parent_action) {
    const std::int64_t id = static_cast<std::int64_t>(tree_.nodes.size());
    if (id >= cap_) {
      throw TreeTooLarge("tree exceeds node cap of " + std::to_string(cap_));
    }
    tree_.nodes.emplace_back();
    TreeNode node;
    node.kind = state.Kind();
    node.depth = depth;
    node.parent = parent;
    node.parent_action = parent_action;
    if (node.kind == NodeKind::kTerminal) {
      node.payoff = static_cast<std::int64_t>(tree_.payoffs.size());
      for (int p = 0; p < tree_.num_players; ++p) {
        tree_.payoffs.push_back(state.Payoff(p));
      }
      tree_.nodes[id] = node;
      return id;
    }
    const int n = state.NumActions();
    node.num_children = n;
    node.first_child = static_cast<std::int64_t>(tree_.children.size());
    tree_.children.resize(tree_.children.size() + n, -1);
    tree_.edge_probs.resize(tree_.edge_probs.size() + n, 0.0);
    if (node.kind == NodeKind::kChance) {
      for (int a = 0; a < n; ++a) {
        tree_.edge_probs[node.first_child + a] = state.ChanceProbability(a);
      }
    } else {
      const int p = state.CurrentPlayer();
      node.player = p;
      auto [it, inserted] = tree_.index[p].try_emplace(
          std::string(state.Key()), tree_.NumInfosets(p));
      if (inserted) {
        tree_.keys[p].emplace_back(state.Key());
        tree_.num_actions[p].push_back(n);
        tree_.members[p].emplace_back();
      } else if (tree_.num_actions[p][it->second] != n) {
        throw InvalidGame("infoset arity differs between states");
      }
      node.infoset = it->second;
      tree_.members[p][node.infoset].push_back(id);
    }
    tree_.nodes[id] = node;
    for (int a = 0; a < n; ++a) {
      state.ApplyAction(a);
      const std::int64_t child = Build(state, depth + 1, id, a);
      state.UndoAction();
      tree_.children[node.first_child + a] = child;
    }
    return id;
  }

 private:
  GameTree& tree_;
  std::int64_t cap_;
};

void EvWalk(const GameTree& tree, const TreeProfile& profile,
            std::int64_t id, double weight, std::vector<double>& out) {
  if (weight == 0.0) return;
  const TreeNode& node = tree.nodes[id];
  if (node.kind == NodeKind::kTerminal) {
    for (int p = 0; p < tree.num_players; ++p) {
      out[p] += weight * tree.payoffs[node.payoff + p];
    }
    return;
  }
  for (int a = 0; a < node.num_children; ++a) {
    const double pr = node.kind == NodeKind::kChance
                          ? tree.edge_probs[node.first_child + a]
                          : profile[node.player][node.infoset][a];
    EvWalk(tree, profile, tree.Child(id, a), weight * pr, out);
  }
}

}  // namespace

GameTree BuildGameTree(const Game& game, std::int64_t node_cap) {
  GameTree tree;
  tree.num_players = game.NumPlayers();
  tree.keys.resize(tree.num_players);
  tree.num_actions.resize(tree.num_players);
  tree.members.resize(tree.num_players);
  tree.index.resize(tree.num_players);
  Builder builder(tree, node_cap);
  auto state = game.NewInitialState();
  builder.Build(*state, 0, -1, -1);
  return tree;
}

TreeProfile ProjectProfile(const GameTree& tree,
                           const StrategyProfile& profile) {
  TreeProfile out(tree.num_players);
  for (int p = 0; p < tree.num_players; ++p) {
    out[p].reserve(tree.NumInfosets(p));
    for (int i = 0; i < tree.NumInfosets(p); ++i) {
      out[p].push_back(
          profile.Get(p, tree.keys[p][i], tree.num_actions[p][i]));
    }
  }
  return out;
}

StrategyProfile ToStrategyProfile(const GameTree& tree,
                                  const TreeProfile& profile) {
  StrategyProfile out(tree.num_players);
  for (int p = 0; p < tree.num_players; ++p) {
    for (int i = 0; i < tree.NumInfosets(p); ++i) {
      out.Set(p, tree.keys[p][i], profile[p][i]);
    }
  }
  return out;
}

std::vector<double> TreeExpectedValue(const GameTree& tree,
                                      const TreeProfile& profile) {
  std::vector<double> out(tree.num_players, 0.0);
  EvWalk(tree, profile, 0, 1.0, out);
  return out;
}

}  // namespace cfvfp

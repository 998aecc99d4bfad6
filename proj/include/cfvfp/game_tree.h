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

#ifndef CFVFP_GAME_TREE_H_
#define CFVFP_GAME_TREE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cfvfp/game.h"

namespace cfvfp {

struct TreeNode {
  NodeKind kind = NodeKind::kTerminal;
  int player = -1;   // decision nodes
  int infoset = -1;  // index into GameTree::keys[player]
  int depth = 0;
  int num_children = 0;
  std::int64_t first_child = 0;  // offset into GameTree::children
  std::int64_t payoff = 0;       // offset into GameTree::payoffs
  std::int64_t parent = -1;
  int parent_action = -1;
};

// Flat copy of a game tree in preorder; node 0 is the root.
struct GameTree {
  int num_players = 0;
  std::vector<TreeNode> nodes;
  std::vector<std::int64_t> children;
  std::vector<double> edge_probs;  // chance probability per child slot
  std::vector<double> payoffs;     // num_players values per terminal
  std::vector<std::vector<std::string>> keys;        // per player
  std::vector<std::vector<int>> num_actions;         // per player, infoset
  std::vector<std::vector<std::vector<std::int64_t>>> members;  // states

  std::int64_t Child(std::int64_t node, int action) const {
    return children[nodes[node].first_child + action];
  }
  int NumInfosets(int player) const {
    return static_cast<int>(keys[player].size());
  }
  // Infoset index for a key, or -1.
  int FindInfoset(int player, std::string_view key) const;

  std::vector<KeyMap<int>> index;
};

GameTree BuildGameTree(const Game& game,
                       std::int64_t node_cap = kDefaultNodeCap);

// Per-player, per-infoset policies aligned with a GameTree.
using TreeProfile = std::vector<std::vector<Policy>>;

TreeProfile ProjectProfile(const GameTree& tree,
                           const StrategyProfile& profile);
StrategyProfile ToStrategyProfile(const GameTree& tree,
                                  const TreeProfile& profile);

std::vector<double> TreeExpectedValue(const GameTree& tree,
                                      const TreeProfile& profile);

}  // namespace cfvfp

#endif  // CFVFP_GAME_TREE_H_

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

#ifndef CFVFP_GAME_H_
#define CFVFP_GAME_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cfvfp {

enum class NodeKind { kChance, kDecision, kTerminal };

// Byte string identifying one player's information set. Keys are unique
// per player, not across players.
using InfoSetKey = std::string;

// Probability vector over the actions of one information set.
using Policy = std::vector<double>;

inline constexpr std::int64_t kDefaultNodeCap = 100'000'000;

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename V>
using KeyMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

// Mutable cursor over a game tree. ApplyAction and UndoAction walk one edge.
class State {
 public:
  virtual ~State() = default;

  virtual NodeKind Kind() const = 0;
  // Acting player at decision nodes.
  virtual int CurrentPlayer() const = 0;
  // Number of actions at decision or chance nodes; 0 at terminals.
  virtual int NumActions() const = 0;
  virtual double ChanceProbability(int action) const = 0;
  virtual double Payoff(int player) const = 0;
  // Key of the acting player's information set. The view is invalidated
  // by the next ApplyAction or UndoAction.
  virtual std::string_view Key() const = 0;
  virtual void ApplyAction(int action) = 0;
  virtual void UndoAction() = 0;
  virtual std::string ActionName(int action) const;
  virtual std::unique_ptr<State> Clone() const = 0;

  bool IsTerminal() const { return Kind() == NodeKind::kTerminal; }
  bool IsChance() const { return Kind() == NodeKind::kChance; }
  bool IsDecision() const { return Kind() == NodeKind::kDecision; }
};

class Game {
 public:
  virtual ~Game() = default;
  virtual int NumPlayers() const = 0;
  virtual std::unique_ptr<State> NewInitialState() const = 0;
  virtual std::string Name() const = 0;
};

// Behavioural strategy profile. Infosets without an entry are uniform.
class StrategyProfile {
 public:
  explicit StrategyProfile(int num_players = 2);

  int num_players() const { return static_cast<int>(tables_.size()); }
  // Throws InvalidParams unless the policy is a probability vector.
  void Set(int player, std::string_view key, Policy policy);
  const Policy* Find(int player, std::string_view key) const;
  Policy Get(int player, std::string_view key, int num_actions) const;
  double Prob(int player, std::string_view key, int action,
              int num_actions) const;
  const KeyMap<Policy>& table(int player) const { return tables_[player]; }

 private:
  std::vector<KeyMap<Policy>> tables_;
};

bool IsProbabilityVector(std::span<const double> p, double tol = 1e-9);

struct TreeCensus {
  std::int64_t nodes = 0;
  std::int64_t terminals = 0;
  std::int64_t chance_nodes = 0;
  std::vector<std::int64_t> decision_nodes;  // per player
  std::vector<std::int64_t> infosets;        // per player
  int max_depth = 0;

  std::int64_t TotalInfosets() const;
  std::int64_t TotalDecisionNodes() const;
};

// Counts nodes and infosets with a full walk. Throws TreeTooLarge past
// node_cap and InvalidGame if the walk finds inconsistent arities, chance
// distributions that do not sum to one, or non zero-sum payoffs.
TreeCensus EnumerateTree(const Game& game,
                         std::int64_t node_cap = kDefaultNodeCap);

// True iff every infoset's states share the same sequence of the owner's
// earlier (infoset, action) pairs.
bool HasPerfectRecall(const Game& game,
                      std::int64_t node_cap = kDefaultNodeCap);

struct ReachFactors {
  std::vector<double> players;
  double chance = 1.0;
  double Total() const;
  // Product over everything except `player`.
  double Counterfactual(int player) const;
};

// Reach of the node at the end of `path` from the root.
ReachFactors ReachProbabilities(const Game& game,
                                const StrategyProfile& profile,
                                std::span<const int> path);

// Exact expected payoffs by recursion over states.
std::vector<double> ExpectedValue(const Game& game,
                                  const StrategyProfile& profile);

}  // namespace cfvfp

#endif  // CFVFP_GAME_H_

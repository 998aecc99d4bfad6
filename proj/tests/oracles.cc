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


#include "oracles.h"

#include <algorithm>
#include <limits>
#include <set>
#include <utility>

#include "cfvfp/rng.h"

namespace cfvfp::testing {
namespace {

void Accumulate(const State& state, const StrategyProfile& profile,
                double weight, std::vector<double>& out) {
  if (weight == 0.0) return;
  if (state.IsTerminal()) {
    for (std::size_t p = 0; p < out.size(); ++p) {
      out[p] += weight * state.Payoff(static_cast<int>(p));
    }
    return;
  }
  const int n = state.NumActions();
  for (int a = 0; a < n; ++a) {
    double prob;
    if (state.IsChance()) {
      prob = state.ChanceProbability(a);
    } else {
      prob = profile.Prob(state.CurrentPlayer(), state.Key(), a, n);
    }
    auto child = state.Clone();
    child->ApplyAction(a);
    Accumulate(*child, profile, weight * prob, out);
  }
}

void Collect(const State& state, int player, std::set<std::string>& seen,
             std::vector<OracleInfoSet>& out) {
  if (state.IsTerminal()) return;
  if (state.IsDecision() && state.CurrentPlayer() == player) {
    std::string key(state.Key());
    if (seen.insert(key).second) out.push_back({key, state.NumActions()});
  }
  for (int a = 0; a < state.NumActions(); ++a) {
    auto child = state.Clone();
    child->ApplyAction(a);
    Collect(*child, player, seen, out);
  }
}

class OneDecisionState : public State {
 public:
  explicit OneDecisionState(const OneDecisionGame& game) : game_(game) {}
  NodeKind Kind() const override {
    if (history_.empty()) return NodeKind::kChance;
    if (history_.size() == 1) return NodeKind::kDecision;
    return NodeKind::kTerminal;
  }
  int CurrentPlayer() const override { return history_.size() == 1 ? 0 : -1; }
  int NumActions() const override {
    if (history_.empty()) return static_cast<int>(game_.chance().size());
    if (history_.size() == 1) {
      return static_cast<int>(game_.payoffs()[0].size());
    }
    return 0;
  }
  double ChanceProbability(int action) const override {
    return game_.chance()[action];
  }
  double Payoff(int player) const override {
    const double v = game_.payoffs()[history_[0]][history_[1]];
    return player == 0 ? v : -v;
  }
  std::string_view Key() const override {
    return history_.size() == 1 ? "d" : "";
  }
  void ApplyAction(int action) override { history_.push_back(action); }
  void UndoAction() override { history_.pop_back(); }
  std::unique_ptr<State> Clone() const override {
    return std::make_unique<OneDecisionState>(*this);
  }

 private:
  const OneDecisionGame& game_;
  std::vector<int> history_;
};

class TableState : public State {
 public:
  explicit TableState(const TableGame& game) : game_(game) {}
  NodeKind Kind() const override { return node().kind; }
  int CurrentPlayer() const override { return node().player; }
  int NumActions() const override {
    return static_cast<int>(node().children.size());
  }
  double ChanceProbability(int action) const override {
    return node().chance[action];
  }
  double Payoff(int player) const override { return node().payoffs[player]; }
  std::string_view Key() const override { return node().key; }
  void ApplyAction(int action) override {
    path_.push_back(node().children[action]);
  }
  void UndoAction() override { path_.pop_back(); }
  std::unique_ptr<State> Clone() const override {
    return std::make_unique<TableState>(*this);
  }

 private:
  const TableNode& node() const {
    return game_.nodes()[path_.empty() ? 0 : path_.back()];
  }
  const TableGame& game_;
  std::vector<int> path_;
};

}  // namespace

std::unique_ptr<State> TableGame::NewInitialState() const {
  return std::make_unique<TableState>(*this);
}

TableNode Terminal(double u0) {
  TableNode n;
  n.payoffs = {u0, -u0};
  return n;
}

TableNode Decision(int player, std::string key, std::vector<int> children) {
  TableNode n;
  n.kind = NodeKind::kDecision;
  n.player = player;
  n.key = std::move(key);
  n.children = std::move(children);
  return n;
}

TableNode Chance(std::vector<double> probs, std::vector<int> children) {
  TableNode n;
  n.kind = NodeKind::kChance;
  n.chance = std::move(probs);
  n.children = std::move(children);
  return n;
}

std::vector<double> OracleExpectedValue(const Game& game,
                                        const StrategyProfile& profile) {
  std::vector<double> out(game.NumPlayers(), 0.0);
  Accumulate(*game.NewInitialState(), profile, 1.0, out);
  return out;
}

std::vector<OracleInfoSet> OracleInfoSets(const Game& game, int player) {
  std::set<std::string> seen;
  std::vector<OracleInfoSet> out;
  Collect(*game.NewInitialState(), player, seen, out);
  return out;
}

double BruteForceBestResponse(const Game& game, const StrategyProfile& profile,
                              int player) {
  const auto infosets = OracleInfoSets(game, player);
  std::vector<int> choice(infosets.size(), 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    StrategyProfile candidate = profile;
    for (std::size_t i = 0; i < infosets.size(); ++i) {
      Policy p(infosets[i].num_actions, 0.0);
      p[choice[i]] = 1.0;
      candidate.Set(player, infosets[i].key, std::move(p));
    }
    best = std::max(best, OracleExpectedValue(game, candidate)[player]);
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == infosets[i].num_actions) {
      choice[i++] = 0;
    }
    if (i == choice.size()) break;
  }
  return best;
}

int PureChoice(const std::string& path, int g, std::uint64_t seed) {
  std::uint64_t x = MixSeed(seed, path.size());
  for (char c : path) x = MixSeed(x, static_cast<unsigned char>(c) + 1);
  return static_cast<int>(x % static_cast<std::uint64_t>(g));
}

std::array<std::int64_t, 4> BruteForceLastLayer(int g, int h,
                                                std::uint64_t seed) {
  std::array<std::int64_t, 4> counts = {0, 0, 0, 0};
  const int depth = h - 1;
  const int own = depth % 2;
  std::vector<int> digits(depth, 0);
  while (true) {
    std::array<bool, 2> on = {true, true};
    std::string path;
    for (int d = 0; d < depth; ++d) {
      if (PureChoice(path, g, seed) != digits[d]) on[d % 2] = false;
      path.push_back(static_cast<char>(digits[d]));
    }
    const bool mine = on[own];
    const bool theirs = on[1 - own];
    const int color = mine ? (theirs ? 0 : 2) : (theirs ? 3 : 1);
    ++counts[color];
    int d = 0;
    while (d < depth && ++digits[d] == g) digits[d++] = 0;
    if (d == depth) break;
  }
  return counts;
}

TreeProfile PureCompleteTreeProfile(const GameTree& tree, int g,
                                    std::uint64_t seed) {
  TreeProfile profile(2);
  for (int p = 0; p < 2; ++p) {
    for (const std::string& key : tree.keys[p]) {
      Policy policy(g, 0.0);
      policy[PureChoice(key, g, seed)] = 1.0;
      profile[p].push_back(std::move(policy));
    }
  }
  return profile;
}

OneDecisionGame::OneDecisionGame(std::vector<double> chance,
                                 std::vector<std::vector<double>> payoffs)
    : chance_(std::move(chance)), payoffs_(std::move(payoffs)) {}

std::unique_ptr<State> OneDecisionGame::NewInitialState() const {
  return std::make_unique<OneDecisionState>(*this);
}

}  // namespace cfvfp::testing

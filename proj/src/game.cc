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

#include "cfvfp/game.h"

#include <cmath>
#include <numeric>
#include <string>

#include "cfvfp/errors.h"

namespace cfvfp {

std::string State::ActionName(int action) const {
  return std::to_string(action);
}

bool IsProbabilityVector(std::span<const double> p, double tol) {
  if (p.empty()) return false;
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -tol) || !std::isfinite(x)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tol;
}

StrategyProfile::StrategyProfile(int num_players) : tables_(num_players) {}

void StrategyProfile::Set(int player, std::string_view key, Policy policy) {
  if (player < 0 || player >= num_players()) {
    throw InvalidParams("player out of range");
  }
  if (!IsProbabilityVector(policy)) {
    throw InvalidParams("policy is not a probability vector");
  }
  tables_[player].insert_or_assign(std::string(key), std::move(policy));
}

const Policy* StrategyProfile::Find(int player, std::string_view key) const {
  const auto& table = tables_[player];
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

Policy StrategyProfile::Get(int player, std::string_view key,
                            int num_actions) const {
  if (const Policy* p = Find(player, key)) {
    if (static_cast<int>(p->size()) != num_actions) {
      throw DimensionMismatch("policy arity differs from infoset arity");
    }
    return *p;
  }
  return Policy(num_actions, 1.0 / num_actions);
}

double StrategyProfile::Prob(int player, std::string_view key, int action,
                             int num_actions) const {
  if (const Policy* p = Find(player, key)) {
    if (static_cast<int>(p->size()) != num_actions) {
      throw DimensionMismatch("policy arity differs from infoset arity");
    }
    return (*p)[action];
  }
  return 1.0 / num_actions;
}

std::int64_t TreeCensus::TotalInfosets() const {
  return std::accumulate(infosets.begin(), infosets.end(), std::int64_t{0});
}

std::int64_t TreeCensus::TotalDecisionNodes() const {
  return std::accumulate(decision_nodes.begin(), decision_nodes.end(),
                         std::int64_t{0});
}

namespace {

class Enumerator {
 public:
  Enumerator(const Game& game, std::int64_t cap)
      : num_players_(game.NumPlayers()), cap_(cap), arity_(num_players_) {
    census_.decision_nodes.assign(num_players_, 0);
    census_.infosets.assign(num_players_, 0);
  }

  void Walk(State& state, int depth) {
    if (++census_.nodes > cap_) {
      throw TreeTooLarge("tree exceeds node cap of " + std::to_string(cap_));
    }
    if (depth > census_.max_depth) census_.max_depth = depth;
    switch (state.Kind()) {
      case NodeKind::kTerminal: {
        ++census_.terminals;
        double sum = 0.0;
        for (int p = 0; p < num_players_; ++p) sum += state.Payoff(p);
        if (std::abs(sum) > 1e-9) throw InvalidGame("payoffs not zero-sum");
        return;
      }
      case NodeKind::kChance: {
        ++census_.chance_nodes;
        const int n = state.NumActions();
        double sum = 0.0;
        for (int a = 0; a < n; ++a) {
          const double p = state.ChanceProbability(a);
          if (!(p > 0.0)) throw InvalidGame("non-positive chance outcome");
          sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
          throw InvalidGame("chance outcomes do not sum to one");
        }
        for (int a = 0; a < n; ++a) {
          state.ApplyAction(a);
          Walk(state, depth + 1);
          state.UndoAction();
        }
        return;
      }
      case NodeKind::kDecision: {
        const int p = state.CurrentPlayer();
        const int n = state.NumActions();
        if (n <= 0) throw InvalidGame("decision node without actions");
        ++census_.decision_nodes[p];
        auto [it, inserted] = arity_[p].try_emplace(std::string(state.Key()), n);
        if (inserted) {
          ++census_.infosets[p];
        } else if (it->second != n) {
          throw InvalidGame("infoset arity differs between states");
        }
        for (int a = 0; a < n; ++a) {
          state.ApplyAction(a);
          Walk(state, depth + 1);
          state.UndoAction();
        }
        return;
      }
    }
  }

  TreeCensus census() const { return census_; }

 private:
  int num_players_;
  std::int64_t cap_;
  std::vector<KeyMap<int>> arity_;
  TreeCensus census_;
};

class RecallChecker {
 public:
  RecallChecker(int num_players, std::int64_t cap)
      : cap_(cap), seen_(num_players), own_(num_players) {}

  bool Walk(State& state) {
    if (++nodes_ > cap_) throw TreeTooLarge("tree exceeds node cap");
    if (state.IsTerminal()) return true;
    const int n = state.NumActions();
    if (state.IsChance()) {
      for (int a = 0; a < n; ++a) {
        state.ApplyAction(a);
        const bool ok = Walk(state);
        state.UndoAction();
        if (!ok) return false;
      }
      return true;
    }
    const int p = state.CurrentPlayer();
    const std::string key(state.Key());
    auto [it, inserted] = seen_[p].try_emplace(key, own_[p]);
    if (!inserted && it->second != own_[p]) return false;
    const std::size_t mark = own_[p].size();
    for (int a = 0; a < n; ++a) {
      own_[p] += key;
      own_[p].push_back('\0');
      own_[p] += std::to_string(a);
      own_[p].push_back('\0');
      state.ApplyAction(a);
      const bool ok = Walk(state);
      state.UndoAction();
      own_[p].resize(mark);
      if (!ok) return false;
    }
    return true;
  }

 private:
  std::int64_t cap_;
  std::int64_t nodes_ = 0;
  std::vector<KeyMap<std::string>> seen_;
  std::vector<std::string> own_;
};

void ExpectedValueWalk(State& state, const StrategyProfile& profile,
                       double weight, std::vector<double>& out) {
  if (weight == 0.0) return;
  if (state.IsTerminal()) {
    for (int p = 0; p < static_cast<int>(out.size()); ++p) {
      out[p] += weight * state.Payoff(p);
    }
    return;
  }
  const int n = state.NumActions();
  if (state.IsChance()) {
    for (int a = 0; a < n; ++a) {
      const double pr = state.ChanceProbability(a);
      state.ApplyAction(a);
      ExpectedValueWalk(state, profile, weight * pr, out);
      state.UndoAction();
    }
    return;
  }
  const Policy policy =
      profile.Get(state.CurrentPlayer(), state.Key(), n);
  for (int a = 0; a < n; ++a) {
    state.ApplyAction(a);
    ExpectedValueWalk(state, profile, weight * policy[a], out);
    state.UndoAction();
  }
}

}  // namespace

TreeCensus EnumerateTree(const Game& game, std::int64_t node_cap) {
  Enumerator e(game, node_cap);
  auto state = game.NewInitialState();
  e.Walk(*state, 0);
  return e.census();
}

bool HasPerfectRecall(const Game& game, std::int64_t node_cap) {
  RecallChecker checker(game.NumPlayers(), node_cap);
  auto state = game.NewInitialState();
  return checker.Walk(*state);
}

double ReachFactors::Total() const {
  double r = chance;
  for (double x : players) r *= x;
  return r;
}

double ReachFactors::Counterfactual(int player) const {
  double r = chance;
  for (int p = 0; p < static_cast<int>(players.size()); ++p) {
    if (p != player) r *= players[p];
  }
  return r;
}

ReachFactors ReachProbabilities(const Game& game,
                                const StrategyProfile& profile,
                                std::span<const int> path) {
  ReachFactors reach;
  reach.players.assign(game.NumPlayers(), 1.0);
  auto state = game.NewInitialState();
  for (int a : path) {
    if (state->IsTerminal()) throw InvalidParams("path runs past a terminal");
    const int n = state->NumActions();
    if (a < 0 || a >= n) throw InvalidParams("action out of range on path");
    if (state->IsChance()) {
      reach.chance *= state->ChanceProbability(a);
    } else {
      const int p = state->CurrentPlayer();
      reach.players[p] *= profile.Prob(p, state->Key(), a, n);
    }
    state->ApplyAction(a);
  }
  return reach;
}

std::vector<double> ExpectedValue(const Game& game,
                                  const StrategyProfile& profile) {
  std::vector<double> out(game.NumPlayers(), 0.0);
  auto state = game.NewInitialState();
  ExpectedValueWalk(*state, profile, 1.0, out);
  return out;
}

}  // namespace cfvfp

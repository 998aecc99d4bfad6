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

#include "cfvfp/solver.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "cfvfp/errors.h"

namespace cfvfp {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(c));
  return out;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCfr: return "cfr";
    case Algorithm::kCfrPlus: return "cfr+";
    case Algorithm::kCfvfp: return "cfvfp";
    case Algorithm::kCfvfpPlus: return "cfvfp+";
    case Algorithm::kMccfrEs: return "mccfr-es";
    case Algorithm::kMccfvfp: return "mccfvfp";
    case Algorithm::kMccfvfpPlus: return "mccfvfp+";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  const std::string n = Lower(name);
  for (Algorithm a :
       {Algorithm::kCfr, Algorithm::kCfrPlus, Algorithm::kCfvfp,
        Algorithm::kCfvfpPlus, Algorithm::kMccfrEs, Algorithm::kMccfvfp,
        Algorithm::kMccfvfpPlus}) {
    if (n == AlgorithmName(a)) return a;
  }
  if (n == "mccfr" || n == "es") return Algorithm::kMccfrEs;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

bool IsMonteCarlo(Algorithm algorithm) {
  return algorithm == Algorithm::kMccfrEs ||
         algorithm == Algorithm::kMccfvfp ||
         algorithm == Algorithm::kMccfvfpPlus;
}

bool UsesRegretMatching(Algorithm algorithm) {
  return algorithm == Algorithm::kCfr || algorithm == Algorithm::kCfrPlus ||
         algorithm == Algorithm::kMccfrEs;
}

bool AccumulatesRegret(Algorithm algorithm) {
  return algorithm != Algorithm::kCfvfp && algorithm != Algorithm::kMccfvfp;
}

bool IsPlus(Algorithm algorithm) {
  return algorithm == Algorithm::kCfrPlus ||
         algorithm == Algorithm::kCfvfpPlus ||
         algorithm == Algorithm::kMccfvfpPlus;
}

std::string_view WeightSchemeName(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::kConstant: return "constant";
    case WeightScheme::kLog: return "log";
    case WeightScheme::kLinear: return "linear";
    case WeightScheme::kQuadratic: return "quadratic";
  }
  return "unknown";
}

WeightScheme ParseWeightScheme(std::string_view name) {
  const std::string n = Lower(name);
  if (n == "constant" || n == "1" || n == "vanilla") {
    return WeightScheme::kConstant;
  }
  if (n == "log" || n == "logt") return WeightScheme::kLog;
  if (n == "linear" || n == "t") return WeightScheme::kLinear;
  if (n == "quadratic" || n == "t2" || n == "t^2") {
    return WeightScheme::kQuadratic;
  }
  throw ConfigError("unknown weight scheme '" + std::string(name) + "'");
}

double AveragingWeight(WeightScheme scheme, std::int64_t t) {
  const double x = static_cast<double>(t);
  switch (scheme) {
    case WeightScheme::kConstant: return 1.0;
    case WeightScheme::kLog: return std::log(x + 1.0);
    case WeightScheme::kLinear: return x;
    case WeightScheme::kQuadratic: return x * x;
  }
  return 1.0;
}

void PlusClamp(std::span<double> values) {
  for (double& v : values) v = std::max(v, 0.0);
}

Policy RegretMatchingPolicy(std::span<const double> regrets) {
  const int n = static_cast<int>(regrets.size());
  Policy p(n);
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    p[a] = regrets[a] > 0.0 ? regrets[a] : 0.0;
    total += p[a];
  }
  if (total > 0.0) {
    for (double& x : p) x /= total;
  } else {
    std::fill(p.begin(), p.end(), 1.0 / n);
  }
  return p;
}

SolverState::SolverState(std::shared_ptr<const Game> game, SolverConfig config)
    : game_(std::move(game)), config_(config), rng_(config.seed) {
  if (!game_) throw InvalidParams("solver needs a game");
  if (game_->NumPlayers() != 2) {
    throw InvalidParams("solvers support two-player games only");
  }
  if (!(config_.prune_threshold >= 0.0 && config_.prune_threshold < 1.0)) {
    throw InvalidParams("prune threshold must be in [0, 1)");
  }
}

InfoSetAccumulator* SolverState::Find(int player, std::string_view key) {
  auto it = index_[player].find(key);
  return it == index_[player].end() ? nullptr : &accumulators_[it->second];
}

const InfoSetAccumulator* SolverState::Find(int player,
                                            std::string_view key) const {
  auto it = index_[player].find(key);
  return it == index_[player].end() ? nullptr : &accumulators_[it->second];
}

InfoSetAccumulator& SolverState::Lookup(int player, std::string_view key,
                                        int num_actions) {
  auto it = index_[player].find(key);
  if (it != index_[player].end()) {
    InfoSetAccumulator& acc = accumulators_[it->second];
    if (acc.num_actions() != num_actions) {
      throw InvalidGame("infoset arity differs between states");
    }
    return acc;
  }
  index_[player].emplace(std::string(key), accumulators_.size());
  InfoSetAccumulator& acc = accumulators_.emplace_back();
  acc.player = player;
  acc.key = std::string(key);
  acc.cumulative.assign(num_actions, 0.0);
  acc.avg_numerator.assign(num_actions, 0.0);
  acc.policy.assign(num_actions, 1.0 / num_actions);
  if (config_.random_initial_policy) {
    double total = 0.0;
    for (double& x : acc.policy) {
      x = 1.0 - rng_.Uniform();
      total += x;
    }
    for (double& x : acc.policy) x /= total;
  }
  return acc;
}

Policy SolverState::AveragePolicy(int player, std::string_view key,
                                  int num_actions) const {
  const InfoSetAccumulator* acc = Find(player, key);
  if (acc == nullptr || !(acc->avg_denominator > 0.0)) {
    return Policy(num_actions, 1.0 / num_actions);
  }
  Policy p(acc->num_actions());
  double total = 0.0;
  for (int a = 0; a < acc->num_actions(); ++a) {
    p[a] = std::max(acc->avg_numerator[a] / acc->avg_denominator, 0.0);
    total += p[a];
  }
  for (double& x : p) x /= total;
  return p;
}

StrategyProfile SolverState::AverageProfile() const {
  StrategyProfile profile(2);
  for (const auto& acc : accumulators_) {
    profile.Set(acc.player, acc.key,
                AveragePolicy(acc.player, acc.key, acc.num_actions()));
  }
  return profile;
}

StrategyProfile SolverState::CurrentProfile() const {
  StrategyProfile profile(2);
  for (const auto& acc : accumulators_) {
    profile.Set(acc.player, acc.key, acc.policy);
  }
  return profile;
}

void SolverState::SetCurrentPolicy(int player, std::string_view key,
                                   Policy policy) {
  if (!IsProbabilityVector(policy)) {
    throw InvalidParams("policy is not a probability vector");
  }
  InfoSetAccumulator& acc =
      Lookup(player, key, static_cast<int>(policy.size()));
  acc.policy = std::move(policy);
}

void SolverState::MarkDirty(InfoSetAccumulator& acc) {
  if (acc.dirty) return;
  acc.dirty = true;
  dirty_.push_back(static_cast<std::size_t>(index_[acc.player].at(acc.key)));
}

void SolverState::FinishIteration() {
  const bool plus = IsPlus(config_.algorithm);
  const bool rm = UsesRegretMatching(config_.algorithm);
  for (std::size_t i : dirty_) {
    InfoSetAccumulator& acc = accumulators_[i];
    if (plus) PlusClamp(acc.cumulative);
    if (rm) {
      acc.policy = RegretMatchingPolicy(acc.cumulative);
    } else {
      const auto& q = acc.cumulative;
      const double best = *std::max_element(q.begin(), q.end());
      int ties = 0;
      for (double v : q) ties += (v == best);
      int pick = ties == 1 ? 0 : rng_.UniformInt(ties);
      std::fill(acc.policy.begin(), acc.policy.end(), 0.0);
      for (int a = 0; a < acc.num_actions(); ++a) {
        if (q[a] == best && pick-- == 0) {
          acc.policy[a] = 1.0;
          break;
        }
      }
    }
    acc.dirty = false;
  }
  dirty_.clear();
  ++iteration_;
}

void SolverState::Restore(std::int64_t iteration, std::int64_t nodes_touched) {
  iteration_ = iteration;
  nodes_touched_ = nodes_touched;
}

namespace {

void AddAverage(InfoSetAccumulator& acc, const Policy& sigma, double weight) {
  for (int a = 0; a < acc.num_actions(); ++a) {
    acc.avg_numerator[a] += weight * sigma[a];
  }
  acc.avg_denominator += weight;
}

int SampleChance(State& state, Rng& rng, std::vector<double>& probs) {
  const int n = state.NumActions();
  probs.resize(n);
  for (int a = 0; a < n; ++a) probs[a] = state.ChanceProbability(a);
  return n == 1 ? 0 : rng.SampleIndex(probs);
}

// Reach-weighted pass shared by CFR, CFVFP and MCCFVFP.
class ReachWalker {
 public:
  ReachWalker(SolverState& solver, bool sample_chance, int traverser)
      : solver_(solver),
        sample_chance_(sample_chance),
        traverser_(traverser),
        regret_(AccumulatesRegret(solver.config().algorithm)),
        prune_(solver.config().pruning),
        threshold_(solver.config().prune_threshold),
        weight_(AveragingWeight(solver.config().weight,
                                solver.iteration() + 1)) {}

  std::array<double, 2> Walk(State& state, std::array<double, 2> reach,
                             double chance) {
    if (prune_ && reach[1] * chance <= threshold_ &&
        reach[0] * chance <= threshold_) {
      return {0.0, 0.0};
    }
    solver_.CountNode();
    switch (state.Kind()) {
      case NodeKind::kTerminal:
        return {state.Payoff(0) * reach[1] * chance,
                state.Payoff(1) * reach[0] * chance};
      case NodeKind::kChance:
        return Chance(state, reach, chance);
      case NodeKind::kDecision:
        return Decision(state, reach, chance);
    }
    return {0.0, 0.0};
  }

 private:
  std::array<double, 2> Chance(State& state, std::array<double, 2> reach,
                               double chance) {
    if (sample_chance_) {
      const int a = SampleChance(state, solver_.rng(), probs_);
      state.ApplyAction(a);
      const auto r = Walk(state, reach, chance);
      state.UndoAction();
      return r;
    }
    std::array<double, 2> r = {0.0, 0.0};
    const int n = state.NumActions();
    for (int a = 0; a < n; ++a) {
      const double p = state.ChanceProbability(a);
      state.ApplyAction(a);
      const auto c = Walk(state, reach, chance * p);
      state.UndoAction();
      r[0] += c[0];
      r[1] += c[1];
    }
    return r;
  }

  std::array<double, 2> Decision(State& state, std::array<double, 2> reach,
                                 double chance) {
    const int p = state.CurrentPlayer();
    const int o = 1 - p;
    const int n = state.NumActions();
    InfoSetAccumulator& acc = solver_.Lookup(p, state.Key(), n);
    const Policy& sigma = acc.policy;
    if (traverser_ >= 0 && p != traverser_) {
      AddAverage(acc, sigma, weight_);
      const int a = solver_.rng().SampleIndex(sigma);
      state.ApplyAction(a);
      const auto r = Walk(state, reach, chance);
      state.UndoAction();
      return r;
    }
    const std::size_t base = values_.size();
    values_.resize(base + n);
    std::array<double, 2> r = {0.0, 0.0};
    for (int a = 0; a < n; ++a) {
      std::array<double, 2> child = reach;
      child[p] *= sigma[a];
      state.ApplyAction(a);
      const auto c = Walk(state, child, chance);
      state.UndoAction();
      values_[base + a] = c[p];
      r[p] += sigma[a] * c[p];
      r[o] += c[o];
    }
    if (reach[o] * chance > 0.0) {
      if (regret_) {
        for (int a = 0; a < n; ++a) {
          acc.cumulative[a] += values_[base + a] - r[p];
        }
      } else {
        for (int a = 0; a < n; ++a) acc.cumulative[a] += values_[base + a];
      }
      solver_.MarkDirty(acc);
    }
    if (traverser_ < 0 && reach[p] > 0.0) {
      AddAverage(acc, sigma, weight_ * reach[p]);
    }
    values_.resize(base);
    return r;
  }

  SolverState& solver_;
  bool sample_chance_;
  int traverser_;
  bool regret_;
  bool prune_;
  double threshold_;
  double weight_;
  std::vector<double> values_;
  std::vector<double> probs_;
};

class EsWalker {
 public:
  EsWalker(SolverState& solver, int traverser)
      : solver_(solver),
        traverser_(traverser),
        weight_(AveragingWeight(solver.config().weight,
                                solver.iteration() + 1)) {}

  double Walk(State& state) {
    solver_.CountNode();
    switch (state.Kind()) {
      case NodeKind::kTerminal:
        return state.Payoff(traverser_);
      case NodeKind::kChance: {
        const int a = SampleChance(state, solver_.rng(), probs_);
        state.ApplyAction(a);
        const double v = Walk(state);
        state.UndoAction();
        return v;
      }
      case NodeKind::kDecision:
        break;
    }
    const int p = state.CurrentPlayer();
    const int n = state.NumActions();
    InfoSetAccumulator& acc = solver_.Lookup(p, state.Key(), n);
    const Policy sigma = SamplingPolicy(acc);
    if (p != traverser_) {
      AddAverage(acc, sigma, weight_);
      const int a = solver_.rng().SampleIndex(sigma);
      state.ApplyAction(a);
      const double v = Walk(state);
      state.UndoAction();
      return v;
    }
    const std::size_t base = values_.size();
    values_.resize(base + n);
    double v = 0.0;
    for (int a = 0; a < n; ++a) {
      state.ApplyAction(a);
      const double c = Walk(state);
      state.UndoAction();
      values_[base + a] = c;
      v += sigma[a] * c;
    }
    for (int a = 0; a < n; ++a) acc.cumulative[a] += values_[base + a] - v;
    acc.policy = RegretMatchingPolicy(acc.cumulative);
    values_.resize(base);
    return v;
  }

 private:
  // Regret matching, or a random pure policy when no regret is positive.
  Policy SamplingPolicy(const InfoSetAccumulator& acc) {
    const int n = acc.num_actions();
    double total = 0.0;
    for (double r : acc.cumulative) total += r > 0.0 ? r : 0.0;
    Policy sigma(n, 0.0);
    if (total > 0.0) {
      for (int a = 0; a < n; ++a) {
        sigma[a] = acc.cumulative[a] > 0.0 ? acc.cumulative[a] / total : 0.0;
      }
    } else {
      sigma[n == 1 ? 0 : solver_.rng().UniformInt(n)] = 1.0;
    }
    return sigma;
  }

  SolverState& solver_;
  int traverser_;
  double weight_;
  std::vector<double> values_;
  std::vector<double> probs_;
};

void CheckAlgorithm(const SolverState& state, std::initializer_list<Algorithm>
                                                  allowed) {
  for (Algorithm a : allowed) {
    if (state.config().algorithm == a) return;
  }
  throw InvalidParams("iteration routine does not match configured algorithm " +
                      std::string(AlgorithmName(state.config().algorithm)));
}

void CheckTraverser(int traverser) {
  if (traverser < 0 || traverser > 1) throw InvalidParams("bad traverser");
}

}  // namespace

std::array<double, 2> ReachTraverse(SolverState& solver, State& state,
                                    std::array<double, 2> reach,
                                    double chance_reach, bool sample_chance) {
  ReachWalker walker(solver, sample_chance, -1);
  return walker.Walk(state, reach, chance_reach);
}

void CfrIteration(SolverState& state) {
  CheckAlgorithm(state, {Algorithm::kCfr, Algorithm::kCfrPlus});
  auto root = state.game().NewInitialState();
  ReachWalker(state, false, -1).Walk(*root, {1.0, 1.0}, 1.0);
  state.FinishIteration();
}

void CfvfpIteration(SolverState& state) {
  CheckAlgorithm(state, {Algorithm::kCfvfp, Algorithm::kCfvfpPlus});
  auto root = state.game().NewInitialState();
  ReachWalker(state, false, -1).Walk(*root, {1.0, 1.0}, 1.0);
  state.FinishIteration();
}

void MccfrEsIteration(SolverState& state, int traverser) {
  CheckAlgorithm(state, {Algorithm::kMccfrEs});
  CheckTraverser(traverser);
  auto root = state.game().NewInitialState();
  EsWalker(state, traverser).Walk(*root);
  state.FinishIteration();
}

void MccfvfpIteration(SolverState& state, int traverser) {
  CheckAlgorithm(state, {Algorithm::kMccfvfp, Algorithm::kMccfvfpPlus});
  CheckTraverser(traverser);
  auto root = state.game().NewInitialState();
  ReachWalker(state, true, state.config().simultaneous ? -1 : traverser)
      .Walk(*root, {1.0, 1.0}, 1.0);
  state.FinishIteration();
}

void RunIteration(SolverState& state) {
  const int traverser = static_cast<int>(state.iteration() % 2);
  switch (state.config().algorithm) {
    case Algorithm::kCfr:
    case Algorithm::kCfrPlus:
      CfrIteration(state);
      return;
    case Algorithm::kCfvfp:
    case Algorithm::kCfvfpPlus:
      CfvfpIteration(state);
      return;
    case Algorithm::kMccfrEs:
      MccfrEsIteration(state, traverser);
      return;
    case Algorithm::kMccfvfp:
    case Algorithm::kMccfvfpPlus:
      MccfvfpIteration(state, traverser);
      return;
  }
}

}  // namespace cfvfp

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

#include <cmath>
#include <memory>
#include <vector>

#include "cfvfp/errors.h"
#include "cfvfp/harness.h"

namespace cfvfp {
namespace {

double PlayEpisode(const Game& game, const StrategyProfile& minority,
                   const StrategyProfile& majority, int seat, Rng& rng) {
  auto state = game.NewInitialState();
  std::vector<double> probs;
  while (!state->IsTerminal()) {
    const int n = state->NumActions();
    probs.resize(n);
    if (state->IsChance()) {
      for (int a = 0; a < n; ++a) probs[a] = state->ChanceProbability(a);
    } else {
      const int p = state->CurrentPlayer();
      const StrategyProfile& profile = p == seat ? minority : majority;
      probs = profile.Get(p, state->Key(), n);
    }
    state->ApplyAction(n == 1 ? 0 : rng.SampleIndex(probs));
  }
  return state->Payoff(seat);
}

void MeanAndError(const std::vector<double>& x, double* mean, double* se) {
  const double n = static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += v;
  m /= n;
  double var = 0.0;
  for (double v : x) var += (v - m) * (v - m);
  *mean = m;
  *se = x.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
}

}  // namespace

MatchResult RunMatch(const Game& game, const StrategyProfile& a,
                     const StrategyProfile& b, const MatchConfig& config) {
  if (config.episodes < 1) throw ConfigError("episodes must be >= 1");
  if (config.players != game.NumPlayers()) {
    throw ConfigError("game has " + std::to_string(game.NumPlayers()) +
                      " players, match asked for " +
                      std::to_string(config.players));
  }
  if (a.num_players() != game.NumPlayers() ||
      b.num_players() != game.NumPlayers()) {
    throw ConfigError("profile player count differs from game");
  }
  Rng rng(config.seed);
  MatchResult result;
  std::vector<double> first, second;
  first.reserve(config.episodes);
  second.reserve(config.episodes);
  for (int competition = 1; competition <= 2; ++competition) {
    const StrategyProfile& minority = competition == 1 ? a : b;
    const StrategyProfile& majority = competition == 1 ? b : a;
    auto& payoffs = competition == 1 ? first : second;
    for (std::int64_t e = 0; e < config.episodes; ++e) {
      const int seat = rng.UniformInt(config.players);
      const double u = PlayEpisode(game, minority, majority, seat, rng);
      payoffs.push_back(u);
      if (config.keep_log) result.log.push_back({competition, seat, u});
    }
  }
  MeanAndError(first, &result.r1, &result.r1_se);
  MeanAndError(second, &result.r2, &result.r2_se);
  return result;
}

}  // namespace cfvfp

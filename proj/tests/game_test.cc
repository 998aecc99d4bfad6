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
#include <functional>
#include <memory>
#include <set>
#include <vector>

#include "cfvfp/errors.h"
#include "cfvfp/game_tree.h"
#include "cfvfp/games.h"
#include "cfvfp/normal_form.h"
#include "cfvfp/rng.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace cfvfp {
namespace {

using testing::Chance;
using testing::Decision;
using testing::TableGame;
using testing::TableNode;
using testing::Terminal;

StrategyProfile RandomProfile(const Game& game, std::uint64_t seed) {
  Rng rng(seed);
  StrategyProfile profile(game.NumPlayers());
  for (int p = 0; p < game.NumPlayers(); ++p) {
    for (const auto& info : testing::OracleInfoSets(game, p)) {
      Policy policy(info.num_actions);
      double sum = 0.0;
      for (double& x : policy) sum += (x = 0.05 + rng.Uniform());
      for (double& x : policy) x /= sum;
      profile.Set(p, info.key, policy);
    }
  }
  return profile;
}

TEST(StrategyProfileTest, DefaultsToUniform) {
  StrategyProfile profile;
  EXPECT_EQ(profile.Find(0, "x"), nullptr);
  EXPECT_EQ(profile.Get(1, "x", 4), Policy(4, 0.25));
  profile.Set(0, "x", {0.25, 0.75});
  ASSERT_NE(profile.Find(0, "x"), nullptr);
  EXPECT_DOUBLE_EQ(profile.Prob(0, "x", 1, 2), 0.75);
  EXPECT_DOUBLE_EQ(profile.Prob(1, "x", 1, 2), 0.5);
}

TEST(StrategyProfileTest, RejectsBadPolicies) {
  StrategyProfile profile;
  EXPECT_THROW(profile.Set(0, "x", {0.5, 0.6}), InvalidParams);
  EXPECT_THROW(profile.Set(0, "x", {1.5, -0.5}), InvalidParams);
  EXPECT_THROW(profile.Set(2, "x", {1.0}), InvalidParams);
  EXPECT_TRUE(IsProbabilityVector(std::vector<double>{0.3, 0.7}));
  EXPECT_FALSE(IsProbabilityVector(std::vector<double>{}));
}

TEST(EnumerateTreeTest, SingleTerminal) {
  TableGame game({Terminal(0.0)});
  const TreeCensus c = EnumerateTree(game);
  EXPECT_EQ(c.nodes, 1);
  EXPECT_EQ(c.terminals, 1);
  EXPECT_EQ(c.TotalInfosets(), 0);
}

TEST(EnumerateTreeTest, KuhnCounts) {
  const TreeCensus c = EnumerateTree(KuhnExtGame({3, 1, 1}));
  EXPECT_EQ(c.TotalInfosets(), 12);
  EXPECT_EQ(c.nodes, 55);
  EXPECT_EQ(c.chance_nodes, 1);
  EXPECT_EQ(c.terminals, 30);
  EXPECT_EQ(c.infosets[0], 6);
  EXPECT_EQ(c.infosets[1], 6);
}

TEST(EnumerateTreeTest, Deterministic) {
  LeducExtGame game({3, 1, 1});
  const TreeCensus a = EnumerateTree(game);
  const TreeCensus b = EnumerateTree(game);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.infosets, b.infosets);
  EXPECT_EQ(a.decision_nodes, b.decision_nodes);
  const GameTree ta = BuildGameTree(game);
  const GameTree tb = BuildGameTree(game);
  EXPECT_EQ(ta.keys, tb.keys);
}

TEST(EnumerateTreeTest, CapThrows) {
  EXPECT_THROW(EnumerateTree(KuhnExtGame({3, 1, 1}), 54), TreeTooLarge);
  EXPECT_NO_THROW(EnumerateTree(KuhnExtGame({3, 1, 1}), 55));
  EXPECT_THROW(BuildGameTree(KuhnExtGame({3, 1, 1}), 10), TreeTooLarge);
}

TEST(EnumerateTreeTest, RejectsNonZeroSum) {
  TableNode t = Terminal(1.0);
  t.payoffs = {1.0, 0.0};
  TableGame game({Decision(0, "a", {1, 2}), Terminal(0.0), t});
  EXPECT_THROW(EnumerateTree(game), InvalidGame);
}

TEST(EnumerateTreeTest, RejectsBadChance) {
  TableGame game({Chance({0.5, 0.4}, {1, 2}), Terminal(0.0), Terminal(1.0)});
  EXPECT_THROW(EnumerateTree(game), InvalidGame);
  TableGame zero({Chance({1.0, 0.0}, {1, 2}), Terminal(0.0), Terminal(1.0)});
  EXPECT_THROW(EnumerateTree(zero), InvalidGame);
}

TEST(EnumerateTreeTest, RejectsArityMismatch) {
  TableGame game({Chance({0.5, 0.5}, {1, 2}), Decision(0, "a", {3, 3}),
                  Decision(0, "a", {3, 3, 3}), Terminal(0.0)});
  EXPECT_THROW(EnumerateTree(game), InvalidGame);
}

TEST(PerfectRecallTest, BuiltInGamesHaveIt) {
  EXPECT_TRUE(HasPerfectRecall(KuhnExtGame({4, 2, 2})));
  EXPECT_TRUE(HasPerfectRecall(LeducExtGame({3, 1, 1})));
  EXPECT_TRUE(HasPerfectRecall(PamGame({})));
}

TEST(PerfectRecallTest, DetectsForgetfulPlayer) {
  TableGame game({Decision(0, "a", {1, 2}), Decision(0, "b", {3, 3}),
                  Decision(0, "b", {3, 3}), Terminal(0.0)});
  EXPECT_FALSE(HasPerfectRecall(game));
}

TEST(ReachTest, RootIsAllOnes) {
  KuhnExtGame game({3, 1, 1});
  const ReachFactors r = ReachProbabilities(game, StrategyProfile(), {});
  EXPECT_EQ(r.chance, 1.0);
  EXPECT_EQ(r.players, std::vector<double>({1.0, 1.0}));
}

TEST(ReachTest, KuhnDealThenOneDecision) {
  KuhnExtGame game({3, 1, 1});
  const std::vector<int> path = {0, 0};
  const ReachFactors r = ReachProbabilities(game, StrategyProfile(), path);
  EXPECT_DOUBLE_EQ(r.chance, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.players[0], 0.5);
  EXPECT_DOUBLE_EQ(r.players[1], 1.0);
  EXPECT_DOUBLE_EQ(r.Total(), 1.0 / 12.0);
  EXPECT_DOUBLE_EQ(r.Counterfactual(0), 1.0 / 6.0);
}

TEST(ReachTest, FactorizationOnAllStates) {
  for (const auto& sel : {"kuhn:x=4,y=2,z=2", "leduc:x=3,y=1,z=1"}) {
    const GameSelection g = ParseGameSelector(sel);
    const StrategyProfile profile = RandomProfile(*g.game, 17);
    std::vector<int> path;
    int checked = 0;
    std::function<void(State&, double)> walk = [&](State& s, double naive) {
      const ReachFactors r = ReachProbabilities(*g.game, profile, path);
      ASSERT_NEAR(r.Total(), naive, 1e-15);
      ++checked;
      if (s.IsTerminal()) return;
      for (int a = 0; a < s.NumActions(); ++a) {
        const double p =
            s.IsChance()
                ? s.ChanceProbability(a)
                : profile.Prob(s.CurrentPlayer(), s.Key(), a, s.NumActions());
        path.push_back(a);
        s.ApplyAction(a);
        walk(s, naive * p);
        s.UndoAction();
        path.pop_back();
      }
    };
    auto root = g.game->NewInitialState();
    walk(*root, 1.0);
    EXPECT_EQ(checked, EnumerateTree(*g.game).nodes);
  }
}

TEST(ReachTest, PureProfileGivesBinaryFactors) {
  KuhnExtGame game({3, 1, 1});
  StrategyProfile profile;
  for (int p = 0; p < 2; ++p) {
    for (const auto& info : testing::OracleInfoSets(game, p)) {
      Policy policy(info.num_actions, 0.0);
      policy.back() = 1.0;
      profile.Set(p, info.key, policy);
    }
  }
  for (const std::vector<int>& path :
       {std::vector<int>{2, 0}, {2, 1, 0}, {3, 1, 1}, {5, 0, 1, 0}}) {
    const ReachFactors r = ReachProbabilities(game, profile, path);
    for (double x : r.players) EXPECT_TRUE(x == 0.0 || x == 1.0);
  }
  EXPECT_THROW(ReachProbabilities(game, profile, std::vector<int>{9}),
               InvalidParams);
}

TEST(ExpectedValueTest, RpsUniformIsZero) {
  MatrixTreeGame game(RockPaperScissors());
  const auto v = ExpectedValue(game, StrategyProfile());
  EXPECT_NEAR(v[0], 0.0, 1e-12);
  EXPECT_NEAR(v[1], 0.0, 1e-12);
}

TEST(ExpectedValueTest, MatchesOracle) {
  for (const auto& sel : {"kuhn:x=3,y=1,z=1", "kuhn:x=5,y=3,z=2",
                          "leduc:x=3,y=1,z=1", "pam:rounds=2"}) {
    const GameSelection g = ParseGameSelector(sel);
    for (std::uint64_t seed : {0u, 1u}) {
      const StrategyProfile profile =
          seed == 0 ? StrategyProfile() : RandomProfile(*g.game, seed);
      const auto want = testing::OracleExpectedValue(*g.game, profile);
      const auto got = ExpectedValue(*g.game, profile);
      EXPECT_NEAR(got[0], want[0], 1e-12) << sel;
      EXPECT_NEAR(got[0] + got[1], 0.0, 1e-9) << sel;
      const GameTree tree = BuildGameTree(*g.game);
      const auto via_tree =
          TreeExpectedValue(tree, ProjectProfile(tree, profile));
      EXPECT_NEAR(via_tree[0], want[0], 1e-12) << sel;
    }
  }
}

TEST(GameTreeTest, MatchesCensus) {
  LeducExtGame game({3, 1, 1});
  const TreeCensus c = EnumerateTree(game);
  const GameTree tree = BuildGameTree(game);
  EXPECT_EQ(static_cast<std::int64_t>(tree.nodes.size()), c.nodes);
  for (int p = 0; p < 2; ++p) {
    EXPECT_EQ(tree.NumInfosets(p), c.infosets[p]);
    std::int64_t members = 0;
    for (const auto& m : tree.members[p]) members += m.size();
    EXPECT_EQ(members, c.decision_nodes[p]);
  }
  for (std::size_t id = 1; id < tree.nodes.size(); ++id) {
    const TreeNode& n = tree.nodes[id];
    ASSERT_GE(n.parent, 0);
    EXPECT_EQ(tree.Child(n.parent, n.parent_action),
              static_cast<std::int64_t>(id));
    EXPECT_EQ(n.depth, tree.nodes[n.parent].depth + 1);
  }
}

TEST(GameTreeTest, ProfileRoundTrip) {
  KuhnExtGame game({3, 1, 1});
  const GameTree tree = BuildGameTree(game);
  const StrategyProfile profile = RandomProfile(game, 5);
  const TreeProfile projected = ProjectProfile(tree, profile);
  const StrategyProfile back = ToStrategyProfile(tree, projected);
  for (int p = 0; p < 2; ++p) {
    for (const auto& [key, policy] : profile.table(p)) {
      ASSERT_NE(back.Find(p, key), nullptr);
      EXPECT_EQ(*back.Find(p, key), policy);
      EXPECT_GE(tree.FindInfoset(p, key), 0);
    }
  }
  EXPECT_EQ(tree.FindInfoset(0, "no such key"), -1);
}

}  // namespace
}  // namespace cfvfp

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

#include <memory>
#include <string>
#include <vector>

#include "cfvfp/errors.h"
#include "cfvfp/metrics.h"
#include "cfvfp/rng.h"

namespace cfvfp {
namespace {

std::int64_t Power(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool IsOneHot(const Policy& p) {
  int ones = 0;
  for (double x : p) {
    if (x == 1.0) {
      ++ones;
    } else if (x != 0.0) {
      return false;
    }
  }
  return ones == 1;
}

void Fill(CensusPrediction& c) {
  c.pass = c.red + c.blue + c.yellow;
  c.layer = Power(c.g, c.h - 1);
  c.all = (Power(c.g, c.h) - 1) / (c.g - 1);
}

class CompleteTreeState : public State {
 public:
  explicit CompleteTreeState(const CompleteTreeGame& game) : game_(game) {}

  NodeKind Kind() const override {
    return static_cast<int>(path_.size()) + 1 >= game_.h()
               ? NodeKind::kTerminal
               : NodeKind::kDecision;
  }
  int CurrentPlayer() const override {
    return static_cast<int>(path_.size() % 2);
  }
  int NumActions() const override {
    return Kind() == NodeKind::kTerminal ? 0 : game_.g();
  }
  double ChanceProbability(int) const override { return 0.0; }
  double Payoff(int player) const override {
    std::uint64_t x = game_.payoff_seed();
    for (char c : path_) x = MixSeed(x, static_cast<unsigned char>(c));
    const double v = 2.0 * static_cast<double>(x >> 11) * 0x1.0p-53 - 1.0;
    return player == 0 ? v : -v;
  }
  std::string_view Key() const override { return path_; }
  void ApplyAction(int action) override {
    path_.push_back(static_cast<char>(action));
  }
  void UndoAction() override { path_.pop_back(); }
  std::unique_ptr<State> Clone() const override {
    return std::make_unique<CompleteTreeState>(*this);
  }

 private:
  const CompleteTreeGame& game_;
  std::string path_;
};

}  // namespace

std::int64_t ColorCensus::Pass() const {
  return total[0] + total[2] + total[3];
}

std::int64_t ColorCensus::PassAtDepth(int depth) const {
  const auto& d = by_depth.at(depth);
  return d[0] + d[2] + d[3];
}

ColorCensus CensusByColor(const GameTree& tree, const TreeProfile& profile) {
  if (tree.num_players != 2) {
    throw InvalidParams("colour census needs two players");
  }
  for (int p = 0; p < 2; ++p) {
    for (const Policy& policy : profile[p]) {
      if (!IsOneHot(policy)) throw NotPureProfile("profile is not pure");
    }
  }
  const std::size_t n = tree.nodes.size();
  std::vector<std::array<unsigned char, 2>> reach(n, {1, 1});
  std::vector<signed char> own(n, 0);
  ColorCensus census;
  for (std::size_t id = 0; id < n; ++id) {
    const TreeNode& node = tree.nodes[id];
    if (node.kind == NodeKind::kDecision) own[id] = node.player;
    const int p = own[id];
    const bool mine = reach[id][p] != 0;
    const bool theirs = reach[id][1 - p] != 0;
    NodeColor color = mine ? (theirs ? NodeColor::kRed : NodeColor::kBlue)
                           : (theirs ? NodeColor::kYellow : NodeColor::kGreen);
    if (static_cast<int>(census.by_depth.size()) <= node.depth) {
      census.by_depth.resize(node.depth + 1, {0, 0, 0, 0});
    }
    ++census.by_depth[node.depth][static_cast<int>(color)];
    ++census.total[static_cast<int>(color)];
    for (int a = 0; a < node.num_children; ++a) {
      const std::int64_t child = tree.Child(id, a);
      reach[child] = reach[id];
      if (node.kind == NodeKind::kDecision) {
        if (profile[node.player][node.infoset][a] == 0.0) {
          reach[child][node.player] = 0;
        }
        own[child] = static_cast<signed char>(1 - node.player);
      } else {
        own[child] = own[id];
      }
    }
  }
  return census;
}

CensusPrediction PredictCensusClosedForm(int g, int h) {
  if (g < 2 || h < 3) {
    throw OutOfFormulaRange("closed form needs g >= 2 and h >= 3");
  }
  auto blue = [g](int layers) {
    std::int64_t s = 0;
    for (int i = 0; i <= (layers - 2) / 2; ++i) s += Power(g, i);
    return (g - 1) * s;
  };
  CensusPrediction c;
  c.g = g;
  c.h = h;
  c.red = 1;
  c.blue = blue(h);
  c.yellow = blue(h - 1);
  c.closed_form = true;
  Fill(c);
  return c;
}

CensusPrediction PredictCensusRecurrence(int g, int h) {
  if (g < 2 || h < 1) throw InvalidParams("recurrence needs g >= 2, h >= 1");
  std::int64_t blue = 0;
  std::int64_t yellow = 0;
  for (int layer = 2; layer <= h; ++layer) {
    const std::int64_t next_blue = (g - 1) + g * yellow;
    yellow = blue;
    blue = next_blue;
  }
  CensusPrediction c;
  c.g = g;
  c.h = h;
  c.red = 1;
  c.blue = blue;
  c.yellow = yellow;
  Fill(c);
  return c;
}

CensusPrediction PredictCensus(int g, int h) {
  try {
    return PredictCensusClosedForm(g, h);
  } catch (const OutOfFormulaRange&) {
    return PredictCensusRecurrence(g, h);
  }
}

CompleteTreeGame::CompleteTreeGame(int g, int h, std::uint64_t payoff_seed)
    : g_(g), h_(h), payoff_seed_(payoff_seed) {
  if (g < 1 || g > 100 || h < 1 || h > 40) {
    throw InvalidParams("complete tree needs 1 <= g <= 100 and 1 <= h <= 40");
  }
}

std::unique_ptr<State> CompleteTreeGame::NewInitialState() const {
  return std::make_unique<CompleteTreeState>(*this);
}

std::string CompleteTreeGame::Name() const {
  return "complete:g=" + std::to_string(g_) + ",h=" + std::to_string(h_);
}

}  // namespace cfvfp

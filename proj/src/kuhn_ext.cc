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

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cfvfp/errors.h"
#include "cfvfp/games.h"

namespace cfvfp {
namespace {

struct KuhnCore {
  std::array<int, 2> cards = {-1, -1};
  std::array<int, 2> contrib = {1, 1};
  int bets = 0;
  int last_size = -1;  // ladder index of the bet being faced
  bool facing = false;
  int to_act = 0;
  bool dealt = false;
  bool terminal = false;
  int folder = -1;
};

class KuhnExtState : public State {
 public:
  explicit KuhnExtState(const KuhnExtParams& params) : params_(params) {}

  NodeKind Kind() const override {
    if (!core_.dealt) return NodeKind::kChance;
    return core_.terminal ? NodeKind::kTerminal : NodeKind::kDecision;
  }

  int CurrentPlayer() const override { return core_.to_act; }

  int NumActions() const override {
    if (!core_.dealt) return params_.cards * (params_.cards - 1);
    if (core_.terminal) return 0;
    return (core_.facing ? 2 : 1) + NumBetActions();
  }

  double ChanceProbability(int) const override {
    return 1.0 / (params_.cards * (params_.cards - 1));
  }

  double Payoff(int player) const override {
    const int other = 1 - player;
    if (core_.folder >= 0) {
      return core_.folder == player ? -core_.contrib[player]
                                    : core_.contrib[other];
    }
    return core_.cards[player] > core_.cards[other] ? core_.contrib[other]
                                                    : -core_.contrib[player];
  }

  std::string_view Key() const override { return keys_[core_.to_act]; }

  void ApplyAction(int action) override {
    undo_.push_back(core_);
    if (!core_.dealt) {
      const int n = params_.cards - 1;
      core_.cards[0] = action / n;
      const int second = action % n;
      core_.cards[1] = second >= core_.cards[0] ? second + 1 : second;
      core_.dealt = true;
      for (int p = 0; p < 2; ++p) {
        keys_[p].assign(1, static_cast<char>(core_.cards[p]));
      }
      return;
    }
    const int p = core_.to_act;
    const int o = 1 - p;
    for (auto& key : keys_) key.push_back(static_cast<char>(action));
    const int base = core_.facing ? 2 : 1;
    if (action >= base) {
      const int size = core_.last_size + 1 + (action - base);
      core_.contrib[p] = core_.contrib[o] + (1 << size);
      core_.last_size = size;
      ++core_.bets;
      core_.facing = true;
      core_.to_act = o;
    } else if (!core_.facing) {
      if (p == 1) {
        core_.terminal = true;
      } else {
        core_.to_act = o;
      }
    } else if (action == 0) {
      core_.contrib[p] = core_.contrib[o];
      core_.terminal = true;
    } else {
      core_.folder = p;
      core_.terminal = true;
    }
  }

  void UndoAction() override {
    const bool was_deal = !undo_.back().dealt;
    core_ = undo_.back();
    undo_.pop_back();
    if (was_deal) {
      for (auto& key : keys_) key.clear();
    } else {
      for (auto& key : keys_) key.pop_back();
    }
  }

  std::string ActionName(int action) const override {
    if (!core_.dealt) {
      return "deal" + std::to_string(action);
    }
    const int base = core_.facing ? 2 : 1;
    if (action >= base) {
      const int size = core_.last_size + 1 + (action - base);
      return (core_.facing ? "raise" : "bet") + std::to_string(1 << size);
    }
    if (!core_.facing) return "check";
    return action == 0 ? "call" : "fold";
  }

  std::unique_ptr<State> Clone() const override {
    return std::make_unique<KuhnExtState>(*this);
  }

 private:
  int NumBetActions() const {
    if (core_.bets >= params_.raise_cap) return 0;
    return params_.bet_sizes - 1 - core_.last_size;
  }

  KuhnExtParams params_;
  KuhnCore core_;
  std::vector<KuhnCore> undo_;
  std::array<std::string, 2> keys_;
};

}  // namespace

KuhnExtGame::KuhnExtGame(KuhnExtParams params) : params_(params) {
  if (params_.cards < 3) throw InvalidParams("kuhn needs at least 3 cards");
  if (params_.bet_sizes < 1 || params_.bet_sizes > 20) {
    throw InvalidParams("kuhn bet sizes must be in [1, 20]");
  }
  if (params_.raise_cap < 1) throw InvalidParams("kuhn raise cap must be >= 1");
  if (params_.cards > 120) throw InvalidParams("kuhn supports at most 120 cards");
}

std::unique_ptr<State> KuhnExtGame::NewInitialState() const {
  return std::make_unique<KuhnExtState>(params_);
}

std::string KuhnExtGame::Name() const {
  return "kuhn:x=" + std::to_string(params_.cards) +
         ",y=" + std::to_string(params_.bet_sizes) +
         ",z=" + std::to_string(params_.raise_cap);
}

}  // namespace cfvfp

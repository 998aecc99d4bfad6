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

enum class Phase { kPrivateDeal, kAnte, kBetting, kPublicDeal, kTerminal };

constexpr char kPublicMarker = 100;

struct LeducCore {
  Phase phase = Phase::kPrivateDeal;
  std::array<int, 2> ranks = {-1, -1};
  int public_rank = -1;
  int round = 0;
  std::array<int, 2> contrib = {1, 1};
  int bets = 0;       // bets this round, opening bet included
  int open_size = 0;  // ladder index of the round's opening bet
  bool facing = false;
  int to_act = 0;
  int folder = -1;
};

class LeducExtState : public State {
 public:
  explicit LeducExtState(const LeducExtParams& params) : params_(params) {}

  NodeKind Kind() const override {
    switch (core_.phase) {
      case Phase::kPrivateDeal:
      case Phase::kAnte:
      case Phase::kPublicDeal:
        return NodeKind::kChance;
      case Phase::kBetting:
        return NodeKind::kDecision;
      case Phase::kTerminal:
        return NodeKind::kTerminal;
    }
    return NodeKind::kTerminal;
  }

  int CurrentPlayer() const override { return core_.to_act; }

  int NumActions() const override {
    const int x = params_.ranks;
    switch (core_.phase) {
      case Phase::kPrivateDeal:
        return x * x;
      case Phase::kAnte:
        return 1;
      case Phase::kPublicDeal:
        return core_.ranks[0] == core_.ranks[1] ? x - 1 : x;
      case Phase::kBetting:
        if (!core_.facing) return 1 + params_.bet_sizes;
        return core_.bets <= params_.raise_cap ? 3 : 2;
      case Phase::kTerminal:
        return 0;
    }
    return 0;
  }

  double ChanceProbability(int action) const override {
    const double x = params_.ranks;
    switch (core_.phase) {
      case Phase::kPrivateDeal: {
        const bool pair = action / params_.ranks == action % params_.ranks;
        return (pair ? 1.0 : 2.0) / (x * (2.0 * x - 1.0));
      }
      case Phase::kPublicDeal:
        return RemainingCopies(PublicRank(action)) / (2.0 * x - 2.0);
      default:
        return 1.0;
    }
  }

  double Payoff(int player) const override {
    const int other = 1 - player;
    if (core_.folder >= 0) {
      return core_.folder == player ? -core_.contrib[player]
                                    : core_.contrib[other];
    }
    const int mine = Strength(core_.ranks[player]);
    const int theirs = Strength(core_.ranks[other]);
    if (mine == theirs) return 0.0;
    return mine > theirs ? core_.contrib[other] : -core_.contrib[player];
  }

  std::string_view Key() const override { return keys_[core_.to_act]; }

  void ApplyAction(int action) override {
    undo_.push_back(core_);
    switch (core_.phase) {
      case Phase::kPrivateDeal:
        core_.ranks[0] = action / params_.ranks;
        core_.ranks[1] = action % params_.ranks;
        for (int p = 0; p < 2; ++p) {
          keys_[p].assign(1, static_cast<char>(core_.ranks[p]));
        }
        core_.phase = Phase::kAnte;
        return;
      case Phase::kAnte:
        core_.phase = Phase::kBetting;
        return;
      case Phase::kPublicDeal:
        core_.public_rank = PublicRank(action);
        for (auto& key : keys_) {
          key.push_back(kPublicMarker);
          key.push_back(static_cast<char>(core_.public_rank));
        }
        core_.phase = Phase::kBetting;
        core_.round = 1;
        core_.bets = 0;
        core_.facing = false;
        core_.to_act = 0;
        return;
      case Phase::kBetting:
        ApplyBet(action);
        return;
      case Phase::kTerminal:
        throw InvalidParams("action at terminal");
    }
  }

  void UndoAction() override {
    const Phase before = undo_.back().phase;
    core_ = undo_.back();
    undo_.pop_back();
    if (before == Phase::kPrivateDeal) {
      for (auto& key : keys_) key.clear();
    } else if (before == Phase::kPublicDeal) {
      for (auto& key : keys_) key.resize(key.size() - 2);
    } else if (before == Phase::kBetting) {
      for (auto& key : keys_) key.pop_back();
    }
  }

  std::string ActionName(int action) const override {
    switch (core_.phase) {
      case Phase::kPrivateDeal:
        return "deal" + std::to_string(action / params_.ranks) + "," +
               std::to_string(action % params_.ranks);
      case Phase::kAnte:
        return "ante";
      case Phase::kPublicDeal:
        return "public" + std::to_string(PublicRank(action));
      case Phase::kBetting:
        if (!core_.facing) {
          return action == 0 ? "check"
                             : "bet" + std::to_string(BetAmount(action - 1));
        }
        if (action == 0) return "call";
        if (action == 1) return "fold";
        return "raise" + std::to_string(BetAmount(core_.open_size));
      case Phase::kTerminal:
        break;
    }
    return "none";
  }

  std::unique_ptr<State> Clone() const override {
    return std::make_unique<LeducExtState>(*this);
  }

 private:
  int BetAmount(int size) const { return (core_.round == 0 ? 2 : 4) << size; }

  int RemainingCopies(int rank) const {
    return 2 - (core_.ranks[0] == rank) - (core_.ranks[1] == rank);
  }

  int PublicRank(int action) const {
    for (int r = 0; r < params_.ranks; ++r) {
      if (RemainingCopies(r) > 0 && action-- == 0) return r;
    }
    return -1;
  }

  // Pairs with the public card rank above every high card.
  int Strength(int rank) const {
    return rank == core_.public_rank ? params_.ranks + rank : rank;
  }

  void EndRound() {
    if (core_.round == 0) {
      core_.phase = Phase::kPublicDeal;
    } else {
      core_.phase = Phase::kTerminal;
    }
  }

  void ApplyBet(int action) {
    const int p = core_.to_act;
    const int o = 1 - p;
    for (auto& key : keys_) key.push_back(static_cast<char>(action));
    if (!core_.facing) {
      if (action == 0) {
        if (p == 1) {
          EndRound();
        } else {
          core_.to_act = o;
        }
        return;
      }
      core_.open_size = action - 1;
      core_.contrib[p] = core_.contrib[o] + BetAmount(core_.open_size);
      core_.bets = 1;
      core_.facing = true;
      core_.to_act = o;
      return;
    }
    if (action == 0) {
      core_.contrib[p] = core_.contrib[o];
      EndRound();
    } else if (action == 1) {
      core_.folder = p;
      core_.phase = Phase::kTerminal;
    } else {
      core_.contrib[p] = core_.contrib[o] + BetAmount(core_.open_size);
      ++core_.bets;
      core_.to_act = o;
    }
  }

  LeducExtParams params_;
  LeducCore core_;
  std::vector<LeducCore> undo_;
  std::array<std::string, 2> keys_;
};

}  // namespace

LeducExtGame::LeducExtGame(LeducExtParams params) : params_(params) {
  if (params_.ranks < 3 || params_.ranks > 90) {
    throw InvalidParams("leduc ranks must be in [3, 90]");
  }
  if (params_.bet_sizes < 1 || params_.bet_sizes > 20) {
    throw InvalidParams("leduc bet sizes must be in [1, 20]");
  }
  if (params_.raise_cap < 0) throw InvalidParams("leduc raise cap must be >= 0");
}

std::unique_ptr<State> LeducExtGame::NewInitialState() const {
  return std::make_unique<LeducExtState>(params_);
}

std::string LeducExtGame::Name() const {
  return "leduc:x=" + std::to_string(params_.ranks) +
         ",y=" + std::to_string(params_.bet_sizes) +
         ",z=" + std::to_string(params_.raise_cap);
}

}  // namespace cfvfp

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

#include <algorithm>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cfvfp/errors.h"
#include "cfvfp/games.h"

namespace cfvfp {
namespace {

struct PamCore {
  int round = 0;  // 0-based
  int to_act = PamGame::kPrincess;
  std::array<int, 2> cell = {-1, -1};
  bool terminal = false;
  int princess_payoff = 0;
};

class PamState : public State {
 public:
  explicit PamState(const PamGame& game) : game_(game) {}

  NodeKind Kind() const override {
    return core_.terminal ? NodeKind::kTerminal : NodeKind::kDecision;
  }

  int CurrentPlayer() const override { return core_.to_act; }

  int NumActions() const override {
    if (core_.terminal) return 0;
    const int cell = core_.cell[core_.to_act];
    return cell < 0 ? game_.NumCells()
                    : static_cast<int>(game_.Targets(cell).size());
  }

  double ChanceProbability(int) const override { return 0.0; }

  double Payoff(int player) const override {
    return player == PamGame::kPrincess ? core_.princess_payoff
                                        : -core_.princess_payoff;
  }

  std::string_view Key() const override { return keys_[core_.to_act]; }

  void ApplyAction(int action) override {
    undo_.push_back(core_);
    const int p = core_.to_act;
    const int from = core_.cell[p];
    const int to = from < 0 ? action : game_.Targets(from)[action];
    core_.cell[p] = to;
    keys_[p].push_back(static_cast<char>(to));
    if (p == PamGame::kPrincess) {
      core_.to_act = PamGame::kMonster;
      return;
    }
    if (core_.cell[0] == core_.cell[1]) {
      core_.terminal = true;
      core_.princess_payoff = core_.round + 1;
    } else if (core_.round + 1 >= game_.params().rounds) {
      core_.terminal = true;
      core_.princess_payoff = game_.params().rounds;
    } else {
      ++core_.round;
      core_.to_act = PamGame::kPrincess;
    }
  }

  void UndoAction() override {
    core_ = undo_.back();
    undo_.pop_back();
    keys_[core_.to_act].pop_back();
  }

  std::string ActionName(int action) const override {
    const int from = core_.cell[core_.to_act];
    const int to = from < 0 ? action : game_.Targets(from)[action];
    const auto [r, c] = game_.CellCoords(to);
    return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
  }

  std::unique_ptr<State> Clone() const override {
    return std::make_unique<PamState>(*this);
  }

 private:
  const PamGame& game_;
  PamCore core_;
  std::vector<PamCore> undo_;
  std::array<std::string, 2> keys_;
};

}  // namespace

PamGame::PamGame(PamParams params) : params_(std::move(params)) {
  if (params_.rounds < 1) throw InvalidParams("pam needs rounds >= 1");
  if (params_.grid_rows < 1 || params_.grid_cols < 1) {
    throw InvalidParams("pam grid must be non-empty");
  }
  for (int r = 0; r < params_.grid_rows; ++r) {
    for (int c = 0; c < params_.grid_cols; ++c) {
      const bool blocked =
          std::find(params_.blocked.begin(), params_.blocked.end(),
                    std::make_pair(r, c)) != params_.blocked.end();
      if (!blocked) cells_.emplace_back(r, c);
    }
  }
  if (cells_.empty()) throw InvalidParams("pam grid has no passable cell");
  if (cells_.size() > 120) throw InvalidParams("pam grid too large");
  static constexpr std::array<std::pair<int, int>, 5> kMoves = {
      {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
  targets_.resize(cells_.size());
  for (int i = 0; i < NumCells(); ++i) {
    for (const auto& [dr, dc] : kMoves) {
      const int to = CellAt(cells_[i].first + dr, cells_[i].second + dc);
      if (to >= 0) targets_[i].push_back(to);
    }
  }
}

int PamGame::CellAt(int row, int col) const {
  auto it = std::find(cells_.begin(), cells_.end(), std::make_pair(row, col));
  return it == cells_.end() ? -1 : static_cast<int>(it - cells_.begin());
}

std::unique_ptr<State> PamGame::NewInitialState() const {
  return std::make_unique<PamState>(*this);
}

std::string PamGame::Name() const {
  return "pam:rounds=" + std::to_string(params_.rounds);
}

}  // namespace cfvfp

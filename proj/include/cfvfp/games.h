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

#ifndef CFVFP_GAMES_H_
#define CFVFP_GAMES_H_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfvfp/game.h"
#include "cfvfp/normal_form.h"

namespace cfvfp {

// Bet sizes are the ladder 1, 2, 4, ... 2^(bet_sizes-1) in ante units.
struct KuhnExtParams {
  int cards = 3;
  int bet_sizes = 1;
  int raise_cap = 1;  // bets per hand, opening bet included
};

// Kuhn poker with x cards, y bet sizes and up to z bets. Each raise must
// use a strictly larger size than the bet it answers.
class KuhnExtGame : public Game {
 public:
  explicit KuhnExtGame(KuhnExtParams params);
  int NumPlayers() const override { return 2; }
  std::unique_ptr<State> NewInitialState() const override;
  std::string Name() const override;
  const KuhnExtParams& params() const { return params_; }

 private:
  KuhnExtParams params_;
};

// Two betting rounds, x ranks with two copies each. Round bet units are 2
// and 4 ante. Each round opens with any ladder size and allows up to
// raise_cap re-raises of that size.
struct LeducExtParams {
  int ranks = 3;
  int bet_sizes = 1;
  int raise_cap = 1;
};

class LeducExtGame : public Game {
 public:
  explicit LeducExtGame(LeducExtParams params);
  int NumPlayers() const override { return 2; }
  std::unique_ptr<State> NewInitialState() const override;
  std::string Name() const override;
  const LeducExtParams& params() const { return params_; }

 private:
  LeducExtParams params_;
};

struct PamParams {
  int grid_rows = 3;
  int grid_cols = 3;
  std::vector<std::pair<int, int>> blocked = {{0, 0}, {0, 2}};
  int rounds = 4;
};

// Princess (player 0) and monster (player 1) on a grid with hidden
// positions. Each round the princess acts, then the monster; the first
// round places both. Capture in round k (1-based) pays the princess k,
// surviving all rounds pays `rounds`.
class PamGame : public Game {
 public:
  static constexpr int kPrincess = 0;
  static constexpr int kMonster = 1;

  explicit PamGame(PamParams params);
  int NumPlayers() const override { return 2; }
  std::unique_ptr<State> NewInitialState() const override;
  std::string Name() const override;
  const PamParams& params() const { return params_; }

  int NumCells() const { return static_cast<int>(cells_.size()); }
  std::pair<int, int> CellCoords(int cell) const { return cells_[cell]; }
  int CellAt(int row, int col) const;  // -1 when blocked or off-grid
  // Reachable cells in action order: stay, up, down, left, right.
  const std::vector<int>& Targets(int cell) const { return targets_[cell]; }

 private:
  PamParams params_;
  std::vector<std::pair<int, int>> cells_;
  std::vector<std::vector<int>> targets_;
};

// A matrix game as a two-level tree: the row player moves, then the column
// player moves without observing it.
class MatrixTreeGame : public Game {
 public:
  explicit MatrixTreeGame(MatrixGame matrix, std::string name = "matrix");
  int NumPlayers() const override { return 2; }
  std::unique_ptr<State> NewInitialState() const override;
  std::string Name() const override { return name_; }
  const MatrixGame& matrix() const { return matrix_; }

  static constexpr std::string_view kRowKey = "row";
  static constexpr std::string_view kColKey = "col";

 private:
  MatrixGame matrix_;
  std::string name_;
};

struct GameSelection {
  std::string canonical;
  std::shared_ptr<const Game> game;
  // Set for matrix selectors; `game` then holds the lifted tree.
  std::shared_ptr<const MatrixGame> matrix;
};

// Parses selectors such as "kuhn:x=3,y=1,z=1", "leduc:x=3,y=1,z=1",
// "pam:rounds=4", "rps", "rps-lr" and
// "randmat:n=100,m=100,boost=5,rows=10,seed=1". Throws ConfigError.
GameSelection ParseGameSelector(std::string_view selector);

}  // namespace cfvfp

#endif  // CFVFP_GAMES_H_

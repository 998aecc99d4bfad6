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

#ifndef CFVFP_NORMAL_FORM_H_
#define CFVFP_NORMAL_FORM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfvfp/game.h"
#include "cfvfp/rng.h"

namespace cfvfp {

// Two-player zero-sum matrix game. Entry (r, c) is the row player's payoff.
class MatrixGame {
 public:
  MatrixGame(std::vector<std::vector<double>> payoffs,
             std::vector<std::string> row_labels = {},
             std::vector<std::string> col_labels = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int NumActions(int player) const { return player == 0 ? rows_ : cols_; }
  double operator()(int r, int c) const { return data_[r * cols_ + c]; }
  const std::string& RowLabel(int r) const { return row_labels_[r]; }
  const std::string& ColLabel(int c) const { return col_labels_[c]; }

  // Row player's payoff per row against a column mixture.
  std::vector<double> RowPayoffs(std::span<const double> col_policy) const;
  // Column player's payoff per column against a row mixture.
  std::vector<double> ColPayoffs(std::span<const double> row_policy) const;
  // Player `player`'s payoff vector against the opponent's pure action.
  std::vector<double> PurePayoffs(int player, int opponent_action) const;
  double Value(std::span<const double> row_policy,
               std::span<const double> col_policy) const;

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

enum class LearnerKind { kRegretMatching, kFictitiousPlay };

// One player's learner. `current` is the policy played this round.
struct LearnerState {
  LearnerKind kind = LearnerKind::kRegretMatching;
  std::vector<double> cumulative;  // regrets (RM) or payoff sums (FP)
  std::vector<double> average_sum;
  Policy current;
  std::int64_t t = 0;

  static LearnerState Make(LearnerKind kind, int num_actions);
  int num_actions() const { return static_cast<int>(cumulative.size()); }
};

// Regret matching on the positive part of the cumulative regrets; uniform
// when none is positive.
Policy RmNextPolicy(const LearnerState& state);
// Best response to the cumulative payoffs, ties broken uniformly.
int FpNextAction(const LearnerState& state, Rng& rng);
// Folds the current policy into the learner given the payoff vector it
// faced. Throws DimensionMismatch on a wrong-length vector.
void LearnerObserve(LearnerState& state, std::span<const double> payoffs);
// Sets `current` to the learner's next policy.
void LearnerAdvance(LearnerState& state, Rng& rng);
Policy AveragePolicy(const LearnerState& state);

struct NfExploitability {
  double total = 0.0;
  double row = 0.0;
  double col = 0.0;
};

NfExploitability ExploitabilityNf(const MatrixGame& game,
                                  std::span<const double> row_policy,
                                  std::span<const double> col_policy);

// Pure actions strictly dominated by another pure action.
std::vector<int> FindDominatedPure(const MatrixGame& game, int player);

enum class Clarity { kClear, kTangled };

struct ClarityReport {
  Clarity clarity = Clarity::kTangled;
  int non_dominated = 0;
  int actions = 0;
};

// Clear iff the non-dominated count is at most sqrt of the action count.
ClarityReport ClassifyClear(const MatrixGame& game, int player);

// Entries uniform on [-1, 1].
MatrixGame GenRandomMatrix(int rows, int cols, std::uint64_t seed);
// Random matrix with `boost` added to the first `boosted_rows` rows.
MatrixGame GenBoostedMatrix(int rows, int cols, int boosted_rows,
                            double boost, std::uint64_t seed);
MatrixGame RockPaperScissors();
// Rock-paper-scissors with a fourth row equal to Rock minus 0.1.
MatrixGame RpsLeakyRock();

struct NfTracePoint {
  std::int64_t iteration = 0;
  double exploitability = 0.0;
  std::int64_t elapsed_ns = 0;
};

struct SelfPlayResult {
  std::vector<NfTracePoint> trace;
  LearnerState row;
  LearnerState col;
};

// Simultaneous self-play. Exploitability of the average profile is
// recorded every `cadence` iterations and after the last one.
SelfPlayResult SelfPlay(const MatrixGame& game, LearnerKind kind,
                        std::int64_t iterations, std::int64_t cadence,
                        Rng& rng);

}  // namespace cfvfp

#endif  // CFVFP_NORMAL_FORM_H_

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

#include "cfvfp/normal_form.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "cfvfp/errors.h"

namespace cfvfp {

MatrixGame::MatrixGame(std::vector<std::vector<double>> payoffs,
                       std::vector<std::string> row_labels,
                       std::vector<std::string> col_labels)
    : rows_(static_cast<int>(payoffs.size())),
      cols_(payoffs.empty() ? 0 : static_cast<int>(payoffs[0].size())),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  if (rows_ < 1 || cols_ < 1) throw InvalidParams("empty matrix game");
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : payoffs) {
    if (static_cast<int>(row.size()) != cols_) {
      throw DimensionMismatch("ragged payoff matrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (row_labels_.empty()) {
    for (int r = 0; r < rows_; ++r) row_labels_.push_back(std::to_string(r));
  }
  if (col_labels_.empty()) {
    for (int c = 0; c < cols_; ++c) col_labels_.push_back(std::to_string(c));
  }
  if (static_cast<int>(row_labels_.size()) != rows_ ||
      static_cast<int>(col_labels_.size()) != cols_) {
    throw DimensionMismatch("label count differs from matrix shape");
  }
}

std::vector<double> MatrixGame::RowPayoffs(
    std::span<const double> col_policy) const {
  if (static_cast<int>(col_policy.size()) != cols_) {
    throw DimensionMismatch("column policy length");
  }
  std::vector<double> out(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    const double* row = &data_[static_cast<std::size_t>(r) * cols_];
    double v = 0.0;
    for (int c = 0; c < cols_; ++c) v += row[c] * col_policy[c];
    out[r] = v;
  }
  return out;
}

std::vector<double> MatrixGame::ColPayoffs(
    std::span<const double> row_policy) const {
  if (static_cast<int>(row_policy.size()) != rows_) {
    throw DimensionMismatch("row policy length");
  }
  std::vector<double> out(cols_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    const double w = row_policy[r];
    if (w == 0.0) continue;
    const double* row = &data_[static_cast<std::size_t>(r) * cols_];
    for (int c = 0; c < cols_; ++c) out[c] -= w * row[c];
  }
  return out;
}

std::vector<double> MatrixGame::PurePayoffs(int player,
                                            int opponent_action) const {
  if (player == 0) {
    std::vector<double> out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, opponent_action);
    return out;
  }
  std::vector<double> out(cols_);
  for (int c = 0; c < cols_; ++c) out[c] = -(*this)(opponent_action, c);
  return out;
}

double MatrixGame::Value(std::span<const double> row_policy,
                         std::span<const double> col_policy) const {
  const std::vector<double> rp = RowPayoffs(col_policy);
  double v = 0.0;
  for (int r = 0; r < rows_; ++r) v += row_policy[r] * rp[r];
  return v;
}

LearnerState LearnerState::Make(LearnerKind kind, int num_actions) {
  if (num_actions < 1) throw InvalidParams("learner needs actions");
  LearnerState s;
  s.kind = kind;
  s.cumulative.assign(num_actions, 0.0);
  s.average_sum.assign(num_actions, 0.0);
  s.current.assign(num_actions, 1.0 / num_actions);
  return s;
}

Policy RmNextPolicy(const LearnerState& state) {
  const int n = state.num_actions();
  Policy p(n, 0.0);
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    p[a] = std::max(state.cumulative[a], 0.0);
    total += p[a];
  }
  if (total > 0.0) {
    for (double& x : p) x /= total;
  } else {
    std::fill(p.begin(), p.end(), 1.0 / n);
  }
  return p;
}

int FpNextAction(const LearnerState& state, Rng& rng) {
  const auto& q = state.cumulative;
  const double best = *std::max_element(q.begin(), q.end());
  int ties = 0;
  for (double v : q) ties += (v == best);
  int pick = ties == 1 ? 0 : rng.UniformInt(ties);
  for (int a = 0; a < static_cast<int>(q.size()); ++a) {
    if (q[a] == best && pick-- == 0) return a;
  }
  return 0;
}

void LearnerObserve(LearnerState& state, std::span<const double> payoffs) {
  const int n = state.num_actions();
  if (static_cast<int>(payoffs.size()) != n) {
    throw DimensionMismatch("payoff vector length differs from action count");
  }
  if (state.kind == LearnerKind::kRegretMatching) {
    double baseline = 0.0;
    for (int a = 0; a < n; ++a) baseline += state.current[a] * payoffs[a];
    for (int a = 0; a < n; ++a) state.cumulative[a] += payoffs[a] - baseline;
  } else {
    for (int a = 0; a < n; ++a) state.cumulative[a] += payoffs[a];
  }
  for (int a = 0; a < n; ++a) state.average_sum[a] += state.current[a];
  ++state.t;
}

void LearnerAdvance(LearnerState& state, Rng& rng) {
  if (state.kind == LearnerKind::kRegretMatching) {
    state.current = RmNextPolicy(state);
  } else {
    const int a = FpNextAction(state, rng);
    std::fill(state.current.begin(), state.current.end(), 0.0);
    state.current[a] = 1.0;
  }
}

Policy AveragePolicy(const LearnerState& state) {
  const int n = state.num_actions();
  double total = 0.0;
  for (double x : state.average_sum) total += x;
  if (total <= 0.0) return Policy(n, 1.0 / n);
  Policy p(n);
  for (int a = 0; a < n; ++a) p[a] = state.average_sum[a] / total;
  return p;
}

NfExploitability ExploitabilityNf(const MatrixGame& game,
                                  std::span<const double> row_policy,
                                  std::span<const double> col_policy) {
  const std::vector<double> rp = game.RowPayoffs(col_policy);
  const std::vector<double> cp = game.ColPayoffs(row_policy);
  double value = 0.0;
  for (int r = 0; r < game.rows(); ++r) value += row_policy[r] * rp[r];
  NfExploitability e;
  e.row = *std::max_element(rp.begin(), rp.end()) - value;
  e.col = *std::max_element(cp.begin(), cp.end()) + value;
  e.total = e.row + e.col;
  return e;
}

std::vector<int> FindDominatedPure(const MatrixGame& game, int player) {
  const int n = game.NumActions(player);
  const int m = game.NumActions(1 - player);
  auto u = [&](int a, int b) {
    return player == 0 ? game(a, b) : -game(b, a);
  };
  std::vector<int> out;
  for (int a = 0; a < n; ++a) {
    for (int d = 0; d < n; ++d) {
      if (d == a) continue;
      bool weak = true;
      bool strict = false;
      for (int b = 0; b < m && weak; ++b) {
        const double ua = u(a, b);
        const double ud = u(d, b);
        if (ua > ud) weak = false;
        if (ua < ud) strict = true;
      }
      if (weak && strict) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

ClarityReport ClassifyClear(const MatrixGame& game, int player) {
  ClarityReport report;
  report.actions = game.NumActions(player);
  report.non_dominated =
      report.actions - static_cast<int>(FindDominatedPure(game, player).size());
  const double limit = std::sqrt(static_cast<double>(report.actions));
  report.clarity = report.non_dominated <= limit ? Clarity::kClear
                                                 : Clarity::kTangled;
  return report;
}

MatrixGame GenRandomMatrix(int rows, int cols, std::uint64_t seed) {
  return GenBoostedMatrix(rows, cols, 0, 0.0, seed);
}

MatrixGame GenBoostedMatrix(int rows, int cols, int boosted_rows,
                            double boost, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw InvalidParams("matrix needs n, m >= 1");
  if (boosted_rows < 0 || boosted_rows > rows) {
    throw InvalidParams("boosted rows out of range");
  }
  Rng rng(seed);
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      a[r][c] = rng.Normal() + (r < boosted_rows ? boost : 0.0);
    }
  }
  return MatrixGame(std::move(a));
}

MatrixGame RockPaperScissors() {
  return MatrixGame({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}, {"R", "P", "S"},
                    {"R", "P", "S"});
}

MatrixGame RpsLeakyRock() {
  return MatrixGame({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}, {-0.1, -1.1, 0.9}},
                    {"R", "P", "S", "LR"}, {"R", "P", "S"});
}

namespace {

bool IsPure(const Policy& p, int* action) {
  for (int a = 0; a < static_cast<int>(p.size()); ++a) {
    if (p[a] == 1.0) {
      *action = a;
      return true;
    }
  }
  return false;
}

}  // namespace

SelfPlayResult SelfPlay(const MatrixGame& game, LearnerKind kind,
                        std::int64_t iterations, std::int64_t cadence,
                        Rng& rng) {
  if (iterations < 1 || cadence < 1) {
    throw InvalidParams("iterations and cadence must be positive");
  }
  using Clock = std::chrono::steady_clock;
  SelfPlayResult result;
  result.row = LearnerState::Make(kind, game.rows());
  result.col = LearnerState::Make(kind, game.cols());
  LearnerState& row = result.row;
  LearnerState& col = result.col;
  std::int64_t elapsed = 0;
  for (std::int64_t t = 1; t <= iterations; ++t) {
    const auto start = Clock::now();
    int pure = -1;
    const std::vector<double> row_payoffs =
        IsPure(col.current, &pure) ? game.PurePayoffs(0, pure)
                                   : game.RowPayoffs(col.current);
    const std::vector<double> col_payoffs =
        IsPure(row.current, &pure) ? game.PurePayoffs(1, pure)
                                   : game.ColPayoffs(row.current);
    LearnerObserve(row, row_payoffs);
    LearnerObserve(col, col_payoffs);
    LearnerAdvance(row, rng);
    LearnerAdvance(col, rng);
    elapsed += std::chrono::duration_cast<std::chrono::nanoseconds>(
                   Clock::now() - start)
                   .count();
    if (t % cadence == 0 || t == iterations) {
      NfTracePoint point;
      point.iteration = t;
      point.exploitability =
          ExploitabilityNf(game, AveragePolicy(row), AveragePolicy(col)).total;
      point.elapsed_ns = elapsed;
      result.trace.push_back(point);
    }
  }
  return result;
}

}  // namespace cfvfp

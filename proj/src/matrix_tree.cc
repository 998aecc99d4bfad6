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
#include "cfvfp/games.h"

namespace cfvfp {
namespace {

class MatrixTreeState : public State {
 public:
  explicit MatrixTreeState(const MatrixGame& matrix) : matrix_(matrix) {}

  NodeKind Kind() const override {
    return moves_.size() == 2 ? NodeKind::kTerminal : NodeKind::kDecision;
  }
  int CurrentPlayer() const override { return static_cast<int>(moves_.size()); }
  int NumActions() const override {
    if (moves_.size() == 2) return 0;
    return moves_.empty() ? matrix_.rows() : matrix_.cols();
  }
  double ChanceProbability(int) const override { return 0.0; }
  double Payoff(int player) const override {
    const double v = matrix_(moves_[0], moves_[1]);
    return player == 0 ? v : -v;
  }
  std::string_view Key() const override {
    return moves_.empty() ? MatrixTreeGame::kRowKey : MatrixTreeGame::kColKey;
  }
  void ApplyAction(int action) override { moves_.push_back(action); }
  void UndoAction() override { moves_.pop_back(); }
  std::string ActionName(int action) const override {
    return moves_.empty() ? matrix_.RowLabel(action) : matrix_.ColLabel(action);
  }
  std::unique_ptr<State> Clone() const override {
    return std::make_unique<MatrixTreeState>(*this);
  }

 private:
  const MatrixGame& matrix_;
  std::vector<int> moves_;
};

}  // namespace

MatrixTreeGame::MatrixTreeGame(MatrixGame matrix, std::string name)
    : matrix_(std::move(matrix)), name_(std::move(name)) {}

std::unique_ptr<State> MatrixTreeGame::NewInitialState() const {
  return std::make_unique<MatrixTreeState>(matrix_);
}

}  // namespace cfvfp

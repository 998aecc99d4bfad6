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

#ifndef CFVFP_ERRORS_H_
#define CFVFP_ERRORS_H_

#include <stdexcept>

namespace cfvfp {

// A traversal would exceed its node cap.
class TreeTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPureProfile : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfFormulaRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A game implementation broke a structural invariant.
class InvalidGame : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad CLI arguments, config files or checkpoints.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfvfp

#endif  // CFVFP_ERRORS_H_

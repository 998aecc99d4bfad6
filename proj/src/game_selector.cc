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

#include <charconv>
#include <map>
#include <memory>
#include <string>
#include <system_error>

#include "cfvfp/errors.h"
#include "cfvfp/games.h"

namespace cfvfp {
namespace {

using Args = std::map<std::string, std::string, std::less<>>;

Args ParseArgs(std::string_view text, std::string_view selector) {
  Args args;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("malformed game parameter '" + std::string(item) +
                        "' in '" + std::string(selector) + "'");
    }
    args[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return args;
}

class ArgReader {
 public:
  ArgReader(Args args, std::string_view selector)
      : args_(std::move(args)), selector_(selector) {}

  long long Int(const std::string& name, long long fallback) {
    auto it = args_.find(name);
    if (it == args_.end()) return fallback;
    long long value = 0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError("parameter " + name + " is not an integer in '" +
                        selector_ + "'");
    }
    args_.erase(it);
    return value;
  }

  double Real(const std::string& name, double fallback) {
    auto it = args_.find(name);
    if (it == args_.end()) return fallback;
    double value = 0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError("parameter " + name + " is not a number in '" +
                        selector_ + "'");
    }
    args_.erase(it);
    return value;
  }

  void Done() const {
    if (!args_.empty()) {
      throw ConfigError("unknown parameter '" + args_.begin()->first +
                        "' in '" + selector_ + "'");
    }
  }

 private:
  Args args_;
  std::string selector_;
};

std::string FormatReal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

GameSelection FromMatrix(std::string canonical, MatrixGame matrix) {
  GameSelection sel;
  sel.canonical = std::move(canonical);
  sel.matrix = std::make_shared<const MatrixGame>(matrix);
  sel.game =
      std::make_shared<const MatrixTreeGame>(std::move(matrix), sel.canonical);
  return sel;
}

}  // namespace

GameSelection ParseGameSelector(std::string_view selector) {
  const std::size_t colon = selector.find(':');
  const std::string name(selector.substr(0, colon));
  ArgReader args(colon == std::string_view::npos
                     ? Args{}
                     : ParseArgs(selector.substr(colon + 1), selector),
                 selector);
  try {
    if (name == "kuhn" || name == "leduc") {
      const int x = static_cast<int>(args.Int("x", 3));
      const int y = static_cast<int>(args.Int("y", 1));
      const int z = static_cast<int>(args.Int("z", 1));
      args.Done();
      GameSelection sel;
      if (name == "kuhn") {
        sel.game = std::make_shared<const KuhnExtGame>(KuhnExtParams{x, y, z});
      } else {
        sel.game =
            std::make_shared<const LeducExtGame>(LeducExtParams{x, y, z});
      }
      sel.canonical = sel.game->Name();
      return sel;
    }
    if (name == "pam") {
      PamParams params;
      params.rounds = static_cast<int>(args.Int("rounds", 4));
      args.Done();
      GameSelection sel;
      sel.game = std::make_shared<const PamGame>(params);
      sel.canonical = sel.game->Name();
      return sel;
    }
    if (name == "rps") {
      args.Done();
      return FromMatrix("rps", RockPaperScissors());
    }
    if (name == "rps-lr") {
      args.Done();
      return FromMatrix("rps-lr", RpsLeakyRock());
    }
    if (name == "randmat") {
      const int n = static_cast<int>(args.Int("n", 100));
      const int m = static_cast<int>(args.Int("m", 100));
      const double boost = args.Real("boost", 0.0);
      const int rows = static_cast<int>(args.Int("rows", 0));
      const long long seed = args.Int("seed", 0);
      args.Done();
      if (seed < 0) throw ConfigError("randmat seed must be >= 0");
      const std::string canonical =
          "randmat:n=" + std::to_string(n) + ",m=" + std::to_string(m) +
          ",boost=" + FormatReal(boost) + ",rows=" + std::to_string(rows) +
          ",seed=" + std::to_string(seed);
      return FromMatrix(canonical,
                        GenBoostedMatrix(n, m, rows, boost,
                                         static_cast<std::uint64_t>(seed)));
    }
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string(e.what()) + " in '" + std::string(selector) +
                      "'");
  }
  throw ConfigError("unknown game '" + name + "'");
}

}  // namespace cfvfp

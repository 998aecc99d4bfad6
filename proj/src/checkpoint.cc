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
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfvfp/errors.h"
#include "cfvfp/games.h"
#include "cfvfp/solver.h"

namespace cfvfp {
namespace {

constexpr std::string_view kMagic = "cfvfp-checkpoint";
constexpr int kVersion = 1;

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double ParseDouble(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("checkpoint: bad number '" + std::string(s) + "'");
  }
  return v;
}

std::string HexKey(std::string_view key) {
  if (key.empty()) return "-";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : key) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 15]);
  }
  return out;
}

std::string UnhexKey(std::string_view hex) {
  if (hex == "-") return "";
  if (hex.size() % 2 != 0) throw ConfigError("checkpoint: odd key length");
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(hex.data() + i, hex.data() + i + 2, v, 16);
    if (ec != std::errc() || ptr != hex.data() + i + 2) {
      throw ConfigError("checkpoint: bad key");
    }
    out.push_back(static_cast<char>(v));
  }
  return out;
}

void WriteVector(std::ostream& out, const std::vector<double>& v) {
  for (double x : v) out << ' ' << FormatDouble(x);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line, which must start with `field`; returns the remainder.
  std::string Field(std::string_view field) {
    std::string line;
    if (!std::getline(in_, line)) {
      throw ConfigError("checkpoint: missing field " + std::string(field));
    }
    if (line.rfind(field, 0) != 0 ||
        (line.size() > field.size() && line[field.size()] != ' ')) {
      throw ConfigError("checkpoint: expected field " + std::string(field));
    }
    return line.size() > field.size() ? line.substr(field.size() + 1) : "";
  }

  std::string Line() {
    std::string line;
    if (!std::getline(in_, line)) throw ConfigError("checkpoint: truncated");
    return line;
  }

 private:
  std::istream& in_;
};

long long ParseInt(const std::string& s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("checkpoint: bad integer '" + s + "'");
  }
  return v;
}

unsigned long long ParseUnsigned(const std::string& s) {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("checkpoint: bad integer '" + s + "'");
  }
  return v;
}

std::vector<double> ReadDoubles(std::istringstream& in, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    std::string tok;
    if (!(in >> tok)) throw ConfigError("checkpoint: short infoset record");
    v[i] = ParseDouble(tok);
  }
  return v;
}

}  // namespace

void SaveCheckpoint(const SolverState& state, std::string_view game_selector,
                    std::ostream& out) {
  const SolverConfig& c = state.config();
  out << kMagic << ' ' << kVersion << '\n';
  out << "game " << game_selector << '\n';
  out << "algorithm " << AlgorithmName(c.algorithm) << '\n';
  out << "weight " << WeightSchemeName(c.weight) << '\n';
  out << "pruning " << (c.pruning ? 1 : 0) << '\n';
  out << "threshold " << FormatDouble(c.prune_threshold) << '\n';
  out << "seed " << c.seed << '\n';
  out << "simultaneous " << (c.simultaneous ? 1 : 0) << '\n';
  out << "random_init " << (c.random_initial_policy ? 1 : 0) << '\n';
  out << "iteration " << state.iteration() << '\n';
  out << "nodes " << state.nodes_touched() << '\n';
  out << "rng " << state.rng().SerializeState() << '\n';
  out << "infosets " << state.accumulators().size() << '\n';
  for (const auto& acc : state.accumulators()) {
    out << acc.player << ' ' << HexKey(acc.key) << ' ' << acc.num_actions();
    WriteVector(out, acc.cumulative);
    WriteVector(out, acc.avg_numerator);
    out << ' ' << FormatDouble(acc.avg_denominator);
    WriteVector(out, acc.policy);
    out << '\n';
  }
  out << "end\n";
}

LoadedCheckpoint LoadCheckpoint(std::istream& in) {
  LineReader reader(in);
  const std::string header = reader.Line();
  if (header != std::string(kMagic) + " " + std::to_string(kVersion)) {
    throw ConfigError("checkpoint: unsupported header '" + header + "'");
  }
  LoadedCheckpoint loaded;
  loaded.game_selector = reader.Field("game");
  SolverConfig config;
  config.algorithm = ParseAlgorithm(reader.Field("algorithm"));
  config.weight = ParseWeightScheme(reader.Field("weight"));
  config.pruning = ParseInt(reader.Field("pruning")) != 0;
  config.prune_threshold = ParseDouble(reader.Field("threshold"));
  config.seed = ParseUnsigned(reader.Field("seed"));
  config.simultaneous = ParseInt(reader.Field("simultaneous")) != 0;
  config.random_initial_policy = ParseInt(reader.Field("random_init")) != 0;
  const long long iteration = ParseInt(reader.Field("iteration"));
  const long long nodes = ParseInt(reader.Field("nodes"));
  const std::string rng_state = reader.Field("rng");
  const long long count = ParseInt(reader.Field("infosets"));

  GameSelection selection = ParseGameSelector(loaded.game_selector);
  try {
    loaded.state = std::make_unique<SolverState>(selection.game, config);
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
  SolverState& state = *loaded.state;
  for (long long i = 0; i < count; ++i) {
    std::istringstream line(reader.Line());
    int player = -1;
    std::string hex;
    int n = 0;
    if (!(line >> player >> hex >> n) || player < 0 || player > 1 || n < 1) {
      throw ConfigError("checkpoint: bad infoset record");
    }
    InfoSetAccumulator& acc = state.Lookup(player, UnhexKey(hex), n);
    acc.cumulative = ReadDoubles(line, n);
    acc.avg_numerator = ReadDoubles(line, n);
    acc.avg_denominator = ReadDoubles(line, 1)[0];
    acc.policy = ReadDoubles(line, n);
  }
  if (reader.Line() != "end") throw ConfigError("checkpoint: missing end");
  state.Restore(iteration, nodes);
  state.rng().DeserializeState(rng_state);
  return loaded;
}

}  // namespace cfvfp

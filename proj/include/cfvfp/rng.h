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

#ifndef CFVFP_RNG_H_
#define CFVFP_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>

namespace cfvfp {

// Seeded generator. Derived draws are computed here rather than through
// <random> distributions, whose output is implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n - 1}. Requires n > 0.
  int UniformInt(int n);

  // Standard normal (Box-Muller).
  double Normal();

  // Index drawn from a probability vector. Mass beyond the last positive
  // entry due to rounding falls on that entry.
  int SampleIndex(std::span<const double> probs);

  std::string SerializeState() const;
  void DeserializeState(const std::string& text);

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 mix of a master seed and a stream index.
std::uint64_t MixSeed(std::uint64_t master, std::uint64_t stream);

}  // namespace cfvfp

#endif  // CFVFP_RNG_H_

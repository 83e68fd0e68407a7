// Copyright 2026 The synthpaste Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace synthpaste {

/// SplitMix64 finalizer; a strong 64-bit bijective mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of the substream keyed by (seed, key). Substreams for distinct keys
/// are independent of the order in which they are created.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t key) {
  return mix64(mix64(seed) ^ mix64(key + 0x632BE59BD9B4E019ull));
}

/// Seeded random stream with platform-independent draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard distributions are implementation-defined, so all
/// draws are derived here from raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t key) {
    return Rng(substream_seed(seed, key));
  }

  /// The value this stream was seeded with.
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n); n must be > 0. Unbiased (rejection).
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer in the closed range [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller (one value per call, no cached state).
  double normal();

  /// Poisson(mean) by inversion; mean is expected to be small.
  std::uint32_t poisson(double mean);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace synthpaste

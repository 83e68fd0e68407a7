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

#include "synthpaste/random.hpp"

#include <cmath>
#include <numbers>

namespace synthpaste {

std::uint64_t Rng::below(std::uint64_t n) {
  // Draws below 2^64 mod n are rejected so the accepted range is a multiple of n.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  return lo + static_cast<std::int64_t>(below(span));
}

double Rng::normal() {
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint32_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  const double u = uniform01();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint32_t k = 0;
  while (u >= cdf && k < 10000) {
    ++k;
    p *= mean / k;
    cdf += p;
    if (p == 0.0) break;
  }
  return k;
}

}  // namespace synthpaste

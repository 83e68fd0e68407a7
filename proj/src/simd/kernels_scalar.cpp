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

#include <algorithm>

#include "synthpaste/simd/kernels.hpp"

namespace synthpaste::simd {
namespace {

inline std::uint8_t clamp_u8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

void fill_rgb(std::uint8_t* dst, std::size_t pixels, std::uint8_t r, std::uint8_t g,
              std::uint8_t b) {
  for (std::size_t i = 0; i < pixels; ++i) {
    dst[3 * i] = r;
    dst[3 * i + 1] = g;
    dst[3 * i + 2] = b;
  }
}

void add_offset(std::uint8_t* px, std::size_t n, int offset) {
  for (std::size_t i = 0; i < n; ++i) px[i] = clamp_u8(px[i] + offset);
}

void contrast(std::uint8_t* px, std::size_t n, int factor_q8) {
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = clamp_u8(((2 * px[i] - 255) * factor_q8 + 65536) >> 9);
  }
}

void add_noise(std::uint8_t* px, const std::int16_t* noise, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) px[i] = clamp_u8(px[i] + noise[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, "scalar", fill_rgb, add_offset, contrast, add_noise};
  return table;
}

}  // namespace synthpaste::simd

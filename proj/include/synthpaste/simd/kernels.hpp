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

// Pixel kernels for the data-parallel inner loops: background fill and the
// photometric augmentations. Every variant must be bit-identical to the
// scalar reference; the dispatcher picks the widest one the CPU supports.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace synthpaste::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  std::string_view name;

  /// Writes `pixels` RGB triples of (r, g, b).
  void (*fill_rgb)(std::uint8_t* dst, std::size_t pixels, std::uint8_t r, std::uint8_t g,
                   std::uint8_t b);

  /// px[i] = clamp(px[i] + offset, 0, 255); offset in [-255, 255].
  void (*add_offset)(std::uint8_t* px, std::size_t n, int offset);

  /// Contrast about mid-range with a Q8 fixed-point factor:
  /// px[i] = clamp(((2 px[i] - 255) * factor_q8 + 65536) >> 9, 0, 255).
  /// factor_q8 must be in [0, 1024].
  void (*contrast)(std::uint8_t* px, std::size_t n, int factor_q8);

  /// px[i] = clamp(px[i] + noise[i], 0, 255); noise values in [-255, 255].
  void (*add_noise)(std::uint8_t* px, const std::int16_t* noise, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the variant was not compiled in.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Variants that are both compiled in and supported by the running CPU,
/// scalar first.
std::vector<const KernelTable*> available_kernels();

/// Widest available variant. SYNTHPASTE_SIMD=scalar|avx2|neon forces a
/// choice (ignored if that variant is unavailable). Resolved once.
const KernelTable& active_kernels();

}  // namespace synthpaste::simd

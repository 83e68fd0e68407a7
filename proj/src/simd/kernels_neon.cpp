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

#include <arm_neon.h>

#include "synthpaste/simd/kernels.hpp"

namespace synthpaste::simd {
namespace {

inline std::uint8_t clamp_u8(int v) {
  return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

void fill_rgb(std::uint8_t* dst, std::size_t pixels, std::uint8_t r, std::uint8_t g,
              std::uint8_t b) {
  const uint8x16x3_t v{{vdupq_n_u8(r), vdupq_n_u8(g), vdupq_n_u8(b)}};
  std::size_t i = 0;
  for (; i + 16 <= pixels; i += 16) vst3q_u8(dst + 3 * i, v);
  for (; i < pixels; ++i) {
    dst[3 * i] = r;
    dst[3 * i + 1] = g;
    dst[3 * i + 2] = b;
  }
}

void add_offset(std::uint8_t* px, std::size_t n, int offset) {
  const bool up = offset >= 0;
  const int mag = up ? offset : -offset;
  const uint8x16_t v = vdupq_n_u8(static_cast<std::uint8_t>(mag > 255 ? 255 : mag));
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t x = vld1q_u8(px + i);
    vst1q_u8(px + i, up ? vqaddq_u8(x, v) : vqsubq_u8(x, v));
  }
  for (; i < n; ++i) px[i] = clamp_u8(px[i] + offset);
}

inline int16x4_t contrast_lanes(uint16x4_t v, int32x4_t factor) {
  const int32x4_t centered =
      vsubq_s32(vshlq_n_s32(vreinterpretq_s32_u32(vmovl_u16(v)), 1), vdupq_n_s32(255));
  const int32x4_t t = vaddq_s32(vmulq_s32(centered, factor), vdupq_n_s32(65536));
  return vqmovn_s32(vshrq_n_s32(t, 9));
}

void contrast(std::uint8_t* px, std::size_t n, int factor_q8) {
  const int32x4_t factor = vdupq_n_s32(factor_q8);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const uint16x8_t wide = vmovl_u8(vld1_u8(px + i));
    const int16x8_t words = vcombine_s16(contrast_lanes(vget_low_u16(wide), factor),
                                         contrast_lanes(vget_high_u16(wide), factor));
    vst1_u8(px + i, vqmovun_s16(words));
  }
  for (; i < n; ++i) px[i] = clamp_u8(((2 * px[i] - 255) * factor_q8 + 65536) >> 9);
}

void add_noise(std::uint8_t* px, const std::int16_t* noise, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const int16x8_t x = vreinterpretq_s16_u16(vmovl_u8(vld1_u8(px + i)));
    vst1_u8(px + i, vqmovun_s16(vaddq_s16(x, vld1q_s16(noise + i))));
  }
  for (; i < n; ++i) px[i] = clamp_u8(px[i] + noise[i]);
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{Isa::kNeon, "neon", fill_rgb, add_offset, contrast, add_noise};
  return &table;
}

}  // namespace synthpaste::simd

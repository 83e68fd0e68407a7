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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "synthpaste/simd/kernels.hpp"

namespace synthpaste::simd {
namespace {

void fill_rgb(std::uint8_t* dst, std::size_t pixels, std::uint8_t r, std::uint8_t g,
              std::uint8_t b) {
  // 32 pixels = 96 bytes = three full registers of the repeating pattern.
  alignas(32) std::uint8_t pattern[96];
  for (int i = 0; i < 32; ++i) {
    pattern[3 * i] = r;
    pattern[3 * i + 1] = g;
    pattern[3 * i + 2] = b;
  }
  const __m256i p0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern));
  const __m256i p1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern + 32));
  const __m256i p2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern + 64));
  std::size_t i = 0;
  for (; i + 32 <= pixels; i += 32) {
    std::uint8_t* d = dst + 3 * i;
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d), p0);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + 32), p1);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + 64), p2);
  }
  for (; i < pixels; ++i) {
    dst[3 * i] = r;
    dst[3 * i + 1] = g;
    dst[3 * i + 2] = b;
  }
}

void add_offset(std::uint8_t* px, std::size_t n, int offset) {
  const bool up = offset >= 0;
  const int mag = up ? offset : -offset;
  const auto step = static_cast<std::uint8_t>(mag > 255 ? 255 : mag);
  const __m256i v = _mm256_set1_epi8(static_cast<char>(step));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    auto* p = reinterpret_cast<__m256i*>(px + i);
    const __m256i x = _mm256_loadu_si256(p);
    _mm256_storeu_si256(p, up ? _mm256_adds_epu8(x, v) : _mm256_subs_epu8(x, v));
  }
  for (; i < n; ++i) {
    const int y = px[i] + offset;
    px[i] = static_cast<std::uint8_t>(y < 0 ? 0 : (y > 255 ? 255 : y));
  }
}

inline __m256i contrast_lanes(__m256i v32, __m256i factor, __m256i bias) {
  const __m256i centered = _mm256_sub_epi32(_mm256_slli_epi32(v32, 1), _mm256_set1_epi32(255));
  return _mm256_srai_epi32(_mm256_add_epi32(_mm256_mullo_epi32(centered, factor), bias), 9);
}

void contrast(std::uint8_t* px, std::size_t n, int factor_q8) {
  const __m256i factor = _mm256_set1_epi32(factor_q8);
  const __m256i bias = _mm256_set1_epi32(65536);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m128i x = _mm_loadu_si128(reinterpret_cast<const __m128i*>(px + i));
    const __m256i lo = contrast_lanes(_mm256_cvtepu8_epi32(x), factor, bias);
    const __m256i hi = contrast_lanes(_mm256_cvtepu8_epi32(_mm_srli_si128(x, 8)), factor, bias);
    // packs interleaves 128-bit lanes; restore element order before narrowing.
    const __m256i words = _mm256_permute4x64_epi64(_mm256_packs_epi32(lo, hi), 0xD8);
    const __m128i bytes =
        _mm_packus_epi16(_mm256_castsi256_si128(words), _mm256_extracti128_si256(words, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(px + i), bytes);
  }
  for (; i < n; ++i) {
    const int y = ((2 * px[i] - 255) * factor_q8 + 65536) >> 9;
    px[i] = static_cast<std::uint8_t>(y < 0 ? 0 : (y > 255 ? 255 : y));
  }
}

void add_noise(std::uint8_t* px, const std::int16_t* noise, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m128i x = _mm_loadu_si128(reinterpret_cast<const __m128i*>(px + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(noise + i));
    const __m256i s = _mm256_add_epi16(_mm256_cvtepu8_epi16(x), d);
    const __m128i bytes =
        _mm_packus_epi16(_mm256_castsi256_si128(s), _mm256_extracti128_si256(s, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(px + i), bytes);
  }
  for (; i < n; ++i) {
    const int y = px[i] + noise[i];
    px[i] = static_cast<std::uint8_t>(y < 0 ? 0 : (y > 255 ? 255 : y));
  }
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{Isa::kAvx2, "avx2", fill_rgb, add_offset, contrast, add_noise};
  return &table;
}

}  // namespace synthpaste::simd

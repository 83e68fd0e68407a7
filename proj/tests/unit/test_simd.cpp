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

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "synthpaste/random.hpp"
#include "synthpaste/simd/kernels.hpp"

using namespace synthpaste;
using simd::KernelTable;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.below(256));
  return v;
}

// Odd lengths exercise the vector tails.
constexpr std::size_t kLengths[] = {0, 1, 2, 15, 16, 17, 31, 32, 33, 63, 64, 65, 100, 257, 1023, 4099};

}  // namespace

TEST_CASE("scalar kernels match their formulas", "[simd]") {
  const KernelTable& k = simd::scalar_kernels();
  std::vector<std::uint8_t> px = {0, 1, 127, 128, 200, 255};
  auto a = px;
  k.add_offset(a.data(), a.size(), 60);
  REQUIRE(a == std::vector<std::uint8_t>{60, 61, 187, 188, 255, 255});
  a = px;
  k.add_offset(a.data(), a.size(), -128);
  REQUIRE(a == std::vector<std::uint8_t>{0, 0, 0, 0, 72, 127});
  a = px;
  k.contrast(a.data(), a.size(), 256);  // factor 1.0 is the identity
  REQUIRE(a == px);
  a = px;
  k.contrast(a.data(), a.size(), 512);  // factor 2 about 127.5
  REQUIRE(a == std::vector<std::uint8_t>{0, 0, 127, 129, 255, 255});

  std::vector<std::uint8_t> fill(3 * 5, 0);
  k.fill_rgb(fill.data(), 5, 1, 2, 3);
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(fill[3 * i] == 1);
    REQUIRE(fill[3 * i + 1] == 2);
    REQUIRE(fill[3 * i + 2] == 3);
  }
}

TEST_CASE("every available variant equals the scalar reference", "[simd][equivalence]") {
  const KernelTable& ref = simd::scalar_kernels();
  const auto variants = simd::available_kernels();
  REQUIRE(variants.front()->isa == simd::Isa::kScalar);
  Rng rng(99);
  for (const KernelTable* v : variants) {
    INFO("variant " << v->name);
    for (std::size_t n : kLengths) {
      INFO("length " << n);
      for (int rep = 0; rep < 4; ++rep) {
        const auto src = random_bytes(n, rng);

        const int offset = static_cast<int>(rng.range(-255, 255));
        auto a = src, b = src;
        ref.add_offset(a.data(), n, offset);
        v->add_offset(b.data(), n, offset);
        REQUIRE(a == b);

        const int q8 = static_cast<int>(rng.range(0, 1024));
        a = src, b = src;
        ref.contrast(a.data(), n, q8);
        v->contrast(b.data(), n, q8);
        REQUIRE(a == b);

        std::vector<std::int16_t> noise(n);
        for (auto& z : noise) z = static_cast<std::int16_t>(rng.range(-255, 255));
        a = src, b = src;
        ref.add_noise(a.data(), noise.data(), n);
        v->add_noise(b.data(), noise.data(), n);
        REQUIRE(a == b);

        const std::size_t pixels = n / 3 + 1;
        std::vector<std::uint8_t> fa(3 * pixels, 7), fb(3 * pixels, 9);
        const auto r = static_cast<std::uint8_t>(rng.below(256));
        const auto g = static_cast<std::uint8_t>(rng.below(256));
        const auto bl = static_cast<std::uint8_t>(rng.below(256));
        ref.fill_rgb(fa.data(), pixels, r, g, bl);
        v->fill_rgb(fb.data(), pixels, r, g, bl);
        REQUIRE(fa == fb);
      }
    }
    // extreme factors and offsets
    auto all = std::vector<std::uint8_t>(256);
    for (int i = 0; i < 256; ++i) all[i] = static_cast<std::uint8_t>(i);
    for (int q8 : {0, 1, 204, 255, 256, 257, 320, 1024}) {
      auto a = all, b = all;
      ref.contrast(a.data(), a.size(), q8);
      v->contrast(b.data(), b.size(), q8);
      REQUIRE(a == b);
    }
    for (int off : {-255, -1, 0, 1, 255}) {
      auto a = all, b = all;
      ref.add_offset(a.data(), a.size(), off);
      v->add_offset(b.data(), b.size(), off);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("active kernels come from the available set", "[simd]") {
  const KernelTable& active = simd::active_kernels();
  bool found = false;
  for (const KernelTable* v : simd::available_kernels()) found = found || v == &active;
  REQUIRE(found);
}

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

#include "synthpaste/augment.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "synthpaste/error.hpp"
#include "synthpaste/simd/kernels.hpp"

namespace synthpaste {

std::string_view augment_name(AugmentKind kind) {
  switch (kind) {
    case AugmentKind::kFlipH: return "flip_h";
    case AugmentKind::kFlipV: return "flip_v";
    case AugmentKind::kRotate90: return "rotate90";
    case AugmentKind::kBrightness: return "brightness";
    case AugmentKind::kContrast: return "contrast";
    case AugmentKind::kGaussianNoise: return "gaussian_noise";
  }
  return "?";
}

ParamBounds augment_bounds(AugmentKind kind) {
  switch (kind) {
    case AugmentKind::kRotate90: return {1, 3};
    case AugmentKind::kBrightness: return {-0.2, 0.2};
    case AugmentKind::kContrast: return {0.8, 1.25};
    case AugmentKind::kGaussianNoise: return {0.0, 0.05};
    default: return {0, 0};
  }
}

AugmentConfig AugmentConfig::disabled() {
  AugmentConfig c;
  c[AugmentKind::kRotate90] = {false, 0.0, 1, 3};
  c[AugmentKind::kBrightness] = {false, 0.0, -0.1, 0.1};
  c[AugmentKind::kContrast] = {false, 0.0, 0.9, 1.1};
  c[AugmentKind::kGaussianNoise] = {false, 0.0, 0.0, 0.02};
  return c;
}

AugmentConfig AugmentConfig::default_pre_paste() {
  AugmentConfig c = disabled();
  c[AugmentKind::kFlipH] = {true, 0.5, 0, 0};
  c[AugmentKind::kFlipV] = {true, 0.5, 0, 0};
  c[AugmentKind::kRotate90] = {true, 0.5, 1, 3};
  c[AugmentKind::kBrightness] = {true, 0.5, -0.1, 0.1};
  c[AugmentKind::kContrast] = {true, 0.5, 0.9, 1.1};
  return c;
}

AugmentConfig AugmentConfig::default_post_paste() {
  AugmentConfig c = disabled();
  c[AugmentKind::kFlipH] = {true, 0.5, 0, 0};
  c[AugmentKind::kFlipV] = {true, 0.5, 0, 0};
  return c;
}

void AugmentConfig::validate() const {
  for (AugmentKind k : kAllAugmentKinds) {
    const AugmentOpConfig& op = (*this)[k];
    const std::string name(augment_name(k));
    if (!(op.probability >= 0.0 && op.probability <= 1.0)) {
      throw ConfigError("augmentation " + name + ": probability must be in [0, 1]");
    }
    if (k == AugmentKind::kFlipH || k == AugmentKind::kFlipV) continue;
    const ParamBounds b = augment_bounds(k);
    if (op.lo > op.hi) throw ConfigError("augmentation " + name + ": range is inverted");
    if (op.lo < b.lo || op.hi > b.hi) {
      throw ConfigError("augmentation " + name + ": range must lie within [" +
                        std::to_string(b.lo) + ", " + std::to_string(b.hi) + "]");
    }
    if (k == AugmentKind::kRotate90 && (op.lo != static_cast<int>(op.lo) || op.hi != static_cast<int>(op.hi))) {
      throw ConfigError("augmentation rotate90: range must be integral quarter turns");
    }
  }
}

AugmentChain sample_chain(const AugmentConfig& config, AugmentStage stage, Rng& rng) {
  config.validate();
  AugmentChain chain;
  chain.stage = stage;
  for (AugmentKind k : kAllAugmentKinds) {
    const AugmentOpConfig& c = config[k];
    if (!c.enabled || !rng.bernoulli(c.probability)) continue;
    AugmentOp op;
    op.kind = k;
    switch (k) {
      case AugmentKind::kRotate90:
        op.k = static_cast<int>(rng.range(static_cast<std::int64_t>(c.lo), static_cast<std::int64_t>(c.hi)));
        break;
      case AugmentKind::kBrightness:
      case AugmentKind::kContrast:
        op.value = rng.uniform(c.lo, c.hi);
        break;
      case AugmentKind::kGaussianNoise:
        op.value = rng.uniform(c.lo, c.hi);
        op.noise_seed = rng.next_u64();
        break;
      default:
        break;
    }
    chain.ops.push_back(op);
  }
  return chain;
}

int brightness_offset(double delta) { return static_cast<int>(round_half_up(delta * 255.0)); }
int contrast_q8(double factor) { return static_cast<int>(round_half_up(factor * 256.0)); }

namespace {

constexpr int C = Image::kChannels;

Image flip_h(const Image& in) {
  Image out(in.width(), in.height());
  const int w = in.width();
  for (int y = 0; y < in.height(); ++y) {
    const std::uint8_t* src = in.row(y);
    std::uint8_t* dst = out.row(y);
    for (int x = 0; x < w; ++x) std::memcpy(dst + (w - 1 - x) * C, src + x * C, C);
  }
  return out;
}

Image flip_v(const Image& in) {
  Image out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    std::memcpy(out.row(in.height() - 1 - y), in.row(y), in.stride());
  }
  return out;
}

// Clockwise quarter turns.
Image rotate90(const Image& in, int k) {
  k = ((k % 4) + 4) % 4;
  if (k == 0) return in;
  if (k == 2) {
    Image out(in.width(), in.height());
    const int w = in.width(), h = in.height();
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) std::memcpy(out.pixel(w - 1 - x, h - 1 - y), in.pixel(x, y), C);
    }
    return out;
  }
  const int w = in.width(), h = in.height();
  Image out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t* dst = k == 1 ? out.pixel(h - 1 - y, x) : out.pixel(y, w - 1 - x);
      std::memcpy(dst, in.pixel(x, y), C);
    }
  }
  return out;
}

void add_gaussian_noise(Image& img, double sigma, std::uint64_t seed) {
  auto bytes = img.bytes();
  std::vector<std::int16_t> noise(bytes.size());
  Rng rng(seed);
  const double scale = sigma * 255.0;
  for (auto& n : noise) {
    n = static_cast<std::int16_t>(std::clamp<std::int64_t>(round_half_up(rng.normal() * scale), -255, 255));
  }
  simd::active_kernels().add_noise(bytes.data(), noise.data(), bytes.size());
}

}  // namespace

Image apply_op(const Image& image, const AugmentOp& op) {
  switch (op.kind) {
    case AugmentKind::kFlipH: return flip_h(image);
    case AugmentKind::kFlipV: return flip_v(image);
    case AugmentKind::kRotate90: return rotate90(image, op.k);
    case AugmentKind::kBrightness: {
      Image out = image;
      auto b = out.bytes();
      simd::active_kernels().add_offset(b.data(), b.size(), brightness_offset(op.value));
      return out;
    }
    case AugmentKind::kContrast: {
      Image out = image;
      auto b = out.bytes();
      simd::active_kernels().contrast(b.data(), b.size(), contrast_q8(op.value));
      return out;
    }
    case AugmentKind::kGaussianNoise: {
      Image out = image;
      add_gaussian_noise(out, op.value, op.noise_seed);
      return out;
    }
  }
  return image;
}

Image apply_chain(const Image& image, const AugmentChain& chain) {
  Image out = image;
  for (const AugmentOp& op : chain.ops) out = apply_op(out, op);
  return out;
}

Rect map_rect(const AugmentOp& op, const Rect& r, Size& canvas) {
  const int W = canvas.w, H = canvas.h;
  switch (op.kind) {
    case AugmentKind::kFlipH: return {W - r.x - r.w, r.y, r.w, r.h};
    case AugmentKind::kFlipV: return {r.x, H - r.y - r.h, r.w, r.h};
    case AugmentKind::kRotate90:
      switch (((op.k % 4) + 4) % 4) {
        case 1: canvas = {H, W}; return {H - r.y - r.h, r.x, r.h, r.w};
        case 2: return {W - r.x - r.w, H - r.y - r.h, r.w, r.h};
        case 3: canvas = {H, W}; return {r.y, W - r.x - r.w, r.h, r.w};
        default: return r;
      }
    default: return r;
  }
}

Size chain_output_size(const AugmentChain& chain, Size input) {
  for (const AugmentOp& op : chain.ops) {
    if (op.kind == AugmentKind::kRotate90 && (((op.k % 4) + 4) % 4) % 2 == 1) {
      input = {input.h, input.w};
    }
  }
  return input;
}

}  // namespace synthpaste

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

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "synthpaste/geometry.hpp"
#include "synthpaste/image.hpp"
#include "synthpaste/random.hpp"

namespace synthpaste {

enum class AugmentKind : std::uint8_t {
  kFlipH = 0,
  kFlipV,
  kRotate90,
  kBrightness,
  kContrast,
  kGaussianNoise,
};

inline constexpr std::size_t kNumAugmentKinds = 6;
inline constexpr std::array<AugmentKind, kNumAugmentKinds> kAllAugmentKinds = {
    AugmentKind::kFlipH,      AugmentKind::kFlipV,    AugmentKind::kRotate90,
    AugmentKind::kBrightness, AugmentKind::kContrast, AugmentKind::kGaussianNoise};

std::string_view augment_name(AugmentKind kind);

enum class AugmentStage : std::uint8_t { kPrePaste, kPostPaste };

/// One concrete transform. `k` is the clockwise quarter-turn count for
/// rotate90; `value` is the brightness delta (fraction of full range), the
/// contrast factor, or the noise sigma (fraction of full range).
struct AugmentOp {
  AugmentKind kind = AugmentKind::kFlipH;
  int k = 0;
  double value = 0.0;
  std::uint64_t noise_seed = 0;

  bool geometric() const {
    return kind == AugmentKind::kFlipH || kind == AugmentKind::kFlipV ||
           kind == AugmentKind::kRotate90;
  }
  friend bool operator==(const AugmentOp&, const AugmentOp&) = default;
};

struct AugmentChain {
  std::vector<AugmentOp> ops;
  AugmentStage stage = AugmentStage::kPrePaste;
  friend bool operator==(const AugmentChain&, const AugmentChain&) = default;
};

struct AugmentOpConfig {
  bool enabled = false;
  double probability = 0.0;
  double lo = 0.0;  // parameter range; ignored for flips
  double hi = 0.0;
  friend bool operator==(const AugmentOpConfig&, const AugmentOpConfig&) = default;
};

/// Per-op settings for one stage, indexed by AugmentKind.
struct AugmentConfig {
  std::array<AugmentOpConfig, kNumAugmentKinds> ops{};

  AugmentOpConfig& operator[](AugmentKind k) { return ops[static_cast<std::size_t>(k)]; }
  const AugmentOpConfig& operator[](AugmentKind k) const { return ops[static_cast<std::size_t>(k)]; }

  /// Every op disabled, parameter ranges at their neutral defaults.
  static AugmentConfig disabled();
  /// Defaults shipped for patches before pasting.
  static AugmentConfig default_pre_paste();
  /// Defaults for the whole canvas after pasting: geometric ops only.
  static AugmentConfig default_post_paste();

  /// Throws ConfigError on probabilities outside [0, 1], inverted ranges, or
  /// ranges outside the admissible bounds.
  void validate() const;

  friend bool operator==(const AugmentConfig&, const AugmentConfig&) = default;
};

/// Admissible parameter bounds per kind.
struct ParamBounds {
  double lo;
  double hi;
};
ParamBounds augment_bounds(AugmentKind kind);

/// Each enabled op is included independently with its probability, in the
/// fixed kind order; parameters are drawn uniformly from the configured range.
AugmentChain sample_chain(const AugmentConfig& config, AugmentStage stage, Rng& rng);

/// Applies ops in order. Pure function of (image, chain).
Image apply_chain(const Image& image, const AugmentChain& chain);
Image apply_op(const Image& image, const AugmentOp& op);

/// Maps a rectangle through a geometric op on a canvas of the given size and
/// updates `canvas` to the post-op size. Photometric ops return r unchanged.
Rect map_rect(const AugmentOp& op, const Rect& r, Size& canvas);

/// Output size of a chain applied to an image of the given size.
Size chain_output_size(const AugmentChain& chain, Size input);

int brightness_offset(double delta);
int contrast_q8(double factor);

}  // namespace synthpaste

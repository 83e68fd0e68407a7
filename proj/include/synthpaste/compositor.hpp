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
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "synthpaste/annotation.hpp"
#include "synthpaste/augment.hpp"
#include "synthpaste/class_label.hpp"
#include "synthpaste/geometry.hpp"
#include "synthpaste/image.hpp"
#include "synthpaste/patch.hpp"
#include "synthpaste/random.hpp"

namespace synthpaste {

/// Object count drawn uniformly from [n_min, n_max].
struct UniformCount {
  int n_min = 1;
  int n_max = 10;
  friend bool operator==(const UniformCount&, const UniformCount&) = default;
};

/// Object count resampled from per-image counts observed in a manifest.
struct EmpiricalCount {
  std::vector<int> per_image;
  friend bool operator==(const EmpiricalCount&, const EmpiricalCount&) = default;
};

using CountSampler = std::variant<UniformCount, EmpiricalCount>;

/// Every usable object class equally likely.
struct UniformClasses {
  friend bool operator==(const UniformClasses&, const UniformClasses&) = default;
};

/// Class probability proportional to weight (canonical object class order).
struct EmpiricalClasses {
  std::array<double, kNumObjectClasses> weights{};
  friend bool operator==(const EmpiricalClasses&, const EmpiricalClasses&) = default;
};

using ClassSampler = std::variant<UniformClasses, EmpiricalClasses>;

struct OverlapPolicy {
  double max_iou = 0.1;
  int max_attempts = 50;
  friend bool operator==(const OverlapPolicy&, const OverlapPolicy&) = default;
};

struct BackgroundModel {
  enum class Kind : std::uint8_t { kConstant, kSampledConstant, kConstantPlusNoise };
  Kind kind = Kind::kSampledConstant;
  int gray = 220;     // constant, constant_plus_noise
  int lo = 210;       // sampled_constant, inclusive
  int hi = 235;
  double sigma = 0;   // constant_plus_noise, fraction of full range
  friend bool operator==(const BackgroundModel&, const BackgroundModel&) = default;

  // Fields a kind does not use keep their defaults so equality is by meaning.
  static BackgroundModel constant(int gray) { return {Kind::kConstant, gray, 210, 235, 0.0}; }
  static BackgroundModel sampled_constant(int lo, int hi) {
    return {Kind::kSampledConstant, 220, lo, hi, 0.0};
  }
  static BackgroundModel constant_plus_noise(int gray, double sigma) {
    return {Kind::kConstantPlusNoise, gray, 210, 235, sigma};
  }
};

std::string_view background_kind_name(BackgroundModel::Kind kind);

struct CompositionConfig {
  Size canvas{416, 416};
  CountSampler count = UniformCount{5, 15};
  ClassSampler classes = UniformClasses{};
  /// Expected artifact placements per image (Poisson mean).
  double artifact_rate = 1.0;
  OverlapPolicy overlap;
  BackgroundModel background;
  AugmentConfig pre_paste = AugmentConfig::default_pre_paste();
  AugmentConfig post_paste = AugmentConfig::default_post_paste();
  /// Emit ARTIFACT placements as a sixth detection class.
  bool label_artifacts = false;

  /// Throws ConfigError.
  void validate() const;

  /// "weak-384" or "detect-416". Throws ConfigError for unknown names.
  static CompositionConfig preset(std::string_view name);

  friend bool operator==(const CompositionConfig&, const CompositionConfig&) = default;
};

/// Class weights proportional to the manifest's center counts.
EmpiricalClasses empirical_class_weights(const DatasetManifest& manifest);

struct PlacedObject {
  ClassLabel cls = ClassLabel::kRbc;
  std::size_t pool_index = 0;
  Point position;
  Size pasted_size;
  AugmentChain pre_paste;

  Rect rect() const { return {position.x, position.y, pasted_size.w, pasted_size.h}; }
  friend bool operator==(const PlacedObject&, const PlacedObject&) = default;
};

/// An object abandoned because no admissible position was found.
struct DroppedObject {
  ClassLabel cls = ClassLabel::kRbc;
  std::size_t pool_index = 0;
  int attempts = 0;
  friend bool operator==(const DroppedObject&, const DroppedObject&) = default;
};

/// Concrete background for one image.
struct BackgroundRealization {
  BackgroundModel::Kind kind = BackgroundModel::Kind::kConstant;
  std::uint8_t gray = 0;
  double sigma = 0.0;
  std::uint64_t noise_seed = 0;
  friend bool operator==(const BackgroundRealization&, const BackgroundRealization&) = default;
};

/// Fully determined recipe for one synthetic image.
struct CompositionPlan {
  CompositionConfig config;
  std::vector<PlacedObject> placements;  // objects first, then artifacts
  std::vector<DroppedObject> drops;
  BackgroundRealization background;
  AugmentChain post_paste;
  std::uint64_t plan_seed = 0;
  /// Some pool entry is pasted more than once.
  bool patch_reused = false;

  friend bool operator==(const CompositionPlan&, const CompositionPlan&) = default;
};

struct LabeledBox {
  ClassLabel cls = ClassLabel::kRbc;
  Rect rect;
  friend bool operator==(const LabeledBox&, const LabeledBox&) = default;
};

/// Presence bits in canonical order (BACTERIA, CRYSTAL, RBC, WBC, YEAST).
using MultiLabel = std::bitset<kNumObjectClasses>;

struct SyntheticSample {
  Image image;
  std::vector<LabeledBox> boxes;
  MultiLabel multilabel;
  CompositionPlan plan;
};

/// Wall-clock accumulators for the generation stages, in seconds.
struct StageTimings {
  double plan = 0;
  double augment = 0;
  double paste = 0;
  double encode = 0;
};

/// Throws EmptyPool if no object class has patches (or positive weight).
CompositionPlan sample_plan(const CompositionConfig& config, const PatchPool& pool, Rng& rng);

/// Pure function of (plan, pool). Throws StalePlan if a placement no longer
/// matches the pool.
SyntheticSample render(const CompositionPlan& plan, const PatchPool& pool,
                       StageTimings* timings = nullptr);

BackgroundRealization draw_background(const BackgroundModel& model, Rng& rng);
Image render_background(const BackgroundRealization& bg, Size canvas);
Image realize_background(const BackgroundModel& model, Size canvas, Rng& rng);

}  // namespace synthpaste

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

#include "synthpaste/compositor.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <utility>

#include "synthpaste/error.hpp"
#include "synthpaste/simd/kernels.hpp"

namespace synthpaste {

std::string_view background_kind_name(BackgroundModel::Kind kind) {
  switch (kind) {
    case BackgroundModel::Kind::kConstant: return "constant";
    case BackgroundModel::Kind::kSampledConstant: return "sampled_constant";
    case BackgroundModel::Kind::kConstantPlusNoise: return "constant_plus_noise";
  }
  return "?";
}

void CompositionConfig::validate() const {
  if (canvas.w <= 0 || canvas.h <= 0) throw ConfigError("canvas dimensions must be positive");
  if (const auto* u = std::get_if<UniformCount>(&count)) {
    if (u->n_min < 0 || u->n_min > u->n_max) {
      throw ConfigError("count sampler requires 0 <= n_min <= n_max");
    }
  } else {
    const auto& e = std::get<EmpiricalCount>(count);
    if (e.per_image.empty()) throw ConfigError("empirical count sampler has no images");
    for (int n : e.per_image) {
      if (n < 0) throw ConfigError("empirical count sampler has a negative count");
    }
  }
  if (const auto* e = std::get_if<EmpiricalClasses>(&classes)) {
    for (double w : e->weights) {
      if (!(w >= 0.0)) throw ConfigError("empirical class weights must be non-negative");
    }
  }
  if (!(artifact_rate >= 0.0)) throw ConfigError("artifact_rate must be >= 0");
  if (!(overlap.max_iou >= 0.0 && overlap.max_iou <= 1.0)) {
    throw ConfigError("overlap.max_iou must be in [0, 1]");
  }
  if (overlap.max_attempts < 1) throw ConfigError("overlap.max_attempts must be >= 1");
  auto in_range = [](int v) { return v >= 0 && v <= 255; };
  switch (background.kind) {
    case BackgroundModel::Kind::kConstant:
      if (!in_range(background.gray)) throw ConfigError("background gray must be in [0, 255]");
      break;
    case BackgroundModel::Kind::kSampledConstant:
      if (!in_range(background.lo) || !in_range(background.hi) || background.lo > background.hi) {
        throw ConfigError("background range must satisfy 0 <= lo <= hi <= 255");
      }
      break;
    case BackgroundModel::Kind::kConstantPlusNoise:
      if (!in_range(background.gray)) throw ConfigError("background gray must be in [0, 255]");
      if (!(background.sigma >= 0.0 && background.sigma <= 1.0)) {
        throw ConfigError("background sigma must be in [0, 1]");
      }
      break;
  }
  pre_paste.validate();
  post_paste.validate();
}

CompositionConfig CompositionConfig::preset(std::string_view name) {
  CompositionConfig c;
  if (name == "weak-384") {
    c.canvas = {384, 384};
    c.count = UniformCount{1, 10};
  } else if (name == "detect-416") {
    c.canvas = {416, 416};
    c.count = UniformCount{5, 15};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected weak-384 or detect-416)");
  }
  return c;
}

EmpiricalClasses empirical_class_weights(const DatasetManifest& manifest) {
  EmpiricalClasses e;
  for (const auto& c : manifest.centers) {
    if (is_object_class(c.cls)) e.weights[index_of(c.cls)] += 1.0;
  }
  return e;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Planner {
 public:
  Planner(const CompositionConfig& config, const PatchPool& pool, Rng& rng, CompositionPlan& plan)
      : config_(config), pool_(pool), rng_(rng), plan_(plan) {}

  void add(ClassLabel cls) {
    const auto& patches = pool_.of(cls);
    const std::size_t index = rng_.below(patches.size());
    AugmentChain chain = sample_chain(config_.pre_paste, AugmentStage::kPrePaste, rng_);
    const Patch& patch = patches[index];
    const Size size = chain_output_size(chain, {patch.pixels.width(), patch.pixels.height()});
    if (!used_.emplace(cls, index).second) plan_.patch_reused = true;

    const Size canvas = config_.canvas;
    if (size.w > canvas.w || size.h > canvas.h) {
      plan_.drops.push_back({cls, index, 0});
      return;
    }
    for (int attempt = 0; attempt < config_.overlap.max_attempts; ++attempt) {
      const Rect r{static_cast<int>(rng_.range(0, canvas.w - size.w)),
                   static_cast<int>(rng_.range(0, canvas.h - size.h)), size.w, size.h};
      const bool admissible =
          std::all_of(plan_.placements.begin(), plan_.placements.end(), [&](const PlacedObject& p) {
            return pairwise_iou(r, p.rect()) <= config_.overlap.max_iou;
          });
      if (admissible) {
        plan_.placements.push_back({cls, index, {r.x, r.y}, size, std::move(chain)});
        return;
      }
    }
    plan_.drops.push_back({cls, index, config_.overlap.max_attempts});
  }

 private:
  const CompositionConfig& config_;
  const PatchPool& pool_;
  Rng& rng_;
  CompositionPlan& plan_;
  std::set<std::pair<ClassLabel, std::size_t>> used_;
};

ClassLabel draw_class(const ClassSampler& sampler, const std::vector<ClassLabel>& usable, Rng& rng) {
  if (std::holds_alternative<UniformClasses>(sampler)) return usable[rng.below(usable.size())];
  const auto& w = std::get<EmpiricalClasses>(sampler).weights;
  double total = 0.0;
  for (ClassLabel c : usable) total += w[index_of(c)];
  const double target = rng.uniform01() * total;
  double acc = 0.0;
  for (ClassLabel c : usable) {
    acc += w[index_of(c)];
    if (target < acc) return c;
  }
  // Only reachable through rounding at the upper end.
  for (auto it = usable.rbegin(); it != usable.rend(); ++it) {
    if (w[index_of(*it)] > 0.0) return *it;
  }
  return usable.back();
}

}  // namespace

CompositionPlan sample_plan(const CompositionConfig& config, const PatchPool& pool, Rng& rng) {
  config.validate();
  std::vector<ClassLabel> usable;
  for (ClassLabel c : kObjectClasses) {
    if (pool.empty(c)) continue;
    if (const auto* e = std::get_if<EmpiricalClasses>(&config.classes); e && e->weights[index_of(c)] <= 0.0) {
      continue;
    }
    usable.push_back(c);
  }
  if (usable.empty()) throw EmptyPool("no object class has patches to sample from");

  CompositionPlan plan;
  plan.config = config;
  plan.plan_seed = rng.seed();

  int n = 0;
  if (const auto* u = std::get_if<UniformCount>(&config.count)) {
    n = static_cast<int>(rng.range(u->n_min, u->n_max));
  } else {
    const auto& per_image = std::get<EmpiricalCount>(config.count).per_image;
    n = per_image[rng.below(per_image.size())];
  }

  Planner planner(config, pool, rng, plan);
  for (int i = 0; i < n; ++i) planner.add(draw_class(config.classes, usable, rng));

  if (!pool.empty(ClassLabel::kArtifact)) {
    const std::uint32_t artifacts = rng.poisson(config.artifact_rate);
    for (std::uint32_t i = 0; i < artifacts; ++i) planner.add(ClassLabel::kArtifact);
  }

  plan.background = draw_background(config.background, rng);
  plan.post_paste = sample_chain(config.post_paste, AugmentStage::kPostPaste, rng);
  return plan;
}

BackgroundRealization draw_background(const BackgroundModel& model, Rng& rng) {
  BackgroundRealization bg;
  bg.kind = model.kind;
  switch (model.kind) {
    case BackgroundModel::Kind::kConstant:
      bg.gray = static_cast<std::uint8_t>(std::clamp(model.gray, 0, 255));
      break;
    case BackgroundModel::Kind::kSampledConstant:
      bg.gray = static_cast<std::uint8_t>(rng.range(model.lo, model.hi));
      break;
    case BackgroundModel::Kind::kConstantPlusNoise:
      bg.gray = static_cast<std::uint8_t>(std::clamp(model.gray, 0, 255));
      bg.sigma = model.sigma;
      bg.noise_seed = rng.next_u64();
      break;
  }
  return bg;
}

Image render_background(const BackgroundRealization& bg, Size canvas) {
  Image img(canvas.w, canvas.h);
  const auto& k = simd::active_kernels();
  k.fill_rgb(img.bytes().data(), img.pixel_count(), bg.gray, bg.gray, bg.gray);
  if (bg.kind == BackgroundModel::Kind::kConstantPlusNoise && bg.sigma > 0.0) {
    auto bytes = img.bytes();
    std::vector<std::int16_t> noise(bytes.size());
    Rng rng(bg.noise_seed);
    const double scale = bg.sigma * 255.0;
    for (auto& v : noise) {
      v = static_cast<std::int16_t>(std::clamp<std::int64_t>(round_half_up(rng.normal() * scale), -255, 255));
    }
    k.add_noise(bytes.data(), noise.data(), bytes.size());
  }
  return img;
}

Image realize_background(const BackgroundModel& model, Size canvas, Rng& rng) {
  return render_background(draw_background(model, rng), canvas);
}

SyntheticSample render(const CompositionPlan& plan, const PatchPool& pool, StageTimings* timings) {
  auto t0 = Clock::now();
  SyntheticSample out;
  out.image = render_background(plan.background, plan.config.canvas);
  double paste_s = seconds_since(t0);
  double augment_s = 0.0;

  for (const PlacedObject& p : plan.placements) {
    const auto& patches = pool.of(p.cls);
    if (p.pool_index >= patches.size()) {
      throw StalePlan("placement references " + std::string(class_name(p.cls)) + "[" +
                      std::to_string(p.pool_index) + "] but the pool holds " +
                      std::to_string(patches.size()));
    }
    t0 = Clock::now();
    const Image* src = &patches[p.pool_index].pixels;
    Image augmented;
    if (!p.pre_paste.ops.empty()) {
      augmented = apply_chain(*src, p.pre_paste);
      src = &augmented;
    }
    augment_s += seconds_since(t0);
    if (src->width() != p.pasted_size.w || src->height() != p.pasted_size.h ||
        !p.rect().inside(plan.config.canvas.w, plan.config.canvas.h)) {
      throw StalePlan("placement size or position no longer matches its pool patch");
    }
    t0 = Clock::now();
    out.image.paste(*src, p.position.x, p.position.y);
    paste_s += seconds_since(t0);
  }

  t0 = Clock::now();
  std::vector<Rect> rects;
  rects.reserve(plan.placements.size());
  for (const PlacedObject& p : plan.placements) rects.push_back(p.rect());
  for (const AugmentOp& op : plan.post_paste.ops) {
    if (op.geometric()) {
      const Size before{out.image.width(), out.image.height()};
      for (Rect& r : rects) {
        Size canvas = before;
        r = map_rect(op, r, canvas);
      }
    }
    out.image = apply_op(out.image, op);
  }
  augment_s += seconds_since(t0);

  for (std::size_t i = 0; i < plan.placements.size(); ++i) {
    const ClassLabel cls = plan.placements[i].cls;
    if (is_object_class(cls)) {
      out.boxes.push_back({cls, rects[i]});
      out.multilabel.set(index_of(cls));
    } else if (plan.config.label_artifacts) {
      out.boxes.push_back({cls, rects[i]});
    }
  }
  out.plan = plan;
  if (timings) {
    timings->augment += augment_s;
    timings->paste += paste_s;
  }
  return out;
}

}  // namespace synthpaste

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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 only
// when every line passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../../tools/cli.hpp"
#include "support.hpp"
#include "synthpaste/augment.hpp"
#include "synthpaste/compositor.hpp"
#include "synthpaste/demo.hpp"
#include "synthpaste/emitters.hpp"
#include "synthpaste/error.hpp"
#include "synthpaste/stats.hpp"
#include "synthpaste/stream.hpp"

using namespace synthpaste;
using namespace synthpaste::test;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "synthpaste");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
  if (out_text) *out_text = out.str();
  return code;
}

// Pool cut from procedural source images, the same way the CLI builds it.
std::shared_ptr<PatchPool> demo_pool(std::uint64_t seed) {
  DemoOptions o;
  o.images = 24;
  o.seed = seed;
  const SizeTable sizes = SizeTable::example();
  DemoDataset d = make_demo(o, sizes);
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < d.manifest.records.size(); ++i) by_id[d.manifest.records[i].id] = i;
  auto loader = [&](const SourceImageRecord& r) { return d.images.at(by_id.at(r.id)); };
  return std::make_shared<PatchPool>(build_patch_pool(d.manifest, sizes, seed, loader).pool);
}

// Integer IoU comparison: inter / union <= num / den.
bool iou_at_most(const Rect& a, const Rect& b, long long num, long long den) {
  const long long ix = std::max(0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const long long iy = std::max(0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const long long inter = ix * iy;
  const long long uni = static_cast<long long>(a.w) * a.h + static_cast<long long>(b.w) * b.h - inter;
  return inter * den <= num * uni;
}

double iou(const Rect& a, const Rect& b) {
  const double ix = std::max(0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const double iy = std::max(0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const double inter = ix * iy;
  return inter / (static_cast<double>(a.w) * a.h + static_cast<double>(b.w) * b.h - inter);
}

/// Pixels that differ from a constant gray and are not covered by any box.
std::size_t stray_pixels(const Image& img, std::uint8_t gray, const std::vector<Rect>& boxes,
                         std::size_t* differing = nullptr) {
  std::vector<char> covered(static_cast<std::size_t>(img.width()) * img.height(), 0);
  for (const Rect& r : boxes) {
    for (int y = r.y; y < r.y + r.h; ++y) {
      for (int x = r.x; x < r.x + r.w; ++x) covered[static_cast<std::size_t>(y) * img.width() + x] = 1;
    }
  }
  std::size_t stray = 0, diff = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::uint8_t* p = img.pixel(x, y);
      if (p[0] == gray && p[1] == gray && p[2] == gray) continue;
      ++diff;
      if (!covered[static_cast<std::size_t>(y) * img.width() + x]) ++stray;
    }
  }
  if (differing) *differing += diff;
  return stray;
}

Outcome determinism() {
  TempDir dir;
  if (invoke({"demo", "--out", dir.path().string()}) != 0) return {false, "demo failed"};
  const std::string config = (dir / "config.json").string();
  const auto t0 = Clock::now();
  for (const char* name : {"a", "b"}) {
    if (invoke({"synth", "--config", config, "--count", "200", "--seed", "20261019", "--out", (dir / name).string()}) != 0) {
      return {false, "synth failed"};
    }
  }
  const double seconds = since(t0);
  const auto a = snapshot_tree(dir / "a"), b = snapshot_tree(dir / "b");
  std::size_t images = 0;
  for (const auto& [k, _] : a) images += k.rfind("images/", 0) == 0 ? 1 : 0;
  const bool same = a == b;
  return {same && images == 200 && seconds < 60.0,
          fmt("%zu files each, identical=%s, %.1fs for both runs (limit 60s)", a.size(), same ? "yes" : "no", seconds)};
}

Outcome label_exactness() {
  GeneratorSpec spec;
  spec.pool = demo_pool(7);
  spec.config = CompositionConfig::preset("detect-416");
  spec.config.background = BackgroundModel::constant(220);
  spec.config.artifact_rate = 0.0;
  spec.master_seed = 501;
  std::size_t stray = 0, differing = 0, boxes = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const SyntheticSample s = sample_at(spec, i);
    std::vector<Rect> rects;
    for (const auto& b : s.boxes) rects.push_back(b.rect);
    boxes += rects.size();
    stray += stray_pixels(s.image, 220, rects, &differing);
  }
  return {stray == 0 && differing > 0,
          fmt("500 samples, %zu boxes, %zu non-background pixels, %zu outside boxes", boxes, differing, stray)};
}

Outcome jitter_bounds() {
  // 10,000 centers spread over 25 source images.
  Rng rng(33);
  DatasetManifest m;
  std::vector<Image> images;
  for (int i = 0; i < 25; ++i) {
    const std::string id = "fov" + std::to_string(i);
    m.records.push_back({id, "s" + std::to_string(i), id + ".png", 320, 240});
    images.push_back(random_image(320, 240, rng));
  }
  for (int i = 0; i < 10000; ++i) {
    m.centers.push_back({"fov" + std::to_string(i % 25), static_cast<int>(rng.range(0, 319)),
                         static_cast<int>(rng.range(0, 239)), kAllClasses[rng.below(kAllClasses.size())]});
  }
  const SizeTable sizes = SizeTable::example();
  auto loader = [&](const SourceImageRecord& r) { return images.at(std::stoul(r.id.substr(3))); };
  const PoolBuildResult built = build_patch_pool(m, sizes, 44, loader);

  std::size_t n = 0, out_of_bounds = 0;
  std::array<std::uint64_t, 5> bins{};
  for (ClassLabel c : kAllClasses) {
    const Size nominal = sizes[c];
    const int lo_w = static_cast<int>(std::floor(0.9 * nominal.w + 0.5));
    const int lo_h = static_cast<int>(std::floor(0.9 * nominal.h + 0.5));
    for (const Patch& p : built.pool.of(c)) {
      ++n;
      const int w = p.pixels.width(), h = p.pixels.height();
      if (w < lo_w || w > nominal.w || h < lo_h || h > nominal.h) ++out_of_bounds;
      if (!(p.jitter_u >= 0.0 && p.jitter_u <= 0.1)) ++out_of_bounds;
      ++bins[std::min<std::size_t>(4, static_cast<std::size_t>(p.jitter_u / 0.02))];
    }
  }
  const std::vector<double> uniform(5, 0.2);
  const ConformanceReport r = conformance(bins, uniform, 0.05);
  return {n == 10000 && built.failures.empty() && out_of_bounds == 0 && r.pass,
          fmt("%zu patches, %zu outside bounds, u chi2=%.3f (df %d, critical %.3f)", n, out_of_bounds, r.statistic,
              r.degrees_of_freedom, r.critical_value)};
}

Outcome overlap_policy() {
  const auto pool = demo_pool(9);
  CompositionConfig config = CompositionConfig::preset("detect-416");
  config.count = UniformCount{10, 40};
  Rng rng(55);
  double worst = 0.0;
  std::size_t violations = 0, pairs = 0, overlapping = 0;
  for (int i = 0; i < 1000; ++i) {
    const CompositionPlan plan = sample_plan(config, *pool, rng);
    for (std::size_t a = 0; a < plan.placements.size(); ++a) {
      for (std::size_t b = a + 1; b < plan.placements.size(); ++b) {
        const Rect ra = plan.placements[a].rect(), rb = plan.placements[b].rect();
        ++pairs;
        worst = std::max(worst, iou(ra, rb));
        if (!iou_at_most(ra, rb, 1, 10)) ++violations;
        if (!iou_at_most(ra, rb, 0, 1)) ++overlapping;
      }
    }
  }
  config.overlap.max_iou = 0.0;
  std::size_t touching = 0, disjoint_pairs = 0;
  for (int i = 0; i < 1000; ++i) {
    const CompositionPlan plan = sample_plan(config, *pool, rng);
    for (std::size_t a = 0; a < plan.placements.size(); ++a) {
      for (std::size_t b = a + 1; b < plan.placements.size(); ++b) {
        ++disjoint_pairs;
        if (!iou_at_most(plan.placements[a].rect(), plan.placements[b].rect(), 0, 1)) ++touching;
      }
    }
  }
  return {violations == 0 && touching == 0 && overlapping > 0,
          fmt("max_iou=0.1: %zu pairs, %zu overlapping, max IoU %.4f, %zu above; max_iou=0: %zu pairs, %zu intersecting",
              pairs, overlapping, worst, violations, disjoint_pairs, touching)};
}

Outcome class_conformance() {
  const auto pool = demo_pool(11);
  CompositionConfig config = CompositionConfig::preset("detect-416");
  config.count = UniformCount{1, 10};
  config.artifact_rate = 0.0;
  const std::array<double, kNumObjectClasses> uniform = {0.2, 0.2, 0.2, 0.2, 0.2};
  int passes = 0;
  std::uint64_t drops = 0, placements = 0;
  for (int run = 0; run < 100; ++run) {
    Rng rng = Rng::substream(777, static_cast<std::uint64_t>(run));
    ClassHistogram h;
    while (h.object_total() < 10000) {
      const CompositionPlan plan = sample_plan(config, *pool, rng);
      for (const auto& p : plan.placements) ++h[p.cls];
      drops += plan.drops.size();
    }
    placements += h.object_total();
    passes += conformance(h, uniform, 0.05).pass ? 1 : 0;
  }
  return {passes >= 95, fmt("%d/100 runs pass at alpha 0.05 (need 95); %llu placements, %llu drops", passes,
                            static_cast<unsigned long long>(placements), static_cast<unsigned long long>(drops))};
}

OutputManifest fake_manifest(std::size_t n, const char* provenance) {
  OutputManifest m;
  for (std::size_t i = 0; i < n; ++i) {
    ManifestEntry e;
    e.image = std::string(provenance) + "/" + image_name(i);
    e.label = e.image + ".txt";
    e.provenance = provenance;
    m.entries.push_back(e);
  }
  return m;
}

Outcome mix_ratio() {
  const OutputManifest m = mix_manifests(fake_manifest(900, "synthetic"), fake_manifest(1000, "real"), {0.1, 1});
  const auto real = std::count_if(m.entries.begin(), m.entries.end(),
                                  [](const ManifestEntry& e) { return e.provenance == "real"; });
  Rng rng(66);
  double worst = 0.0;
  int off = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t s = rng.range(1, 5000);
    const double f = rng.uniform(0.0, 0.95);
    const std::size_t available = rng.range(0, 50000);
    std::size_t r = 0;
    try {
      r = real_count_for_fraction(s, available, f);
    } catch (const Error&) {
      continue;
    }
    const OutputManifest mixed = mix_manifests(fake_manifest(s, "synthetic"), fake_manifest(available, "real"), {f, rng.next_u64()});
    const double total = static_cast<double>(mixed.entries.size());
    const double err = std::abs(static_cast<double>(r) / total - f) * total;
    worst = std::max(worst, err);
    if (mixed.entries.size() != s + r || err > 1.0) ++off;
  }
  return {real == 100 && m.entries.size() == 1000 && off == 0,
          fmt("900+1000 at 0.1 -> %ld real of %zu; randomized: worst |achieved-requested|*total = %.4f, %d beyond 1",
              static_cast<long>(real), m.entries.size(), worst, off)};
}

Outcome scale() {
  TempDir dir;
  if (invoke({"demo", "--out", dir.path().string()}) != 0) return {false, "demo failed"};
  const std::string config = (dir / "config.json").string();
  const auto t0 = Clock::now();
  if (invoke({"synth", "--config", config, "--preset", "detect-416", "--count", "7700", "--workers", "4", "--out",
              (dir / "scale").string()}) != 0) {
    return {false, "synth failed"};
  }
  const double seconds = since(t0);
  std::string bench_text;
  if (invoke({"bench", "--config", config, "--preset", "detect-416", "--workers", "4", "--samples", "400"},
             &bench_text) != 0) {
    return {false, "bench failed"};
  }
  const json bench = json::parse(bench_text);
  const double efficiency = bench["parallel_efficiency"].get<double>();
  const int hw = bench["hardware_threads"].get<int>();
  return {seconds < 600.0 && efficiency >= 0.6,
          fmt("7700 images at 416x416 in %.1fs with 4 workers (limit 600s); parallel efficiency %.3f at 4 workers "
              "(need 0.6) on a host with %d hardware threads",
              seconds, efficiency, hw)};
}

Outcome yolo_round_trip() {
  Rng rng(88);
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const Size canvas{static_cast<int>(rng.range(16, 4096)), static_cast<int>(rng.range(16, 4096))};
    const int w = static_cast<int>(rng.range(1, canvas.w)), h = static_cast<int>(rng.range(1, canvas.h));
    const Rect r{static_cast<int>(rng.range(0, canvas.w - w)), static_cast<int>(rng.range(0, canvas.h - h)), w, h};
    const LabeledBox box{kObjectClasses[rng.below(kObjectClasses.size())], r};
    std::string line = emit_yolo(std::span(&box, 1), canvas, default_class_order());
    line.pop_back();
    const PixelBox p = denormalize(parse_yolo_line(line), canvas);
    const double e = std::max({std::abs(p.x - r.x), std::abs(p.y - r.y), std::abs(p.w - r.w), std::abs(p.h - r.h)});
    worst = std::max(worst, e);
    if (e > 0.5) ++bad;
  }
  return {bad == 0, fmt("10000 boxes, worst coordinate error %.4f px, %d above 0.5", worst, bad)};
}

// Reference index maps, written out independently of the library.
Image ref_flip_h(const Image& a) {
  Image o(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) std::copy_n(a.pixel(a.width() - 1 - x, y), 3, o.pixel(x, y));
  return o;
}
Image ref_flip_v(const Image& a) {
  Image o(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) std::copy_n(a.pixel(x, a.height() - 1 - y), 3, o.pixel(x, y));
  return o;
}
Image ref_rot90_cw(const Image& a) {
  Image o(a.height(), a.width());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) std::copy_n(a.pixel(x, y), 3, o.pixel(a.height() - 1 - y, x));
  return o;
}

Outcome augmentation_algebra() {
  const AugmentOp fh{AugmentKind::kFlipH}, fv{AugmentKind::kFlipV};
  auto rot = [](int k) { return AugmentOp{AugmentKind::kRotate90, k}; };
  Rng rng(99);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const Image img = random_image(static_cast<int>(rng.range(1, 64)), static_cast<int>(rng.range(1, 64)), rng);
    const Image h = apply_op(img, fh), v = apply_op(img, fv), r1 = apply_op(img, rot(1));
    bool ok = apply_op(h, fh) == img && apply_op(v, fv) == img;
    ok = ok && apply_op(apply_op(apply_op(r1, rot(1)), rot(1)), rot(1)) == img;
    ok = ok && apply_op(img, rot(2)) == apply_op(h, fv);
    ok = ok && apply_op(r1, rot(3)) == img;
    ok = ok && h == ref_flip_h(img) && v == ref_flip_v(img) && r1 == ref_rot90_cw(img);
    failures += ok ? 0 : 1;
  }

  // Post-paste geometry: render a plan with and without the final op.
  GeneratorSpec spec;
  spec.pool = demo_pool(13);
  spec.config = CompositionConfig::preset("detect-416");
  spec.config.canvas = {416, 320};
  spec.config.background = BackgroundModel::constant(220);
  spec.config.artifact_rate = 0.0;
  spec.config.post_paste = AugmentConfig::disabled();
  int relocation_failures = 0;
  std::size_t stray = 0, moved = 0;
  Rng prng(1300);
  for (int i = 0; i < 300; ++i) {
    CompositionPlan plan = sample_plan(spec.config, *spec.pool, prng);
    const SyntheticSample base = render(plan, *spec.pool);
    const AugmentOp op = i % 3 == 0 ? fh : i % 3 == 1 ? fv : rot(1);
    plan.post_paste.ops = {op};
    const SyntheticSample s = render(plan, *spec.pool);
    const Image want = i % 3 == 0 ? ref_flip_h(base.image) : i % 3 == 1 ? ref_flip_v(base.image) : ref_rot90_cw(base.image);
    bool ok = s.image == want && s.boxes.size() == base.boxes.size();
    const int W = base.image.width(), H = base.image.height();
    std::vector<Rect> rects;
    for (std::size_t b = 0; ok && b < base.boxes.size(); ++b) {
      const Rect r = base.boxes[b].rect;
      const Rect expect = i % 3 == 0   ? Rect{W - r.x - r.w, r.y, r.w, r.h}
                          : i % 3 == 1 ? Rect{r.x, H - r.y - r.h, r.w, r.h}
                                       : Rect{H - r.y - r.h, r.x, r.h, r.w};
      ok = s.boxes[b].rect == expect && s.boxes[b].cls == base.boxes[b].cls;
      rects.push_back(s.boxes[b].rect);
    }
    if (ok) stray += stray_pixels(s.image, 220, rects, &moved);
    relocation_failures += ok ? 0 : 1;
  }
  return {failures == 0 && relocation_failures == 0 && stray == 0 && moved > 0,
          fmt("1000 images: %d identity failures; 300 post-paste flips/rotations: %d relocation mismatches, "
              "%zu of %zu moved pixels outside transformed boxes",
              failures, relocation_failures, stray, moved)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"end-to-end determinism", determinism},
      {"label exactness", label_exactness},
      {"jitter bounds", jitter_bounds},
      {"overlap policy", overlap_policy},
      {"class-distribution conformance", class_conformance},
      {"mix ratio", mix_ratio},
      {"scale and parallel efficiency", scale},
      {"yolo round trip", yolo_round_trip},
      {"augmentation algebra", augmentation_algebra},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-32s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

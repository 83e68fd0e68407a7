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

#include "synthpaste/demo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "synthpaste/error.hpp"
#include "synthpaste/random.hpp"

namespace synthpaste {

namespace {

struct Look {
  std::array<int, 3> rgb;
  double fill;  // blob radius as a fraction of the nominal half-size
  bool square;
};

// Rough colour cues only.
constexpr PerClass<Look> kLooks = {{
    {{70, 60, 90}, 0.6, false},    // BACTERIA
    {{150, 200, 215}, 0.8, true},  // CRYSTAL
    {{190, 90, 80}, 0.85, false},  // RBC
    {{140, 110, 170}, 0.85, false},// WBC
    {{180, 160, 110}, 0.75, false},// YEAST
    {{120, 120, 120}, 0.7, false}, // ARTIFACT
}};

std::uint8_t clamp8(double v) { return static_cast<std::uint8_t>(std::clamp<std::int64_t>(round_half_up(v), 0, 255)); }

void draw_blob(Image& img, Point c, Size nominal, const Look& look, Rng& rng) {
  const double rx = std::max(1.0, nominal.w * 0.5 * look.fill);
  const double ry = std::max(1.0, nominal.h * 0.5 * look.fill);
  const double shade = rng.uniform(-15, 15);
  const int x0 = std::max(0, static_cast<int>(c.x - rx)), x1 = std::min(img.width() - 1, static_cast<int>(c.x + rx));
  const int y0 = std::max(0, static_cast<int>(c.y - ry)), y1 = std::min(img.height() - 1, static_cast<int>(c.y + ry));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = (x - c.x) / rx, dy = (y - c.y) / ry;
      const double d = look.square ? std::max(std::abs(dx), std::abs(dy)) : std::sqrt(dx * dx + dy * dy);
      if (d > 1.0) continue;
      const double rim = d > 0.75 ? -25.0 : 0.0;
      std::uint8_t* p = img.pixel(x, y);
      for (int ch = 0; ch < 3; ++ch) p[ch] = clamp8(look.rgb[ch] + shade + rim);
    }
  }
}

}  // namespace

DemoDataset make_demo(const DemoOptions& o, const SizeTable& sizes) {
  if (o.images < 0 || o.images_per_sample < 1 || o.min_objects < 0 || o.max_objects < o.min_objects ||
      o.fov.w < 1 || o.fov.h < 1) {
    throw ConfigError("invalid demo options");
  }
  DemoDataset d;
  Rng rng(o.seed);
  for (int i = 0; i < o.images; ++i) {
    char id[32], sample[32];
    std::snprintf(id, sizeof id, "fov_%03d", i);
    std::snprintf(sample, sizeof sample, "S%02d", i / o.images_per_sample);
    d.manifest.records.push_back({id, sample, std::string("images/") + id + ".png", o.fov.w, o.fov.h});

    Image img(o.fov.w, o.fov.h);
    const int base = static_cast<int>(rng.range(205, 230));
    for (auto& b : img.bytes()) b = clamp8(base + 4.0 * rng.normal());

    const int n = static_cast<int>(rng.range(o.min_objects, o.max_objects));
    for (int k = 0; k < n; ++k) {
      const ClassLabel cls = rng.bernoulli(o.artifact_share)
                                 ? ClassLabel::kArtifact
                                 : kObjectClasses[rng.below(kNumObjectClasses)];
      const Size nom = sizes[cls];
      if (nom.w > o.fov.w || nom.h > o.fov.h) continue;
      const Point c{static_cast<int>(rng.range(nom.w / 2, o.fov.w - 1 - nom.w / 2)),
                    static_cast<int>(rng.range(nom.h / 2, o.fov.h - 1 - nom.h / 2))};
      draw_blob(img, c, nom, kLooks[index_of(cls)], rng);
      d.manifest.centers.push_back({id, c.x, c.y, cls});
      if (is_object_class(cls)) {
        const Rect r = jittered_crop_rect(c, nom, 0.0, o.fov);
        d.manifest.boxes.push_back({id, r.x, r.y, r.w, r.h, cls});
      }
    }
    d.images.push_back(std::move(img));
  }
  d.manifest.meta["generator"] = "demo";
  return d;
}

DatasetManifest write_demo(const std::filesystem::path& dir, const DemoOptions& options) {
  const SizeTable sizes = SizeTable::example();
  DemoDataset d = make_demo(options, sizes);
  std::error_code ec;
  std::filesystem::create_directories(dir / "images", ec);
  if (ec) throw IoError("cannot create " + (dir / "images").string() + ": " + ec.message());
  for (std::size_t i = 0; i < d.images.size(); ++i) {
    write_png(dir / d.manifest.records[i].path, d.images[i]);
  }
  write_text_file(dir / "manifest.json", serialize_manifest(d.manifest));
  write_text_file(dir / "size_table.json", sizes.to_json());

  nlohmann::ordered_json cfg;
  cfg["preset"] = "detect-416";
  cfg["seed"] = options.seed;
  cfg["paths"] = {{"manifest", "manifest.json"},
                  {"size_table", "size_table.json"},
                  {"output", "out/synth"},
                  {"pool_cache", "out/pool"}};
  cfg["synth"] = {{"count", 100}};
  write_text_file(dir / "config.json", cfg.dump(2) + "\n");
  return d.manifest;
}

}  // namespace synthpaste

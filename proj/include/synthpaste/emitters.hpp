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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synthpaste/class_label.hpp"
#include "synthpaste/compositor.hpp"
#include "synthpaste/geometry.hpp"

namespace synthpaste {

enum class LabelFormat : std::uint8_t { kYoloTxt, kCocoJson, kMultilabelCsv };

std::string_view format_name(LabelFormat f);
/// Throws ConfigError.
LabelFormat parse_format(std::string_view name);

using ClassOrder = std::vector<ClassLabel>;

/// BACTERIA, CRYSTAL, RBC, WBC, YEAST.
ClassOrder default_class_order();
/// Throws ConfigError on unknown or repeated names.
ClassOrder parse_class_order(const std::vector<std::string>& names);

struct DatasetLayout {
  std::filesystem::path root;
  std::string images_dir = "images";
  std::string labels_dir = "labels";
  std::string manifest_file = "manifest.json";
  LabelFormat format = LabelFormat::kYoloTxt;
  ClassOrder class_order = default_class_order();

  std::filesystem::path manifest_path() const { return root / manifest_file; }
};

/// `<class_index> <cx> <cy> <w> <h>` per box, normalized by the canvas and
/// rounded half-up to 6 decimals with exact integer arithmetic.
std::string emit_yolo(std::span<const LabeledBox> boxes, Size canvas, const ClassOrder& order);
std::string emit_yolo(const SyntheticSample& sample, const ClassOrder& order);

struct YoloBox {
  std::size_t class_index = 0;
  double cx = 0, cy = 0, w = 0, h = 0;
};

/// Parses one label line. Throws ParseError.
YoloBox parse_yolo_line(std::string_view line);

/// Pixel box (x, y, w, h) recovered from normalized coordinates.
struct PixelBox {
  double x = 0, y = 0, w = 0, h = 0;
};
PixelBox denormalize(const YoloBox& box, Size canvas);

std::string multilabel_header();
std::string emit_multilabel(std::span<const std::pair<std::string, MultiLabel>> rows);

struct CocoImage {
  std::string file_name;
  Size size;
  std::vector<LabeledBox> boxes;
};

/// Detection-interchange JSON with stable key order and sequential ids.
std::string emit_coco(std::span<const CocoImage> images, const ClassOrder& order);
std::string emit_coco(std::span<const SyntheticSample> samples, const ClassOrder& order);

/// `img_000001.png` style name for the 0-based position i.
std::string image_name(std::size_t i);

struct ManifestEntry {
  std::string image;  // relative to the dataset root
  std::string label;
  std::string provenance = "synthetic";
  std::optional<std::uint64_t> plan_seed;
  Size size;
  MultiLabel multilabel;
  std::size_t objects = 0;
  std::size_t artifacts = 0;
  std::size_t drops = 0;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct OutputManifest {
  LabelFormat format = LabelFormat::kYoloTxt;
  ClassOrder class_order = default_class_order();
  std::vector<ManifestEntry> entries;
  friend bool operator==(const OutputManifest&, const OutputManifest&) = default;
};

std::string serialize_output_manifest(const OutputManifest& manifest);
/// Throws ParseError.
OutputManifest parse_output_manifest(std::string_view text);
OutputManifest read_output_manifest(const std::filesystem::path& path);

/// Incremental dataset writer: images are numbered in the order they are
/// added, so a dataset written in chunks is byte-identical to one written
/// at once. Global label files and the manifest are written by finish().
class DatasetWriter {
 public:
  struct Item {
    const Image* image;
    const std::vector<LabeledBox>* boxes;
    ManifestEntry entry;  // image, label and size are filled in by add()
  };

  /// Creates the directory tree. Throws IoError, ConfigError.
  explicit DatasetWriter(DatasetLayout layout);

  /// Encodes on up to `workers` threads; bytes do not depend on it.
  void add(std::span<const Item> items, int workers = 1, StageTimings* timings = nullptr);
  void add(std::span<const SyntheticSample> samples, int workers = 1,
           StageTimings* timings = nullptr);

  OutputManifest finish();
  const DatasetLayout& layout() const { return layout_; }

 private:
  DatasetLayout layout_;
  OutputManifest manifest_;
  std::vector<CocoImage> coco_;
};

/// PNG images, per-format label files and the manifest for `samples`.
/// Throws IoError with the offending path.
OutputManifest write_dataset(std::span<const SyntheticSample> samples, const DatasetLayout& layout,
                             int workers = 1, StageTimings* timings = nullptr);

/// Images with expert box annotations written as a dataset tagged "real".
struct RealImage {
  Image image;
  std::vector<LabeledBox> boxes;
};
OutputManifest write_real_dataset(std::span<const RealImage> images, const DatasetLayout& layout);

struct MixSpec {
  double real_fraction = 0.1;
  std::uint64_t seed = 0;
};

/// Real images needed so real / (real + synthetic) is closest to the
/// fraction (round-half-up). Throws InsufficientReal naming the largest
/// achievable fraction when the pool is too small.
std::size_t real_count_for_fraction(std::size_t synthetic, std::size_t real_available,
                                    double real_fraction);

/// All synthetic entries followed by a seeded uniform subset (without
/// replacement, original order kept) of the real entries.
OutputManifest mix_manifests(const OutputManifest& synthetic, const OutputManifest& real,
                             const MixSpec& spec);

/// Mixes two on-disk datasets into `out_root`/manifest.json; entry paths are
/// rewritten relative to `out_root`. Throws ConfigError if formats or class
/// orders differ.
OutputManifest mix_datasets(const DatasetLayout& synthetic, const DatasetLayout& real,
                            const MixSpec& spec, const std::filesystem::path& out_root);

}  // namespace synthpaste

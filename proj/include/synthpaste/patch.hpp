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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "synthpaste/annotation.hpp"
#include "synthpaste/class_label.hpp"
#include "synthpaste/geometry.hpp"
#include "synthpaste/image.hpp"
#include "synthpaste/random.hpp"

namespace synthpaste {

/// Largest jitter: up to this fraction of each crop dimension is dropped.
inline constexpr double kMaxJitter = 0.1;

/// Per-class nominal crop size in pixels (the class's average biological
/// extent under the capture magnification).
class SizeTable {
 public:
  /// Throws ConfigError if any dimension is below 4 px.
  explicit SizeTable(const PerClass<Size>& entries);

  const Size& operator[](ClassLabel c) const { return entries_[index_of(c)]; }
  const PerClass<Size>& entries() const { return entries_; }

  /// {"RBC": [w, h], ...}; all six classes required, keys starting with '_'
  /// are ignored. Throws ConfigError.
  static SizeTable parse(std::string_view json_text);
  static SizeTable load(const std::filesystem::path& path);
  std::string to_json() const;

  /// Placeholder values for demos and tests; not measured sizes.
  static SizeTable example();

 private:
  PerClass<Size> entries_;
};

/// Crop of nominal * (1 - u) (round-half-up) centred on `center`, then
/// shifted inward by the minimal offset that keeps it inside the image.
/// Throws NominalTooLarge if the scaled size exceeds the image.
Rect jittered_crop_rect(Point center, Size nominal, double u, Size image);

struct Patch {
  Image pixels;
  ClassLabel cls = ClassLabel::kRbc;
  std::string source_image_id;
  std::size_t source_annotation_index = 0;
  Rect crop;
  double jitter_u = 0.0;
};

class PatchPool {
 public:
  PerClass<std::vector<Patch>> by_class;

  const std::vector<Patch>& of(ClassLabel c) const { return by_class[index_of(c)]; }
  std::vector<Patch>& of(ClassLabel c) { return by_class[index_of(c)]; }
  std::size_t total() const;
  bool empty(ClassLabel c) const { return of(c).empty(); }
};

/// Draws u ~ U[0, 0.1) from rng and copies the jittered crop bit-exactly.
Patch extract_patch(const Image& image, const CenterAnnotation& annotation,
                    const SizeTable& size_table, Rng& rng, std::size_t annotation_index = 0);

using ImageLoader = std::function<Image(const SourceImageRecord&)>;

/// Reads record.path relative to base_dir and checks the decoded size
/// against the record. Throws DecodeError.
ImageLoader file_image_loader(std::filesystem::path base_dir);

struct PoolFailure {
  std::string image_id;
  std::string kind;  // "DecodeError" or "NominalTooLarge"
  std::string message;
  std::ptrdiff_t annotation_index = -1;  // -1 for whole-image failures
};

struct PoolBuildResult {
  PatchPool pool;
  std::vector<PoolFailure> failures;
};

/// One patch per center annotation (artifacts included), in manifest order.
/// Annotation i draws its jitter from substream (seed, i), so the result
/// does not depend on `workers`. Failures are collected, not thrown.
PoolBuildResult build_patch_pool(const DatasetManifest& manifest, const SizeTable& size_table,
                                 std::uint64_t seed, const ImageLoader& loader, int workers = 1);

/// Writes `<CLASS>/<image_id>_<annotation_index>.png` per patch plus
/// index.json with the patch metadata.
void save_pool_cache(const PatchPool& pool, const std::filesystem::path& dir);
PatchPool load_pool_cache(const std::filesystem::path& dir);

}  // namespace synthpaste

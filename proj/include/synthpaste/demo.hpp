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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "synthpaste/annotation.hpp"
#include "synthpaste/geometry.hpp"
#include "synthpaste/image.hpp"
#include "synthpaste/patch.hpp"

namespace synthpaste {

/// Procedural stand-in for microscope captures: a noisy light field with
/// simple class-coloured blobs, plus exact center and box annotations.
/// Useful for smoke runs and tests; looks nothing like real urine sediment.
struct DemoOptions {
  int images = 12;
  int images_per_sample = 3;
  Size fov{640, 480};
  int min_objects = 6;
  int max_objects = 14;
  double artifact_share = 0.15;
  std::uint64_t seed = 1;
};

struct DemoDataset {
  DatasetManifest manifest;  // records point at images/<id>.png
  std::vector<Image> images;
};

DemoDataset make_demo(const DemoOptions& options, const SizeTable& sizes);

/// Writes images/, manifest.json, size_table.json and config.json (paths
/// relative to `dir`). Returns the manifest written.
DatasetManifest write_demo(const std::filesystem::path& dir, const DemoOptions& options);

}  // namespace synthpaste

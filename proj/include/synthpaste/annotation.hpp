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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synthpaste/class_label.hpp"

namespace synthpaste {

/// Expert click on an object's center.
struct CenterAnnotation {
  std::string image_id;
  int x = 0;  // column
  int y = 0;  // row
  ClassLabel cls = ClassLabel::kRbc;
  friend bool operator==(const CenterAnnotation&, const CenterAnnotation&) = default;
};

/// Exhaustive box annotation; x, y is the top-left corner.
struct BoxAnnotation {
  std::string image_id;
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  ClassLabel cls = ClassLabel::kRbc;
  friend bool operator==(const BoxAnnotation&, const BoxAnnotation&) = default;
};

/// One field-of-view capture. sample_id groups all captures of one urine sample.
struct SourceImageRecord {
  std::string id;
  std::string sample_id;
  std::string path;
  int width = 0;
  int height = 0;
  friend bool operator==(const SourceImageRecord&, const SourceImageRecord&) = default;
};

struct DatasetManifest {
  std::vector<SourceImageRecord> records;
  std::vector<CenterAnnotation> centers;
  std::vector<BoxAnnotation> boxes;
  std::map<std::string, std::string> meta;

  const SourceImageRecord* find(std::string_view image_id) const;
  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

enum class ManifestFormat { kJson, kCsv };

struct ValidationFinding {
  std::string kind;   // e.g. "BoundsError", "ReferentialError", "DuplicateImageId"
  std::string locus;  // e.g. "centers[3]"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationFinding> errors;
  /// Non-fatal observations, e.g. duplicate identical center annotations.
  std::vector<ValidationFinding> warnings;

  bool ok() const { return errors.empty(); }
};

/// Lists every invariant violation; never throws.
ValidationReport validate_manifest(const DatasetManifest& manifest);

/// Parses a manifest. JSON is self-contained; CSV carries annotations only
/// (center or box layout, chosen from the header) and is resolved against
/// the records of `base`. Annotation order follows the input.
///
/// Throws SyntaxError (with line or record locus), ReferentialError or
/// BoundsError.
DatasetManifest parse_manifest(std::string_view input, ManifestFormat format,
                               const DatasetManifest* base = nullptr);

/// Same parsing without the invariant checks, for reporting tools that want
/// every violation rather than the first. Still throws SyntaxError.
DatasetManifest parse_manifest_unvalidated(std::string_view input, ManifestFormat format,
                                           const DatasetManifest* base = nullptr);

/// Canonical JSON form; parse_manifest(serialize_manifest(m)) == m.
std::string serialize_manifest(const DatasetManifest& manifest);

DatasetManifest load_manifest(const std::string& path);

struct ManifestSplit {
  DatasetManifest train;
  DatasetManifest test;
};

/// Partitions whole urine samples. round-half-up(test_fraction * #samples)
/// sample ids go to test; the choice depends only on the sorted sample ids
/// and the seed.
ManifestSplit split_by_sample(const DatasetManifest& manifest, double test_fraction,
                              std::uint64_t seed);

/// Non-artifact center counts per image, in record order. Feeds the
/// empirical count sampler.
std::vector<int> per_image_object_counts(const DatasetManifest& manifest);

}  // namespace synthpaste

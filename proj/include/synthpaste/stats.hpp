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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "synthpaste/class_label.hpp"
#include "synthpaste/compositor.hpp"
#include "synthpaste/emitters.hpp"
#include "synthpaste/patch.hpp"

namespace synthpaste {

struct ClassHistogram {
  PerClass<std::uint64_t> counts{};  // ARTIFACT kept in its own slot
  std::uint64_t total_images = 0;
  std::uint64_t drops = 0;

  std::uint64_t object_total() const;
  std::uint64_t& operator[](ClassLabel c) { return counts[index_of(c)]; }
  std::uint64_t operator[](ClassLabel c) const { return counts[index_of(c)]; }
  friend bool operator==(const ClassHistogram&, const ClassHistogram&) = default;
};

/// Counts boxes per class (placed artifacts counted separately).
ClassHistogram histogram(std::span<const SyntheticSample> samples);
/// Patches per class in a pool.
ClassHistogram histogram(const PatchPool& pool);
/// Center (or, if there are none, box) annotations per class of a source
/// manifest; total_images counts its image records.
ClassHistogram histogram(const DatasetManifest& manifest);
/// Reads an on-disk dataset: boxes for yolo_txt / coco_json, set bits for
/// multilabel_csv. Throws ParseError naming the file and line.
ClassHistogram histogram(const std::filesystem::path& dataset_root);

struct ConformanceReport {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double critical_value = 0;
  double alpha = 0.05;
  bool pass = false;
};

/// Chi-square critical value for df in [1, 8] and alpha in {0.05, 0.01}.
/// Throws ConfigError otherwise.
double chi_square_critical(int df, double alpha);

/// Pearson goodness of fit. Categories with zero expected probability and
/// zero observations are dropped; df = remaining categories - 1.
/// Throws DegenerateExpected or ConfigError.
ConformanceReport conformance(std::span<const std::uint64_t> observed,
                              std::span<const double> expected, double alpha);
/// Over the five object classes; `expected` in canonical class order.
ConformanceReport conformance(const ClassHistogram& observed,
                              const std::array<double, kNumObjectClasses>& expected, double alpha);

struct AuditFinding {
  std::string kind;  // BoxOutsideCanvas, NonPositiveArea, MultilabelMismatch, OrphanLabel, MissingLabel, ...
  std::string file;
  std::size_t line = 0;  // 0 when not line-specific
  std::string message;
};

struct AuditReport {
  std::vector<AuditFinding> findings;  // sorted by (file, line)
  bool clean() const { return findings.empty(); }
};

AuditReport audit_labels(const std::filesystem::path& dataset_root);

/// Table with one count column per named histogram, rows in the order
/// RBC, YEAST, CRYSTAL, WBC, BACTERIA, then ARTIFACT, images and drops.
std::string render_table(std::span<const std::pair<std::string, ClassHistogram>> columns);
std::string histogram_to_json(const ClassHistogram& h);

}  // namespace synthpaste

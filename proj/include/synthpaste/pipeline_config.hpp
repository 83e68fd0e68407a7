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
#include <string>
#include <string_view>

#include <json.hpp>

#include "synthpaste/compositor.hpp"
#include "synthpaste/emitters.hpp"

namespace synthpaste {

/// Everything one CLI run needs. Built from a single JSON document; command
/// line flags are applied to that document's leaf keys before parsing, so a
/// flag and the equivalent config entry behave identically.
struct PipelineConfig {
  struct Paths {
    std::string manifest;
    std::string size_table;
    std::string output;
    std::string pool_cache;
    std::string synthetic;  // mix input
    std::string real;       // mix input
  } paths;

  std::uint64_t seed = 0;
  std::string preset;
  CompositionConfig composition = CompositionConfig::preset("detect-416");
  /// Resolve count / class samplers from the source manifest at run time.
  bool empirical_counts = false;
  bool empirical_classes = false;

  LabelFormat format = LabelFormat::kYoloTxt;
  ClassOrder class_order = default_class_order();

  std::size_t count = 0;
  double test_fraction = 0.2;
  double real_fraction = 0.1;
  std::size_t bench_samples = 200;
  int workers = 1;

  /// Relative paths are resolved against `base_dir`. Throws ConfigError.
  static PipelineConfig from_json(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});

  /// Effective settings. Paths come out absolute when base_dir was given.
  nlohmann::ordered_json to_json() const;
};

/// Reads a config file, or the "config" member of a provenance record.
/// Throws ConfigError / IoError.
nlohmann::json load_config_document(const std::filesystem::path& path);

/// Sets a dotted leaf key ("emit.format") in the document, creating
/// intermediate objects as needed.
void set_config_leaf(nlohmann::json& doc, std::string_view dotted_key, nlohmann::json value);

}  // namespace synthpaste

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
#include <optional>
#include <string_view>

namespace synthpaste {

/// Object classes of urine microscopy. The first five are objects of
/// interest, in the canonical (alphabetical) label order; ARTIFACT marks a
/// medically insignificant look-alike and never contributes to targets.
enum class ClassLabel : std::uint8_t { kBacteria = 0, kCrystal, kRbc, kWbc, kYeast, kArtifact };

inline constexpr std::size_t kNumClasses = 6;
inline constexpr std::size_t kNumObjectClasses = 5;

inline constexpr std::array<ClassLabel, kNumClasses> kAllClasses = {
    ClassLabel::kBacteria, ClassLabel::kCrystal, ClassLabel::kRbc,
    ClassLabel::kWbc,      ClassLabel::kYeast,   ClassLabel::kArtifact};

inline constexpr std::array<ClassLabel, kNumObjectClasses> kObjectClasses = {
    ClassLabel::kBacteria, ClassLabel::kCrystal, ClassLabel::kRbc, ClassLabel::kWbc,
    ClassLabel::kYeast};

constexpr std::size_t index_of(ClassLabel c) { return static_cast<std::size_t>(c); }
constexpr bool is_object_class(ClassLabel c) { return c != ClassLabel::kArtifact; }

constexpr std::string_view class_name(ClassLabel c) {
  switch (c) {
    case ClassLabel::kBacteria: return "BACTERIA";
    case ClassLabel::kCrystal: return "CRYSTAL";
    case ClassLabel::kRbc: return "RBC";
    case ClassLabel::kWbc: return "WBC";
    case ClassLabel::kYeast: return "YEAST";
    case ClassLabel::kArtifact: return "ARTIFACT";
  }
  return "?";
}

constexpr std::optional<ClassLabel> parse_class(std::string_view name) {
  for (ClassLabel c : kAllClasses) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

/// Fixed-size per-class array indexed by ClassLabel.
template <typename T>
using PerClass = std::array<T, kNumClasses>;

}  // namespace synthpaste

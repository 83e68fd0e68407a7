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

#include <stdexcept>
#include <string>

namespace synthpaste {

/// Broad failure category; the CLI maps these onto exit codes.
enum class ErrorCategory { kConfig, kData, kIo };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  /// Short machine-readable name, e.g. "BoundsError".
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define SYNTHPASTE_DEFINE_ERROR(Name, Category)                                     \
  class Name : public Error {                                                       \
   public:                                                                          \
    explicit Name(const std::string& message) : Error(Category, #Name, message) {} \
  }

SYNTHPASTE_DEFINE_ERROR(SyntaxError, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(ReferentialError, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(BoundsError, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(NominalTooLarge, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(DecodeError, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(EmptyPool, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(StalePlan, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(InsufficientReal, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(ParseError, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(DegenerateExpected, ErrorCategory::kData);
SYNTHPASTE_DEFINE_ERROR(ConfigError, ErrorCategory::kConfig);
SYNTHPASTE_DEFINE_ERROR(IoError, ErrorCategory::kIo);

#undef SYNTHPASTE_DEFINE_ERROR

}  // namespace synthpaste

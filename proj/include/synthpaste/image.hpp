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
#include <span>
#include <vector>

#include "synthpaste/geometry.hpp"

namespace synthpaste {

/// Interleaved 8-bit RGB image, row-major, no padding.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int width, int height) : width_(width), height_(height), data_(byte_count(width, height)) {}
  Image(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  std::span<std::uint8_t> bytes() { return data_; }
  std::span<const std::uint8_t> bytes() const { return data_; }

  std::uint8_t* row(int y) { return data_.data() + static_cast<std::size_t>(y) * stride(); }
  const std::uint8_t* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * stride(); }
  std::size_t stride() const { return static_cast<std::size_t>(width_) * kChannels; }

  std::uint8_t* pixel(int x, int y) { return row(y) + static_cast<std::size_t>(x) * kChannels; }
  const std::uint8_t* pixel(int x, int y) const {
    return row(y) + static_cast<std::size_t>(x) * kChannels;
  }

  /// Copy of the region r; r must lie inside the image.
  Image crop(const Rect& r) const;

  /// Hard copy of src with its top-left at (x, y); the target rect must lie inside.
  void paste(const Image& src, int x, int y);

  friend bool operator==(const Image& a, const Image& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
  }

 private:
  static std::size_t byte_count(int w, int h) {
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * kChannels;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Decodes PNG (8/16-bit, gray/RGB/alpha) or baseline JPEG into RGB8.
/// Throws DecodeError.
Image decode_image(std::span<const std::uint8_t> encoded);
Image read_image(const std::filesystem::path& path);

/// Lossless PNG with fixed encoder settings: identical pixels always give
/// identical bytes.
std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const std::filesystem::path& path, const Image& image);

/// Reads only the PNG header. Throws DecodeError.
std::pair<int, int> png_dimensions(std::span<const std::uint8_t> encoded);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace synthpaste

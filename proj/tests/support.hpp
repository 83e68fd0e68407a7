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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <unistd.h>

#include "synthpaste/compositor.hpp"
#include "synthpaste/image.hpp"
#include "synthpaste/patch.hpp"
#include "synthpaste/random.hpp"

namespace synthpaste::test {

/// Fresh directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("synthpaste_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  std::filesystem::path path_;
};

inline Image solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      p[0] = r;
      p[1] = g;
      p[2] = b;
    }
  }
  return img;
}

inline Image random_image(int w, int h, Rng& rng) {
  Image img(w, h);
  for (auto& b : img.bytes()) b = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

// Each pixel encodes its own coordinates, so any index mapping is visible.
inline Image numbered(int w, int h) {
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      p[0] = static_cast<std::uint8_t>(x);
      p[1] = static_cast<std::uint8_t>(y);
      p[2] = static_cast<std::uint8_t>(x ^ (y << 3));
    }
  }
  return img;
}

inline Patch make_patch(ClassLabel cls, Image pixels, std::string source = "src") {
  Patch p;
  p.cls = cls;
  p.crop = {0, 0, pixels.width(), pixels.height()};
  p.pixels = std::move(pixels);
  p.source_image_id = std::move(source);
  return p;
}

/// Pool with `per_class` patches of each listed class; patch pixels are
/// random with no pure-background pixel (channel 0 never equals `avoid`).
inline PatchPool random_pool(Rng& rng, int per_class, int min_side, int max_side,
                             bool with_artifacts = true, int avoid = -1) {
  PatchPool pool;
  for (ClassLabel c : kAllClasses) {
    if (c == ClassLabel::kArtifact && !with_artifacts) continue;
    for (int i = 0; i < per_class; ++i) {
      const int w = static_cast<int>(rng.range(min_side, max_side));
      const int h = static_cast<int>(rng.range(min_side, max_side));
      Image img = random_image(w, h, rng);
      if (avoid >= 0) {
        for (std::size_t k = 0; k < img.bytes().size(); k += 3) {
          if (img.bytes()[k] == avoid) img.bytes()[k] = static_cast<std::uint8_t>(avoid ^ 0x80);
        }
      }
      Patch p = make_patch(c, std::move(img), "img" + std::to_string(i));
      p.source_annotation_index = static_cast<std::size_t>(i);
      pool.of(c).push_back(std::move(p));
    }
  }
  return pool;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Every regular file under root, keyed by relative path, with its bytes.
inline std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[std::filesystem::relative(e.path(), root).generic_string()] = read_text(e.path());
    }
  }
  return files;
}

}  // namespace synthpaste::test

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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>

namespace synthpaste {

struct Size {
  int w = 0;
  int h = 0;
  friend constexpr bool operator==(const Size&, const Size&) = default;
};

struct Point {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned integer rectangle, top-left origin, half-open extent.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  constexpr std::int64_t area() const { return std::int64_t{w} * h; }
  constexpr int right() const { return x + w; }
  constexpr int bottom() const { return y + h; }
  constexpr bool inside(int width, int height) const {
    return x >= 0 && y >= 0 && w > 0 && h > 0 && right() <= width && bottom() <= height;
  }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Rect& r) {
  return os << "(" << r.x << "," << r.y << "," << r.w << "," << r.h << ")";
}

constexpr std::int64_t intersection_area(const Rect& a, const Rect& b) {
  const int ix = std::max(0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
  const int iy = std::max(0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
  return std::int64_t{ix} * iy;
}

/// Intersection over union of two positive-area rectangles.
constexpr double pairwise_iou(const Rect& a, const Rect& b) {
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

/// Round-half-up to the nearest integer.
inline std::int64_t round_half_up(double v) { return static_cast<std::int64_t>(std::floor(v + 0.5)); }

}  // namespace synthpaste

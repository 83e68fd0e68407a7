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

#include "synthpaste/annotation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "synthpaste/error.hpp"
#include "synthpaste/random.hpp"

namespace synthpaste {

using json = nlohmann::ordered_json;

const SourceImageRecord* DatasetManifest::find(std::string_view image_id) const {
  for (const auto& r : records) {
    if (r.id == image_id) return &r;
  }
  return nullptr;
}

ValidationReport validate_manifest(const DatasetManifest& manifest) {
  ValidationReport report;
  auto error = [&](std::string kind, std::string locus, std::string message) {
    report.errors.push_back({std::move(kind), std::move(locus), std::move(message)});
  };

  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    const auto& r = manifest.records[i];
    const std::string locus = "images[" + std::to_string(i) + "]";
    if (r.id.empty()) error("MissingImageId", locus, "image record has an empty id");
    if (r.sample_id.empty()) {
      error("MissingSampleId", locus, "image '" + r.id + "' has no sample_id");
    }
    if (r.width <= 0 || r.height <= 0) {
      error("InvalidDimensions", locus,
            "image '" + r.id + "' has non-positive size " + std::to_string(r.width) + "x" +
                std::to_string(r.height));
    }
    if (!by_id.emplace(r.id, i).second) {
      error("DuplicateImageId", locus, "duplicate image id '" + r.id + "'");
    }
  }

  auto resolve = [&](const std::string& image_id, const std::string& locus) -> const SourceImageRecord* {
    auto it = by_id.find(image_id);
    if (it == by_id.end()) {
      error("ReferentialError", locus, "unknown image_id '" + image_id + "'");
      return nullptr;
    }
    return &manifest.records[it->second];
  };

  std::set<std::tuple<std::string, int, int, ClassLabel>> seen_centers;
  for (std::size_t i = 0; i < manifest.centers.size(); ++i) {
    const auto& c = manifest.centers[i];
    const std::string locus = "centers[" + std::to_string(i) + "]";
    if (const auto* r = resolve(c.image_id, locus)) {
      if (c.x < 0 || c.y < 0 || c.x >= r->width || c.y >= r->height) {
        error("BoundsError", locus,
              "center (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") outside image '" +
                  r->id + "' " + std::to_string(r->width) + "x" + std::to_string(r->height));
      }
    }
    if (!seen_centers.emplace(c.image_id, c.x, c.y, c.cls).second) {
      report.warnings.push_back({"DuplicateAnnotation", locus,
                                 "identical center annotation repeated on '" + c.image_id + "'"});
    }
  }

  for (std::size_t i = 0; i < manifest.boxes.size(); ++i) {
    const auto& b = manifest.boxes[i];
    const std::string locus = "boxes[" + std::to_string(i) + "]";
    if (const auto* r = resolve(b.image_id, locus)) {
      if (b.w <= 0 || b.h <= 0 || b.x < 0 || b.y < 0 || b.x + b.w > r->width ||
          b.y + b.h > r->height) {
        error("BoundsError", locus,
              "box (" + std::to_string(b.x) + "," + std::to_string(b.y) + "," +
                  std::to_string(b.w) + "," + std::to_string(b.h) + ") invalid for image '" + r->id +
                  "'");
      }
    }
  }
  return report;
}

namespace {

[[noreturn]] void throw_first(const ValidationReport& report) {
  const auto& f = report.errors.front();
  const std::string msg = f.locus + ": " + f.message;
  if (f.kind == "BoundsError") throw BoundsError(msg);
  if (f.kind == "ReferentialError") throw ReferentialError(msg);
  throw SyntaxError(msg);
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

template <typename T>
T field(const json& obj, const char* key, const std::string& locus) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SyntaxError(locus + ": missing key '" + key + "'");
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer()) throw SyntaxError("");
    } else {
      if (!it->is_string()) throw SyntaxError("");
    }
    return it->template get<T>();
  } catch (const std::exception&) {
    throw SyntaxError(locus + "." + key + ": expected " +
                      (std::is_same_v<T, int> ? "integer" : "string"));
  }
}

ClassLabel class_field(const std::string& name, const std::string& locus) {
  if (auto c = parse_class(name)) return *c;
  throw SyntaxError(locus + ": unknown class '" + name + "'");
}

DatasetManifest parse_json(std::string_view input) {
  json doc;
  try {
    doc = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    throw SyntaxError("line " + std::to_string(line_of_offset(input, e.byte == 0 ? 0 : e.byte - 1)) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw SyntaxError("manifest root must be an object");

  auto array = [&](const char* key) -> const json* {
    auto it = doc.find(key);
    if (it == doc.end()) return nullptr;
    if (!it->is_array()) throw SyntaxError(std::string("'") + key + "' must be an array");
    return &*it;
  };

  DatasetManifest m;
  if (const json* images = array("images")) {
    for (std::size_t i = 0; i < images->size(); ++i) {
      const json& e = (*images)[i];
      const std::string locus = "images[" + std::to_string(i) + "]";
      if (!e.is_object()) throw SyntaxError(locus + ": expected object");
      SourceImageRecord r;
      r.id = field<std::string>(e, "id", locus);
      // A missing sample_id is a validation failure, not a syntax one.
      r.sample_id = e.contains("sample_id") ? field<std::string>(e, "sample_id", locus) : "";
      r.path = e.contains("path") ? field<std::string>(e, "path", locus) : "";
      r.width = field<int>(e, "width", locus);
      r.height = field<int>(e, "height", locus);
      m.records.push_back(std::move(r));
    }
  }
  if (const json* centers = array("centers")) {
    for (std::size_t i = 0; i < centers->size(); ++i) {
      const json& e = (*centers)[i];
      const std::string locus = "centers[" + std::to_string(i) + "]";
      if (!e.is_object()) throw SyntaxError(locus + ": expected object");
      m.centers.push_back({field<std::string>(e, "image_id", locus), field<int>(e, "x", locus),
                           field<int>(e, "y", locus),
                           class_field(field<std::string>(e, "class", locus), locus)});
    }
  }
  if (const json* boxes = array("boxes")) {
    for (std::size_t i = 0; i < boxes->size(); ++i) {
      const json& e = (*boxes)[i];
      const std::string locus = "boxes[" + std::to_string(i) + "]";
      if (!e.is_object()) throw SyntaxError(locus + ": expected object");
      m.boxes.push_back({field<std::string>(e, "image_id", locus), field<int>(e, "x", locus),
                         field<int>(e, "y", locus), field<int>(e, "w", locus),
                         field<int>(e, "h", locus),
                         class_field(field<std::string>(e, "class", locus), locus)});
    }
  }
  if (auto it = doc.find("meta"); it != doc.end()) {
    if (!it->is_object()) throw SyntaxError("'meta' must be an object of strings");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw SyntaxError("meta." + k + ": expected string");
      m.meta[k] = v.get<std::string>();
    }
  }
  return m;
}

std::string unquote(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    std::string out;
    s = s.substr(1, s.size() - 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
      out.push_back(s[i]);
      if (s[i] == '"' && i + 1 < s.size() && s[i + 1] == '"') ++i;
    }
    return out;
  }
  return std::string(s);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i < line.size() && line[i] == '"') quoted = !quoted;
    if (i == line.size() || (line[i] == ',' && !quoted)) {
      out.push_back(unquote(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

int csv_int(const std::string& s, std::size_t line, const char* name) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw SyntaxError("line " + std::to_string(line) + ": column '" + name +
                      "' is not an integer: '" + s + "'");
  }
  return v;
}

DatasetManifest parse_csv(std::string_view input, const DatasetManifest* base) {
  DatasetManifest m = base ? *base : DatasetManifest{};
  std::istringstream in{std::string(input)};
  std::string raw;
  std::size_t line_no = 0;
  bool boxes = false;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line_no == 1 && raw.size() >= 3 && raw.compare(0, 3, "\xEF\xBB\xBF") == 0) raw.erase(0, 3);
    if (raw.empty()) continue;
    const auto cells = split_csv_line(raw);
    if (!have_header) {
      if (cells == std::vector<std::string>{"image_id", "x", "y", "class"}) {
        boxes = false;
      } else if (cells == std::vector<std::string>{"image_id", "x", "y", "w", "h", "class"}) {
        boxes = true;
      } else {
        throw SyntaxError("line " + std::to_string(line_no) +
                          ": expected header 'image_id,x,y,class' or 'image_id,x,y,w,h,class'");
      }
      have_header = true;
      continue;
    }
    const std::size_t expected = boxes ? 6 : 4;
    if (cells.size() != expected) {
      throw SyntaxError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(expected) + " fields, got " + std::to_string(cells.size()));
    }
    const std::string locus = "line " + std::to_string(line_no);
    const ClassLabel cls = class_field(cells.back(), locus);
    if (boxes) {
      m.boxes.push_back({cells[0], csv_int(cells[1], line_no, "x"), csv_int(cells[2], line_no, "y"),
                         csv_int(cells[3], line_no, "w"), csv_int(cells[4], line_no, "h"), cls});
    } else {
      m.centers.push_back(
          {cells[0], csv_int(cells[1], line_no, "x"), csv_int(cells[2], line_no, "y"), cls});
    }
  }
  if (!have_header) throw SyntaxError("line 1: missing CSV header");
  return m;
}

}  // namespace

DatasetManifest parse_manifest_unvalidated(std::string_view input, ManifestFormat format,
                                           const DatasetManifest* base) {
  return format == ManifestFormat::kJson ? parse_json(input) : parse_csv(input, base);
}

DatasetManifest parse_manifest(std::string_view input, ManifestFormat format,
                               const DatasetManifest* base) {
  DatasetManifest m = parse_manifest_unvalidated(input, format, base);
  const ValidationReport report = validate_manifest(m);
  if (!report.ok()) throw_first(report);
  return m;
}

std::string serialize_manifest(const DatasetManifest& manifest) {
  json doc;
  doc["images"] = json::array();
  for (const auto& r : manifest.records) {
    doc["images"].push_back(
        {{"id", r.id}, {"sample_id", r.sample_id}, {"path", r.path}, {"width", r.width}, {"height", r.height}});
  }
  doc["centers"] = json::array();
  for (const auto& c : manifest.centers) {
    doc["centers"].push_back(
        {{"image_id", c.image_id}, {"x", c.x}, {"y", c.y}, {"class", class_name(c.cls)}});
  }
  doc["boxes"] = json::array();
  for (const auto& b : manifest.boxes) {
    doc["boxes"].push_back({{"image_id", b.image_id},
                            {"x", b.x},
                            {"y", b.y},
                            {"w", b.w},
                            {"h", b.h},
                            {"class", class_name(b.cls)}});
  }
  doc["meta"] = json::object();
  for (const auto& [k, v] : manifest.meta) doc["meta"][k] = v;
  return doc.dump(2) + "\n";
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_manifest(ss.str(), ManifestFormat::kJson);
  } catch (const Error& e) {
    // Keep the concrete type; only prefix the message with the file.
    if (e.kind() == "BoundsError") throw BoundsError(path + ": " + e.what());
    if (e.kind() == "ReferentialError") throw ReferentialError(path + ": " + e.what());
    throw SyntaxError(path + ": " + e.what());
  }
}

ManifestSplit split_by_sample(const DatasetManifest& manifest, double test_fraction,
                              std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
    throw ConfigError("test_fraction must be in [0, 1]");
  }
  std::vector<std::string> samples;
  for (const auto& r : manifest.records) samples.push_back(r.sample_id);
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  Rng rng(seed);
  for (std::size_t i = samples.size(); i > 1; --i) {
    std::swap(samples[i - 1], samples[rng.below(i)]);
  }
  const auto n_test = static_cast<std::size_t>(
      std::floor(test_fraction * static_cast<double>(samples.size()) + 0.5));
  const std::set<std::string> test_samples(samples.begin(), samples.begin() + n_test);

  ManifestSplit out;
  out.train.meta = manifest.meta;
  out.test.meta = manifest.meta;
  std::set<std::string> test_images;
  for (const auto& r : manifest.records) {
    if (test_samples.count(r.sample_id)) {
      out.test.records.push_back(r);
      test_images.insert(r.id);
    } else {
      out.train.records.push_back(r);
    }
  }
  for (const auto& c : manifest.centers) {
    (test_images.count(c.image_id) ? out.test : out.train).centers.push_back(c);
  }
  for (const auto& b : manifest.boxes) {
    (test_images.count(b.image_id) ? out.test : out.train).boxes.push_back(b);
  }
  return out;
}

std::vector<int> per_image_object_counts(const DatasetManifest& manifest) {
  std::unordered_map<std::string, int> counts;
  for (const auto& c : manifest.centers) {
    if (is_object_class(c.cls)) ++counts[c.image_id];
  }
  std::vector<int> out;
  out.reserve(manifest.records.size());
  for (const auto& r : manifest.records) out.push_back(counts[r.id]);
  return out;
}

}  // namespace synthpaste

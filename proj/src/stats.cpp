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

#include "synthpaste/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "synthpaste/error.hpp"
#include "synthpaste/image.hpp"

namespace synthpaste {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::uint64_t ClassHistogram::object_total() const {
  std::uint64_t n = 0;
  for (ClassLabel c : kObjectClasses) n += counts[index_of(c)];
  return n;
}

ClassHistogram histogram(std::span<const SyntheticSample> samples) {
  ClassHistogram h;
  for (const SyntheticSample& s : samples) {
    ++h.total_images;
    h.drops += s.plan.drops.size();
    for (const LabeledBox& b : s.boxes) {
      if (is_object_class(b.cls)) ++h[b.cls];
    }
    for (const PlacedObject& p : s.plan.placements) {
      if (!is_object_class(p.cls)) ++h[ClassLabel::kArtifact];
    }
  }
  return h;
}

ClassHistogram histogram(const PatchPool& pool) {
  ClassHistogram h;
  for (ClassLabel c : kAllClasses) h[c] = pool.of(c).size();
  return h;
}

ClassHistogram histogram(const DatasetManifest& manifest) {
  ClassHistogram h;
  h.total_images = manifest.records.size();
  if (!manifest.centers.empty()) {
    for (const auto& c : manifest.centers) ++h[c.cls];
  } else {
    for (const auto& b : manifest.boxes) ++h[b.cls];
  }
  return h;
}

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

bool has_artifact_class(const ClassOrder& order) {
  return std::find(order.begin(), order.end(), ClassLabel::kArtifact) != order.end();
}

/// Labeled boxes of one image, in pixels, with their 1-based source line.
struct DiskBox {
  ClassLabel cls;
  PixelBox box;
  std::size_t line;
};

std::vector<DiskBox> read_yolo(const fs::path& file, const OutputManifest& m, Size canvas) {
  std::vector<DiskBox> out;
  const auto lines = lines_of(read_text(file));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    YoloBox y;
    try {
      y = parse_yolo_line(lines[i]);
    } catch (const ParseError& e) {
      throw ParseError(file.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
    if (y.class_index >= m.class_order.size()) {
      throw ParseError(file.string() + ":" + std::to_string(i + 1) + ": class index " +
                       std::to_string(y.class_index) + " out of range");
    }
    out.push_back({m.class_order[y.class_index], denormalize(y, canvas), i + 1});
  }
  return out;
}

MultiLabel read_multilabel_row(const fs::path& file) {
  const auto lines = lines_of(read_text(file));
  if (lines.size() < 2 || lines[0] + "\n" != multilabel_header()) {
    throw ParseError(file.string() + ":1: expected multilabel header and one row");
  }
  std::vector<std::string> cells;
  std::stringstream row(lines[1]);
  std::string cell;
  while (std::getline(row, cell, ',')) cells.push_back(cell);
  if (cells.size() != kNumObjectClasses + 1) {
    throw ParseError(file.string() + ":2: expected " + std::to_string(kNumObjectClasses + 1) + " cells");
  }
  MultiLabel bits;
  for (std::size_t i = 0; i < kNumObjectClasses; ++i) {
    if (cells[i + 1] != "0" && cells[i + 1] != "1") {
      throw ParseError(file.string() + ":2: cell '" + cells[i + 1] + "' is not 0/1");
    }
    bits.set(i, cells[i + 1] == "1");
  }
  return bits;
}

struct CocoIndex {
  std::map<std::string, std::vector<DiskBox>> by_file;
};

CocoIndex read_coco(const fs::path& file, const OutputManifest& m) {
  CocoIndex idx;
  json doc;
  try {
    doc = json::parse(read_text(file));
    std::map<std::int64_t, std::string> names;
    for (const auto& img : doc.at("images")) {
      names[img.at("id").get<std::int64_t>()] = img.at("file_name").get<std::string>();
      idx.by_file[img.at("file_name").get<std::string>()];
    }
    std::size_t n = 0;
    for (const auto& a : doc.at("annotations")) {
      ++n;
      const auto cat = a.at("category_id").get<std::int64_t>();
      if (cat < 1 || static_cast<std::size_t>(cat) > m.class_order.size()) {
        throw ParseError("annotation " + std::to_string(n) + ": bad category_id");
      }
      const auto& bb = a.at("bbox");
      const auto it = names.find(a.at("image_id").get<std::int64_t>());
      if (it == names.end()) throw ParseError("annotation " + std::to_string(n) + ": unknown image_id");
      idx.by_file[it->second].push_back(
          {m.class_order[static_cast<std::size_t>(cat - 1)],
           {bb.at(0).get<double>(), bb.at(1).get<double>(), bb.at(2).get<double>(), bb.at(3).get<double>()},
           n});
    }
  } catch (const json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return idx;
}

}  // namespace

ClassHistogram histogram(const fs::path& root) {
  const OutputManifest m = read_output_manifest(root / "manifest.json");
  ClassHistogram h;
  const bool labeled_artifacts = has_artifact_class(m.class_order);
  std::map<fs::path, CocoIndex> coco_cache;
  for (const ManifestEntry& e : m.entries) {
    ++h.total_images;
    h.drops += e.drops;
    if (!labeled_artifacts) h[ClassLabel::kArtifact] += e.artifacts;
    const fs::path label = root / e.label;
    std::vector<DiskBox> boxes;
    switch (m.format) {
      case LabelFormat::kYoloTxt:
        boxes = read_yolo(label, m, e.size);
        break;
      case LabelFormat::kCocoJson: {
        auto it = coco_cache.find(label);
        if (it == coco_cache.end()) it = coco_cache.emplace(label, read_coco(label, m)).first;
        const auto f = it->second.by_file.find(fs::path(e.image).filename().string());
        if (f != it->second.by_file.end()) boxes = f->second;
        break;
      }
      case LabelFormat::kMultilabelCsv: {
        const MultiLabel bits = read_multilabel_row(label);
        for (std::size_t i = 0; i < kNumObjectClasses; ++i) {
          if (bits.test(i)) ++h.counts[i];
        }
        break;
      }
    }
    for (const DiskBox& b : boxes) ++h[b.cls];
  }
  return h;
}

double chi_square_critical(int df, double alpha) {
  static constexpr std::array<double, 8> k05 = {3.841, 5.991, 7.815, 9.488,
                                                11.070, 12.592, 14.067, 15.507};
  static constexpr std::array<double, 8> k01 = {6.635, 9.210, 11.345, 13.277,
                                                15.086, 16.812, 18.475, 20.090};
  if (df < 1 || df > 8) throw ConfigError("chi-square table covers df 1..8, got " + std::to_string(df));
  if (alpha == 0.05) return k05[static_cast<std::size_t>(df - 1)];
  if (alpha == 0.01) return k01[static_cast<std::size_t>(df - 1)];
  throw ConfigError("chi-square table covers alpha 0.05 and 0.01 only");
}

ConformanceReport conformance(std::span<const std::uint64_t> observed,
                              std::span<const double> expected, double alpha) {
  if (observed.size() != expected.size()) throw ConfigError("observed/expected size mismatch");
  double total = 0, psum = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] >= 0.0)) throw ConfigError("expected probabilities must be non-negative");
    total += static_cast<double>(observed[i]);
    psum += expected[i];
  }
  if (std::abs(psum - 1.0) > 1e-9) throw ConfigError("expected probabilities must sum to 1");
  if (total <= 0) throw ConfigError("conformance needs at least one observation");

  ConformanceReport r;
  r.alpha = alpha;
  int categories = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] == 0.0) {
      if (observed[i] > 0) {
        throw DegenerateExpected("category " + std::to_string(i) +
                                 " has zero expected probability but " +
                                 std::to_string(observed[i]) + " observations");
      }
      continue;
    }
    ++categories;
    const double e = expected[i] * total;
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
  }
  r.degrees_of_freedom = categories - 1;
  r.critical_value = chi_square_critical(r.degrees_of_freedom, alpha);
  r.pass = r.statistic < r.critical_value;
  return r;
}

ConformanceReport conformance(const ClassHistogram& observed,
                              const std::array<double, kNumObjectClasses>& expected, double alpha) {
  std::array<std::uint64_t, kNumObjectClasses> obs{};
  for (ClassLabel c : kObjectClasses) obs[index_of(c)] = observed[c];
  return conformance(obs, expected, alpha);
}

AuditReport audit_labels(const fs::path& root) {
  AuditReport report;
  auto add = [&](std::string kind, const fs::path& file, std::size_t line, std::string msg) {
    report.findings.push_back({std::move(kind), file.lexically_relative(root).generic_string(), line,
                               std::move(msg)});
  };

  OutputManifest m;
  try {
    m = read_output_manifest(root / "manifest.json");
  } catch (const Error& e) {
    add("UnreadableManifest", root / "manifest.json", 0, e.what());
    return report;
  }

  std::set<fs::path> referenced;
  std::map<fs::path, CocoIndex> coco_cache;
  for (const ManifestEntry& e : m.entries) {
    const fs::path image = (root / e.image).lexically_normal();
    const fs::path label = (root / e.label).lexically_normal();
    referenced.insert(image);
    referenced.insert(label);
    if (!fs::exists(image)) {
      add("MissingImage", image, 0, "manifest lists an image that does not exist");
    } else {
      try {
        const auto bytes = read_file_bytes(image);
        const auto [w, h] = png_dimensions(bytes);
        if (w != e.size.w || h != e.size.h) {
          add("SizeMismatch", image, 0,
              "image is " + std::to_string(w) + "x" + std::to_string(h) + ", manifest says " +
                  std::to_string(e.size.w) + "x" + std::to_string(e.size.h));
        }
      } catch (const Error& ex) {
        add("UnreadableImage", image, 0, ex.what());
      }
    }
    if (!fs::exists(label)) {
      add("MissingLabel", image, 0, "image has no label file " + e.label);
      continue;
    }

    std::vector<DiskBox> boxes;
    try {
      if (m.format == LabelFormat::kYoloTxt) {
        boxes = read_yolo(label, m, e.size);
      } else if (m.format == LabelFormat::kCocoJson) {
        auto it = coco_cache.find(label);
        if (it == coco_cache.end()) it = coco_cache.emplace(label, read_coco(label, m)).first;
        const auto f = it->second.by_file.find(fs::path(e.image).filename().string());
        if (f == it->second.by_file.end()) {
          add("MissingLabel", image, 0, "image absent from " + e.label);
          continue;
        }
        boxes = f->second;
      } else {
        const MultiLabel bits = read_multilabel_row(label);
        if (bits != e.multilabel) {
          add("MultilabelMismatch", label, 2, "label row disagrees with the manifest presence vector");
        }
        continue;
      }
    } catch (const ParseError& ex) {
      add("ParseError", label, 0, ex.what());
      continue;
    }

    MultiLabel present;
    for (const DiskBox& b : boxes) {
      const auto& p = b.box;
      if (!(p.w > 0.0) || !(p.h > 0.0)) {
        add("NonPositiveArea", label, b.line, "box has non-positive width or height");
        continue;
      }
      // Half a pixel of slack absorbs the 6-decimal normalization.
      if (p.x < -0.5 || p.y < -0.5 || p.x + p.w > e.size.w + 0.5 || p.y + p.h > e.size.h + 0.5) {
        add("BoxOutsideCanvas", label, b.line, "box extends beyond the canvas");
      }
      if (is_object_class(b.cls)) present.set(index_of(b.cls));
    }
    if (present != e.multilabel) {
      add("MultilabelMismatch", label, 0, "boxes and the manifest presence vector disagree");
    }
  }

  const fs::path labels_dir = root / "labels";
  if (fs::is_directory(labels_dir)) {
    for (const auto& f : fs::recursive_directory_iterator(labels_dir)) {
      if (f.is_regular_file() && !referenced.count(f.path().lexically_normal())) {
        add("OrphanLabel", f.path(), 0, "label file has no matching image in the manifest");
      }
    }
  }

  std::sort(report.findings.begin(), report.findings.end(), [](const AuditFinding& a, const AuditFinding& b) {
    return std::tie(a.file, a.line, a.kind) < std::tie(b.file, b.line, b.kind);
  });
  return report;
}

std::string render_table(std::span<const std::pair<std::string, ClassHistogram>> columns) {
  static constexpr std::array<ClassLabel, 6> rows = {ClassLabel::kRbc,     ClassLabel::kYeast,
                                                     ClassLabel::kCrystal, ClassLabel::kWbc,
                                                     ClassLabel::kBacteria, ClassLabel::kArtifact};
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Objects"};
  for (const auto& [name, _] : columns) header.push_back(name);
  cells.push_back(header);
  for (ClassLabel c : rows) {
    std::vector<std::string> r{std::string(class_name(c))};
    for (const auto& [_, h] : columns) r.push_back(std::to_string(h[c]));
    cells.push_back(r);
  }
  std::vector<std::string> images{"Images"}, drops{"Drops"};
  for (const auto& [_, h] : columns) {
    images.push_back(std::to_string(h.total_images));
    drops.push_back(std::to_string(h.drops));
  }
  cells.push_back(images);
  cells.push_back(drops);

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string pad(width[i] - r[i].size(), ' ');
      if (i == 0) {
        out += r[i] + pad;
      } else {
        out += "  " + pad + r[i];
      }
    }
    out += '\n';
  }
  return out;
}

std::string histogram_to_json(const ClassHistogram& h) {
  json j;
  j["counts"] = json::object();
  for (ClassLabel c : kObjectClasses) j["counts"][std::string(class_name(c))] = h[c];
  j["artifacts"] = h[ClassLabel::kArtifact];
  j["total_images"] = h.total_images;
  j["drops"] = h.drops;
  return j.dump(2);
}

}  // namespace synthpaste

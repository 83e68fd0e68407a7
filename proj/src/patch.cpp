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

#include "synthpaste/patch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "synthpaste/error.hpp"
#include "synthpaste/parallel.hpp"

namespace synthpaste {

using json = nlohmann::ordered_json;

SizeTable::SizeTable(const PerClass<Size>& entries) : entries_(entries) {
  for (ClassLabel c : kAllClasses) {
    const Size& s = entries_[index_of(c)];
    if (s.w < 4 || s.h < 4) {
      throw ConfigError("size table: " + std::string(class_name(c)) +
                        " dimensions must be >= 4 px");
    }
  }
}

SizeTable SizeTable::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("size table: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("size table must be a JSON object");
  PerClass<std::optional<Size>> found;
  for (const auto& [key, value] : doc.items()) {
    if (!key.empty() && key.front() == '_') continue;
    const auto cls = parse_class(key);
    if (!cls) throw ConfigError("size table: unknown class '" + key + "'");
    if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
        !value[1].is_number_integer()) {
      throw ConfigError("size table: " + key + " must be [w, h] integers");
    }
    found[index_of(*cls)] = Size{value[0].get<int>(), value[1].get<int>()};
  }
  PerClass<Size> entries;
  for (ClassLabel c : kAllClasses) {
    if (!found[index_of(c)]) {
      throw ConfigError("size table: missing class " + std::string(class_name(c)));
    }
    entries[index_of(c)] = *found[index_of(c)];
  }
  return SizeTable(entries);
}

SizeTable SizeTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open size table " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string SizeTable::to_json() const {
  json doc = json::object();
  for (ClassLabel c : kAllClasses) {
    const Size& s = (*this)[c];
    doc[std::string(class_name(c))] = {s.w, s.h};
  }
  return doc.dump(2) + "\n";
}

SizeTable SizeTable::example() {
  PerClass<Size> e;
  e[index_of(ClassLabel::kBacteria)] = {12, 12};
  e[index_of(ClassLabel::kCrystal)] = {40, 40};
  e[index_of(ClassLabel::kRbc)] = {36, 36};
  e[index_of(ClassLabel::kWbc)] = {48, 48};
  e[index_of(ClassLabel::kYeast)] = {28, 28};
  e[index_of(ClassLabel::kArtifact)] = {32, 32};
  return SizeTable(e);
}

Rect jittered_crop_rect(Point center, Size nominal, double u, Size image) {
  if (!(u >= 0.0 && u <= kMaxJitter)) throw ConfigError("jitter u must be in [0, 0.1]");
  if (center.x < 0 || center.y < 0 || center.x >= image.w || center.y >= image.h) {
    throw BoundsError("crop center outside image");
  }
  const int w = static_cast<int>(round_half_up(nominal.w * (1.0 - u)));
  const int h = static_cast<int>(round_half_up(nominal.h * (1.0 - u)));
  if (w > image.w || h > image.h || w <= 0 || h <= 0) {
    throw NominalTooLarge("crop " + std::to_string(w) + "x" + std::to_string(h) +
                          " does not fit image " + std::to_string(image.w) + "x" +
                          std::to_string(image.h));
  }
  const int x = std::clamp(center.x - w / 2, 0, image.w - w);
  const int y = std::clamp(center.y - h / 2, 0, image.h - h);
  return Rect{x, y, w, h};
}

std::size_t PatchPool::total() const {
  std::size_t n = 0;
  for (const auto& v : by_class) n += v.size();
  return n;
}

Patch extract_patch(const Image& image, const CenterAnnotation& annotation,
                    const SizeTable& size_table, Rng& rng, std::size_t annotation_index) {
  const double u = kMaxJitter * rng.uniform01();
  const Rect crop = jittered_crop_rect({annotation.x, annotation.y}, size_table[annotation.cls], u,
                                       {image.width(), image.height()});
  return Patch{image.crop(crop), annotation.cls, annotation.image_id, annotation_index, crop, u};
}

ImageLoader file_image_loader(std::filesystem::path base_dir) {
  return [base = std::move(base_dir)](const SourceImageRecord& record) {
    const std::filesystem::path p = std::filesystem::path(record.path).is_absolute()
                                        ? std::filesystem::path(record.path)
                                        : base / record.path;
    Image img = read_image(p);
    if (img.width() != record.width || img.height() != record.height) {
      throw DecodeError(p.string() + ": decoded size " + std::to_string(img.width()) + "x" +
                        std::to_string(img.height()) + " differs from manifest " +
                        std::to_string(record.width) + "x" + std::to_string(record.height));
    }
    return img;
  };
}

PoolBuildResult build_patch_pool(const DatasetManifest& manifest, const SizeTable& size_table,
                                 std::uint64_t seed, const ImageLoader& loader, int workers) {
  // Group annotation indices by image so each image is decoded once.
  std::map<std::string, std::vector<std::size_t>> by_image;
  for (std::size_t i = 0; i < manifest.centers.size(); ++i) {
    by_image[manifest.centers[i].image_id].push_back(i);
  }
  std::vector<const SourceImageRecord*> jobs;
  for (const auto& r : manifest.records) {
    if (by_image.count(r.id)) jobs.push_back(&r);
  }

  std::vector<std::optional<Patch>> slots(manifest.centers.size());
  std::vector<std::vector<PoolFailure>> job_failures(jobs.size());

  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    const SourceImageRecord& record = *jobs[j];
    Image image;
    try {
      image = loader(record);
    } catch (const Error& e) {
      job_failures[j].push_back({record.id, "DecodeError", e.what(), -1});
      return;
    }
    for (std::size_t idx : by_image.at(record.id)) {
      Rng rng = Rng::substream(seed, idx);
      try {
        slots[idx] = extract_patch(image, manifest.centers[idx], size_table, rng, idx);
      } catch (const Error& e) {
        job_failures[j].push_back(
            {record.id, e.kind(), e.what(), static_cast<std::ptrdiff_t>(idx)});
      }
    }
  });

  PoolBuildResult out;
  for (auto& slot : slots) {
    if (slot) out.pool.of(slot->cls).push_back(std::move(*slot));
  }
  for (auto& f : job_failures) {
    out.failures.insert(out.failures.end(), std::make_move_iterator(f.begin()),
                        std::make_move_iterator(f.end()));
  }
  return out;
}

namespace {

std::string cache_name(const Patch& p) {
  return std::string(class_name(p.cls)) + "/" + p.source_image_id + "_" +
         std::to_string(p.source_annotation_index) + ".png";
}

}  // namespace

void save_pool_cache(const PatchPool& pool, const std::filesystem::path& dir) {
  std::error_code ec;
  json index = json::array();
  for (ClassLabel c : kAllClasses) {
    std::filesystem::create_directories(dir / std::string(class_name(c)), ec);
    if (ec) throw IoError("cannot create " + (dir / std::string(class_name(c))).string());
    for (const Patch& p : pool.of(c)) {
      const std::string name = cache_name(p);
      write_png(dir / name, p.pixels);
      index.push_back({{"file", name},
                       {"class", class_name(p.cls)},
                       {"source_image_id", p.source_image_id},
                       {"source_annotation_index", p.source_annotation_index},
                       {"crop", {p.crop.x, p.crop.y, p.crop.w, p.crop.h}},
                       {"jitter_u", p.jitter_u}});
    }
  }
  write_text_file(dir / "index.json", index.dump(2) + "\n");
}

PatchPool load_pool_cache(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.json", std::ios::binary);
  if (!in) throw IoError("cannot open " + (dir / "index.json").string());
  json index;
  try {
    index = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError((dir / "index.json").string() + ": " + e.what());
  }
  PatchPool pool;
  for (const auto& e : index) {
    try {
      Patch p;
      const auto cls = parse_class(e.at("class").get<std::string>());
      if (!cls) throw ParseError("unknown class in pool index");
      p.cls = *cls;
      p.source_image_id = e.at("source_image_id").get<std::string>();
      p.source_annotation_index = e.at("source_annotation_index").get<std::size_t>();
      const auto& crop = e.at("crop");
      p.crop = Rect{crop.at(0).get<int>(), crop.at(1).get<int>(), crop.at(2).get<int>(),
                    crop.at(3).get<int>()};
      p.jitter_u = e.at("jitter_u").get<double>();
      p.pixels = read_image(dir / e.at("file").get<std::string>());
      if (p.pixels.width() != p.crop.w || p.pixels.height() != p.crop.h) {
        throw ParseError("pool cache patch size differs from its recorded crop");
      }
      pool.of(p.cls).push_back(std::move(p));
    } catch (const json::exception& ex) {
      throw ParseError((dir / "index.json").string() + ": " + ex.what());
    }
  }
  return pool;
}

}  // namespace synthpaste

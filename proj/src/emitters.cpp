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

#include "synthpaste/emitters.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "synthpaste/error.hpp"
#include "synthpaste/image.hpp"
#include "synthpaste/parallel.hpp"
#include "synthpaste/random.hpp"

namespace synthpaste {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string_view format_name(LabelFormat f) {
  switch (f) {
    case LabelFormat::kYoloTxt: return "yolo_txt";
    case LabelFormat::kCocoJson: return "coco_json";
    case LabelFormat::kMultilabelCsv: return "multilabel_csv";
  }
  return "?";
}

LabelFormat parse_format(std::string_view name) {
  for (LabelFormat f : {LabelFormat::kYoloTxt, LabelFormat::kCocoJson, LabelFormat::kMultilabelCsv}) {
    if (format_name(f) == name) return f;
  }
  throw ConfigError("unknown format '" + std::string(name) +
                    "' (expected yolo_txt, coco_json or multilabel_csv)");
}

ClassOrder default_class_order() {
  return ClassOrder(kObjectClasses.begin(), kObjectClasses.end());
}

ClassOrder parse_class_order(const std::vector<std::string>& names) {
  ClassOrder order;
  for (const auto& n : names) {
    const auto c = parse_class(n);
    if (!c) throw ConfigError("class_order: unknown class '" + n + "'");
    if (std::find(order.begin(), order.end(), *c) != order.end()) {
      throw ConfigError("class_order: '" + n + "' listed twice");
    }
    order.push_back(*c);
  }
  if (order.empty()) throw ConfigError("class_order must not be empty");
  return order;
}

namespace {

std::size_t class_index(const ClassOrder& order, ClassLabel c) {
  const auto it = std::find(order.begin(), order.end(), c);
  if (it == order.end()) {
    throw ConfigError("class " + std::string(class_name(c)) + " is not in the class order");
  }
  return static_cast<std::size_t>(it - order.begin());
}

// num / den rounded half-up to 6 decimals, formatted "d.dddddd".
void append_fixed6(std::string& out, std::int64_t num, std::int64_t den) {
  const std::int64_t micro = (2 * num * 1000000 + den) / (2 * den);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(micro / 1000000),
                static_cast<long long>(micro % 1000000));
  out += buf;
}

}  // namespace

std::string emit_yolo(std::span<const LabeledBox> boxes, Size canvas, const ClassOrder& order) {
  std::string out;
  for (const LabeledBox& b : boxes) {
    out += std::to_string(class_index(order, b.cls));
    out += ' ';
    append_fixed6(out, 2 * std::int64_t{b.rect.x} + b.rect.w, 2 * std::int64_t{canvas.w});
    out += ' ';
    append_fixed6(out, 2 * std::int64_t{b.rect.y} + b.rect.h, 2 * std::int64_t{canvas.h});
    out += ' ';
    append_fixed6(out, b.rect.w, canvas.w);
    out += ' ';
    append_fixed6(out, b.rect.h, canvas.h);
    out += '\n';
  }
  return out;
}

std::string emit_yolo(const SyntheticSample& sample, const ClassOrder& order) {
  return emit_yolo(sample.boxes, {sample.image.width(), sample.image.height()}, order);
}

YoloBox parse_yolo_line(std::string_view line) {
  std::istringstream in{std::string(line)};
  long long cls = -1;
  YoloBox b;
  std::string extra;
  if (!(in >> cls >> b.cx >> b.cy >> b.w >> b.h) || (in >> extra) || cls < 0) {
    throw ParseError("malformed YOLO line '" + std::string(line) + "'");
  }
  b.class_index = static_cast<std::size_t>(cls);
  return b;
}

PixelBox denormalize(const YoloBox& b, Size canvas) {
  const double w = b.w * canvas.w;
  const double h = b.h * canvas.h;
  return {b.cx * canvas.w - w / 2, b.cy * canvas.h - h / 2, w, h};
}

std::string multilabel_header() {
  std::string h = "image";
  for (ClassLabel c : kObjectClasses) {
    h += ',';
    h += class_name(c);
  }
  return h + "\n";
}

std::string emit_multilabel(std::span<const std::pair<std::string, MultiLabel>> rows) {
  std::string out = multilabel_header();
  for (const auto& [name, bits] : rows) {
    out += name;
    for (std::size_t i = 0; i < kNumObjectClasses; ++i) out += bits.test(i) ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

std::string emit_coco(std::span<const CocoImage> images, const ClassOrder& order) {
  json doc;
  doc["images"] = json::array();
  doc["annotations"] = json::array();
  doc["categories"] = json::array();
  std::size_t ann_id = 1;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const CocoImage& img = images[i];
    doc["images"].push_back({{"id", i + 1},
                             {"file_name", img.file_name},
                             {"width", img.size.w},
                             {"height", img.size.h}});
    for (const LabeledBox& b : img.boxes) {
      doc["annotations"].push_back({{"id", ann_id++},
                                    {"image_id", i + 1},
                                    {"category_id", class_index(order, b.cls) + 1},
                                    {"bbox", {b.rect.x, b.rect.y, b.rect.w, b.rect.h}},
                                    {"area", b.rect.area()},
                                    {"iscrowd", 0}});
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    doc["categories"].push_back({{"id", i + 1}, {"name", class_name(order[i])}});
  }
  return doc.dump(2) + "\n";
}

std::string emit_coco(std::span<const SyntheticSample> samples, const ClassOrder& order) {
  std::vector<CocoImage> images;
  images.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    images.push_back({image_name(i), {samples[i].image.width(), samples[i].image.height()},
                      samples[i].boxes});
  }
  return emit_coco(images, order);
}

std::string image_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img_%06zu.png", i + 1);
  return buf;
}

std::string serialize_output_manifest(const OutputManifest& m) {
  json doc;
  doc["format"] = format_name(m.format);
  doc["class_order"] = json::array();
  for (ClassLabel c : m.class_order) doc["class_order"].push_back(class_name(c));
  doc["entries"] = json::array();
  for (const ManifestEntry& e : m.entries) {
    json j;
    j["image"] = e.image;
    j["label"] = e.label;
    j["provenance"] = e.provenance;
    j["plan_seed"] = e.plan_seed ? json(*e.plan_seed) : json(nullptr);
    j["width"] = e.size.w;
    j["height"] = e.size.h;
    j["multilabel"] = json::array();
    for (std::size_t i = 0; i < kNumObjectClasses; ++i) j["multilabel"].push_back(e.multilabel.test(i) ? 1 : 0);
    j["objects"] = e.objects;
    j["artifacts"] = e.artifacts;
    j["drops"] = e.drops;
    doc["entries"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

OutputManifest parse_output_manifest(std::string_view text) {
  OutputManifest m;
  try {
    const json doc = json::parse(text.begin(), text.end());
    m.format = parse_format(doc.at("format").get<std::string>());
    m.class_order = parse_class_order(doc.at("class_order").get<std::vector<std::string>>());
    for (const json& j : doc.at("entries")) {
      ManifestEntry e;
      e.image = j.at("image").get<std::string>();
      e.label = j.at("label").get<std::string>();
      e.provenance = j.at("provenance").get<std::string>();
      if (!j.at("plan_seed").is_null()) e.plan_seed = j.at("plan_seed").get<std::uint64_t>();
      e.size = {j.at("width").get<int>(), j.at("height").get<int>()};
      const auto bits = j.at("multilabel").get<std::vector<int>>();
      if (bits.size() != kNumObjectClasses) throw ParseError("multilabel must have 5 entries");
      for (std::size_t i = 0; i < bits.size(); ++i) e.multilabel.set(i, bits[i] != 0);
      e.objects = j.value("objects", std::size_t{0});
      e.artifacts = j.value("artifacts", std::size_t{0});
      e.drops = j.value("drops", std::size_t{0});
      m.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("output manifest: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("output manifest: ") + e.what());
  }
  return m;
}

OutputManifest read_output_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_output_manifest(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

namespace {

void make_dirs(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create directory " + p.string() + ": " + ec.message());
}

std::string stem_of(const std::string& name) { return fs::path(name).stem().string(); }

std::string label_file(const DatasetLayout& layout, const std::string& img) {
  switch (layout.format) {
    case LabelFormat::kYoloTxt: return layout.labels_dir + "/" + stem_of(img) + ".txt";
    case LabelFormat::kMultilabelCsv: return layout.labels_dir + "/" + stem_of(img) + ".csv";
    case LabelFormat::kCocoJson: return layout.labels_dir + "/annotations.json";
  }
  return "";
}

}  // namespace

DatasetWriter::DatasetWriter(DatasetLayout layout) : layout_(std::move(layout)) {
  for (ClassLabel c : kObjectClasses) class_index(layout_.class_order, c);
  make_dirs(layout_.root / layout_.images_dir);
  make_dirs(layout_.root / layout_.labels_dir);
  manifest_.format = layout_.format;
  manifest_.class_order = layout_.class_order;
}

void DatasetWriter::add(std::span<const Item> items, int workers, StageTimings* timings) {
  const std::size_t first = manifest_.entries.size();
  manifest_.entries.resize(first + items.size());
  std::vector<double> encode_s(items.size(), 0.0);

  parallel_for(items.size(), workers, [&](std::size_t i) {
    const Item& item = items[i];
    const std::string name = image_name(first + i);
    ManifestEntry& e = manifest_.entries[first + i];
    e = item.entry;
    e.image = layout_.images_dir + "/" + name;
    e.label = label_file(layout_, name);
    e.size = {item.image->width(), item.image->height()};

    const auto t0 = std::chrono::steady_clock::now();
    const auto png = encode_png(*item.image);
    encode_s[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file_bytes(layout_.root / e.image, png);
    if (layout_.format == LabelFormat::kYoloTxt) {
      write_text_file(layout_.root / e.label, emit_yolo(*item.boxes, e.size, layout_.class_order));
    } else if (layout_.format == LabelFormat::kMultilabelCsv) {
      const std::pair<std::string, MultiLabel> row{name, e.multilabel};
      write_text_file(layout_.root / e.label, emit_multilabel(std::span(&row, 1)));
    }
  });
  if (timings) {
    for (double s : encode_s) timings->encode += s;
  }
  if (layout_.format == LabelFormat::kCocoJson) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      coco_.push_back({image_name(first + i), manifest_.entries[first + i].size, *items[i].boxes});
    }
  }
}

void DatasetWriter::add(std::span<const SyntheticSample> samples, int workers, StageTimings* timings) {
  std::vector<Item> items;
  items.reserve(samples.size());
  for (const SyntheticSample& s : samples) {
    ManifestEntry e;
    e.provenance = "synthetic";
    e.plan_seed = s.plan.plan_seed;
    e.multilabel = s.multilabel;
    e.objects = static_cast<std::size_t>(std::count_if(
        s.boxes.begin(), s.boxes.end(), [](const LabeledBox& b) { return is_object_class(b.cls); }));
    e.artifacts = static_cast<std::size_t>(
        std::count_if(s.plan.placements.begin(), s.plan.placements.end(),
                      [](const PlacedObject& p) { return !is_object_class(p.cls); }));
    e.drops = s.plan.drops.size();
    items.push_back({&s.image, &s.boxes, std::move(e)});
  }
  add(std::span<const Item>(items), workers, timings);
}

OutputManifest DatasetWriter::finish() {
  if (layout_.format == LabelFormat::kCocoJson) {
    write_text_file(layout_.root / layout_.labels_dir / "annotations.json",
                    emit_coco(coco_, layout_.class_order));
  } else if (layout_.format == LabelFormat::kMultilabelCsv) {
    std::vector<std::pair<std::string, MultiLabel>> rows;
    rows.reserve(manifest_.entries.size());
    for (const ManifestEntry& e : manifest_.entries) {
      rows.emplace_back(fs::path(e.image).filename().string(), e.multilabel);
    }
    write_text_file(layout_.root / "multilabel.csv", emit_multilabel(rows));
  }
  write_text_file(layout_.manifest_path(), serialize_output_manifest(manifest_));
  return manifest_;
}

OutputManifest write_dataset(std::span<const SyntheticSample> samples, const DatasetLayout& layout,
                             int workers, StageTimings* timings) {
  DatasetWriter writer(layout);
  writer.add(samples, workers, timings);
  return writer.finish();
}

OutputManifest write_real_dataset(std::span<const RealImage> images, const DatasetLayout& layout) {
  std::vector<DatasetWriter::Item> items;
  items.reserve(images.size());
  for (const RealImage& r : images) {
    ManifestEntry e;
    e.provenance = "real";
    for (const LabeledBox& b : r.boxes) {
      if (is_object_class(b.cls)) {
        e.multilabel.set(index_of(b.cls));
        ++e.objects;
      } else {
        ++e.artifacts;
      }
    }
    items.push_back({&r.image, &r.boxes, std::move(e)});
  }
  DatasetWriter writer(layout);
  writer.add(std::span<const DatasetWriter::Item>(items));
  return writer.finish();
}

std::size_t real_count_for_fraction(std::size_t synthetic, std::size_t real_available,
                                    double real_fraction) {
  if (!(real_fraction >= 0.0 && real_fraction <= 1.0)) {
    throw ConfigError("real_fraction must be in [0, 1]");
  }
  const double max_achievable =
      real_available + synthetic == 0
          ? 0.0
          : static_cast<double>(real_available) / static_cast<double>(real_available + synthetic);
  auto insufficient = [&] {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "real pool of %zu images cannot reach fraction %.6f against %zu synthetic; "
                  "max achievable %.6f",
                  real_available, real_fraction, synthetic, max_achievable);
    return InsufficientReal(buf);
  };
  if (real_fraction == 0.0) return 0;
  if (real_fraction == 1.0) {
    if (synthetic > 0 || real_available == 0) throw insufficient();
    return real_available;
  }
  const auto r = static_cast<std::size_t>(
      round_half_up(real_fraction * static_cast<double>(synthetic) / (1.0 - real_fraction)));
  if (r > real_available) throw insufficient();
  return r;
}

OutputManifest mix_manifests(const OutputManifest& synthetic, const OutputManifest& real,
                             const MixSpec& spec) {
  if (synthetic.format != real.format || synthetic.class_order != real.class_order) {
    throw ConfigError("mix: synthetic and real datasets must share format and class order");
  }
  const std::size_t r =
      real_count_for_fraction(synthetic.entries.size(), real.entries.size(), spec.real_fraction);

  // Partial Fisher-Yates over indices, then restore the original order.
  std::vector<std::size_t> idx(real.entries.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < r; ++i) {
    std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
  }
  std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(r));

  OutputManifest out;
  out.format = synthetic.format;
  out.class_order = synthetic.class_order;
  out.entries = synthetic.entries;
  for (ManifestEntry& e : out.entries) e.provenance = "synthetic";
  for (std::size_t i = 0; i < r; ++i) {
    ManifestEntry e = real.entries[idx[i]];
    e.provenance = "real";
    out.entries.push_back(std::move(e));
  }
  return out;
}

OutputManifest mix_datasets(const DatasetLayout& synthetic, const DatasetLayout& real,
                            const MixSpec& spec, const fs::path& out_root) {
  OutputManifest syn = read_output_manifest(synthetic.manifest_path());
  OutputManifest rea = read_output_manifest(real.manifest_path());
  make_dirs(out_root);
  const fs::path base = fs::weakly_canonical(out_root);
  auto rebase = [&](OutputManifest& m, const fs::path& root) {
    const fs::path abs_root = fs::weakly_canonical(root);
    for (ManifestEntry& e : m.entries) {
      e.image = (abs_root / e.image).lexically_relative(base).generic_string();
      e.label = (abs_root / e.label).lexically_relative(base).generic_string();
    }
  };
  rebase(syn, synthetic.root);
  rebase(rea, real.root);
  OutputManifest mixed = mix_manifests(syn, rea, spec);
  write_text_file(out_root / "manifest.json", serialize_output_manifest(mixed));
  return mixed;
}

}  // namespace synthpaste

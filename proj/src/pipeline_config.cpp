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

#include "synthpaste/pipeline_config.hpp"

#include <fstream>
#include <set>

#include "synthpaste/error.hpp"

namespace synthpaste {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, _] : obj.items()) {
    if (!ok.count(k)) throw ConfigError("unknown config key '" + (where.empty() ? k : where + "." + k) + "'");
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw ConfigError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw ConfigError("");
      if constexpr (std::is_unsigned_v<T>) {
        if (it->is_number_integer() && !it->is_number_unsigned() && it->get<std::int64_t>() < 0) {
          throw ConfigError("");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw ConfigError("");
    } else {
      if (!it->is_string()) throw ConfigError("");
    }
    return it->get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config key '" + where + (where.empty() ? "" : ".") + key + "' has the wrong type");
  }
}

std::pair<double, double> get_range(const json& obj, const std::string& where, std::pair<double, double> fallback) {
  auto it = obj.find("range");
  if (it == obj.end()) return fallback;
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
    throw ConfigError(where + ".range must be [lo, hi]");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

AugmentConfig parse_augment(const json& obj, const std::string& where, AugmentConfig base) {
  check_keys(obj, where,
             {"flip_h", "flip_v", "rotate90", "brightness", "contrast", "gaussian_noise", "hue"});
  if (obj.contains("hue") && get(obj.at("hue"), "enabled", where + ".hue", false)) {
    throw ConfigError(where + ".hue: hue jitter is not supported");
  }
  for (AugmentKind k : kAllAugmentKinds) {
    const std::string name(augment_name(k));
    auto it = obj.find(name);
    if (it == obj.end()) continue;
    const std::string w = where + "." + name;
    check_keys(*it, w, {"enabled", "probability", "range"});
    AugmentOpConfig& op = base[k];
    op.enabled = get(*it, "enabled", w, op.enabled);
    op.probability = get(*it, "probability", w, op.probability);
    std::tie(op.lo, op.hi) = get_range(*it, w, {op.lo, op.hi});
  }
  base.validate();
  return base;
}

ojson augment_to_json(const AugmentConfig& c) {
  ojson j = ojson::object();
  for (AugmentKind k : kAllAugmentKinds) {
    const AugmentOpConfig& op = c[k];
    ojson e = {{"enabled", op.enabled}, {"probability", op.probability}};
    if (k != AugmentKind::kFlipH && k != AugmentKind::kFlipV) e["range"] = {op.lo, op.hi};
    j[std::string(augment_name(k))] = e;
  }
  return j;
}

std::string resolve(const std::string& p, const fs::path& base) {
  if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
  return fs::weakly_canonical(base / p).string();
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& doc, const fs::path& base_dir) {
  check_keys(doc, "",
             {"preset", "seed", "workers", "paths", "composition", "augmentation", "emit", "synth",
              "split", "mix", "bench"});
  PipelineConfig c;
  c.preset = get<std::string>(doc, "preset", "", "detect-416");
  c.composition = CompositionConfig::preset(c.preset);
  c.seed = get<std::uint64_t>(doc, "seed", "", 0);
  c.workers = get<int>(doc, "workers", "", 1);
  if (c.workers < 1) throw ConfigError("workers must be >= 1");

  if (auto it = doc.find("paths"); it != doc.end()) {
    check_keys(*it, "paths", {"manifest", "size_table", "output", "pool_cache", "synthetic", "real"});
    c.paths.manifest = resolve(get<std::string>(*it, "manifest", "paths", ""), base_dir);
    c.paths.size_table = resolve(get<std::string>(*it, "size_table", "paths", ""), base_dir);
    c.paths.output = resolve(get<std::string>(*it, "output", "paths", ""), base_dir);
    c.paths.pool_cache = resolve(get<std::string>(*it, "pool_cache", "paths", ""), base_dir);
    c.paths.synthetic = resolve(get<std::string>(*it, "synthetic", "paths", ""), base_dir);
    c.paths.real = resolve(get<std::string>(*it, "real", "paths", ""), base_dir);
  }

  CompositionConfig& comp = c.composition;
  if (auto it = doc.find("composition"); it != doc.end()) {
    check_keys(*it, "composition",
               {"canvas", "count_sampler", "class_sampler", "artifact_rate", "label_artifacts",
                "overlap", "background"});
    const json& j = *it;
    if (auto cv = j.find("canvas"); cv != j.end()) {
      if (!cv->is_array() || cv->size() != 2 || !(*cv)[0].is_number_integer() ||
          !(*cv)[1].is_number_integer()) {
        throw ConfigError("composition.canvas must be [width, height]");
      }
      comp.canvas = {(*cv)[0].get<int>(), (*cv)[1].get<int>()};
    }
    if (auto cs = j.find("count_sampler"); cs != j.end()) {
      check_keys(*cs, "composition.count_sampler", {"kind", "min", "max"});
      const auto kind = get<std::string>(*cs, "kind", "composition.count_sampler", "uniform_range");
      if (kind == "uniform_range") {
        UniformCount u = std::holds_alternative<UniformCount>(comp.count) ? std::get<UniformCount>(comp.count)
                                                                          : UniformCount{};
        u.n_min = get<int>(*cs, "min", "composition.count_sampler", u.n_min);
        u.n_max = get<int>(*cs, "max", "composition.count_sampler", u.n_max);
        comp.count = u;
      } else if (kind == "empirical") {
        c.empirical_counts = true;
      } else {
        throw ConfigError("composition.count_sampler.kind must be uniform_range or empirical");
      }
    }
    if (auto cs = j.find("class_sampler"); cs != j.end()) {
      check_keys(*cs, "composition.class_sampler", {"kind"});
      const auto kind = get<std::string>(*cs, "kind", "composition.class_sampler", "uniform");
      if (kind == "empirical") {
        c.empirical_classes = true;
      } else if (kind != "uniform") {
        throw ConfigError("composition.class_sampler.kind must be uniform or empirical");
      }
    }
    comp.artifact_rate = get(j, "artifact_rate", "composition", comp.artifact_rate);
    comp.label_artifacts = get(j, "label_artifacts", "composition", comp.label_artifacts);
    if (auto ov = j.find("overlap"); ov != j.end()) {
      check_keys(*ov, "composition.overlap", {"max_iou", "max_attempts"});
      comp.overlap.max_iou = get(*ov, "max_iou", "composition.overlap", comp.overlap.max_iou);
      comp.overlap.max_attempts = get(*ov, "max_attempts", "composition.overlap", comp.overlap.max_attempts);
    }
    if (auto bg = j.find("background"); bg != j.end()) {
      check_keys(*bg, "composition.background", {"kind", "gray", "range", "sigma"});
      const std::string w = "composition.background";
      const auto kind = get<std::string>(*bg, "kind", w, "sampled_constant");
      if (kind == "constant") {
        comp.background = BackgroundModel::constant(get<int>(*bg, "gray", w, 220));
      } else if (kind == "sampled_constant") {
        const auto [lo, hi] = get_range(*bg, w, {210, 235});
        if (lo != static_cast<int>(lo) || hi != static_cast<int>(hi)) {
          throw ConfigError(w + ".range must be integer gray levels");
        }
        comp.background = BackgroundModel::sampled_constant(static_cast<int>(lo), static_cast<int>(hi));
      } else if (kind == "constant_plus_noise") {
        comp.background = BackgroundModel::constant_plus_noise(get<int>(*bg, "gray", w, 220),
                                                               get<double>(*bg, "sigma", w, 0.02));
      } else {
        throw ConfigError(w + ".kind must be constant, sampled_constant or constant_plus_noise");
      }
    }
  }
  if (auto it = doc.find("augmentation"); it != doc.end()) {
    check_keys(*it, "augmentation", {"pre_paste", "post_paste"});
    if (it->contains("pre_paste")) {
      comp.pre_paste = parse_augment(it->at("pre_paste"), "augmentation.pre_paste", comp.pre_paste);
    }
    if (it->contains("post_paste")) {
      comp.post_paste = parse_augment(it->at("post_paste"), "augmentation.post_paste", comp.post_paste);
    }
  }
  comp.validate();

  if (auto it = doc.find("emit"); it != doc.end()) {
    check_keys(*it, "emit", {"format", "class_order"});
    c.format = parse_format(get<std::string>(*it, "format", "emit", "yolo_txt"));
    if (auto co = it->find("class_order"); co != it->end()) {
      if (!co->is_array()) throw ConfigError("emit.class_order must be an array of class names");
      c.class_order = parse_class_order(co->get<std::vector<std::string>>());
    } else if (comp.label_artifacts) {
      c.class_order.push_back(ClassLabel::kArtifact);
    }
  } else if (comp.label_artifacts) {
    c.class_order.push_back(ClassLabel::kArtifact);
  }
  for (ClassLabel cl : kObjectClasses) {
    if (std::find(c.class_order.begin(), c.class_order.end(), cl) == c.class_order.end()) {
      throw ConfigError("emit.class_order must list all five object classes");
    }
  }
  if (comp.label_artifacts &&
      std::find(c.class_order.begin(), c.class_order.end(), ClassLabel::kArtifact) == c.class_order.end()) {
    throw ConfigError("label_artifacts requires ARTIFACT in emit.class_order");
  }

  if (auto it = doc.find("synth"); it != doc.end()) {
    check_keys(*it, "synth", {"count"});
    c.count = get<std::size_t>(*it, "count", "synth", 0);
  }
  if (auto it = doc.find("split"); it != doc.end()) {
    check_keys(*it, "split", {"test_fraction"});
    c.test_fraction = get(*it, "test_fraction", "split", c.test_fraction);
  }
  if (!(c.test_fraction >= 0.0 && c.test_fraction <= 1.0)) throw ConfigError("split.test_fraction must be in [0, 1]");
  if (auto it = doc.find("mix"); it != doc.end()) {
    check_keys(*it, "mix", {"real_fraction"});
    c.real_fraction = get(*it, "real_fraction", "mix", c.real_fraction);
  }
  if (!(c.real_fraction >= 0.0 && c.real_fraction <= 1.0)) throw ConfigError("mix.real_fraction must be in [0, 1]");
  if (auto it = doc.find("bench"); it != doc.end()) {
    check_keys(*it, "bench", {"samples"});
    c.bench_samples = get<std::size_t>(*it, "samples", "bench", c.bench_samples);
  }
  return c;
}

ojson PipelineConfig::to_json() const {
  ojson j;
  j["preset"] = preset;
  j["seed"] = seed;
  j["workers"] = workers;
  j["paths"] = {{"manifest", paths.manifest},     {"size_table", paths.size_table},
                {"output", paths.output},         {"pool_cache", paths.pool_cache},
                {"synthetic", paths.synthetic},   {"real", paths.real}};
  const CompositionConfig& comp = composition;
  ojson cj;
  cj["canvas"] = {comp.canvas.w, comp.canvas.h};
  if (empirical_counts) {
    cj["count_sampler"] = {{"kind", "empirical"}};
  } else {
    const auto& u = std::get<UniformCount>(comp.count);
    cj["count_sampler"] = {{"kind", "uniform_range"}, {"min", u.n_min}, {"max", u.n_max}};
  }
  cj["class_sampler"] = {{"kind", empirical_classes ? "empirical" : "uniform"}};
  cj["artifact_rate"] = comp.artifact_rate;
  cj["label_artifacts"] = comp.label_artifacts;
  cj["overlap"] = {{"max_iou", comp.overlap.max_iou}, {"max_attempts", comp.overlap.max_attempts}};
  switch (comp.background.kind) {
    case BackgroundModel::Kind::kConstant:
      cj["background"] = {{"kind", "constant"}, {"gray", comp.background.gray}};
      break;
    case BackgroundModel::Kind::kSampledConstant:
      cj["background"] = {{"kind", "sampled_constant"}, {"range", {comp.background.lo, comp.background.hi}}};
      break;
    case BackgroundModel::Kind::kConstantPlusNoise:
      cj["background"] = {{"kind", "constant_plus_noise"},
                          {"gray", comp.background.gray},
                          {"sigma", comp.background.sigma}};
      break;
  }
  j["composition"] = cj;
  j["augmentation"] = {{"pre_paste", augment_to_json(comp.pre_paste)},
                       {"post_paste", augment_to_json(comp.post_paste)}};
  ojson order = ojson::array();
  for (ClassLabel c : class_order) order.push_back(class_name(c));
  j["emit"] = {{"format", format_name(format)}, {"class_order", order}};
  j["synth"] = {{"count", count}};
  j["split"] = {{"test_fraction", test_fraction}};
  j["mix"] = {{"real_fraction", real_fraction}};
  j["bench"] = {{"samples", bench_samples}};
  return j;
}

json load_config_document(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("tool") && doc.contains("config")) return doc.at("config");
  return doc;
}

void set_config_leaf(json& doc, std::string_view dotted_key, json value) {
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = dotted_key.find('.', start);
    const std::string key(dotted_key.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (!node->is_object()) *node = json::object();
    if (dot == std::string_view::npos) {
      (*node)[key] = std::move(value);
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace synthpaste

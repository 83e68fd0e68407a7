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

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "synthpaste/annotation.hpp"
#include "synthpaste/demo.hpp"
#include "synthpaste/emitters.hpp"
#include "synthpaste/error.hpp"
#include "synthpaste/patch.hpp"
#include "synthpaste/pipeline_config.hpp"
#include "synthpaste/stats.hpp"
#include "synthpaste/stream.hpp"

#ifndef SYNTHPASTE_VERSION
#define SYNTHPASTE_VERSION "0.0.0"
#endif

namespace synthpaste::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr std::uint64_t kPoolKey = 0x504F4F4C;  // "POOL"

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::optional<std::string> preset;
  std::optional<int> workers;
  std::optional<std::string> format;
  std::optional<double> real_fraction;
  std::optional<std::string> out;
  bool overwrite = false;
  // stats
  std::vector<std::string> datasets;
  bool json_output = false;
  // bench
  std::optional<std::size_t> samples;
  // demo
  int demo_images = 12;
};

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kConfig: return 2;
    case ErrorCategory::kData: return 3;
    case ErrorCategory::kIo: return 4;
  }
  return 1;
}

const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kConfig: return "config";
    case ErrorCategory::kData: return "data";
    case ErrorCategory::kIo: return "io";
  }
  return "internal";
}

void report_error(std::ostream& err, const std::string& sub, const std::string& category,
                  const std::string& kind, const std::string& message) {
  ojson j;
  j["status"] = "error";
  j["subcommand"] = sub;
  j["category"] = category;
  j["kind"] = kind;
  j["message"] = message;
  err << j.dump() << "\n";
}

// Config document plus flag overrides, parsed.
PipelineConfig resolve_config(const Flags& f) {
  json doc = json::object();
  fs::path base = fs::current_path();
  if (!f.config.empty()) {
    doc = load_config_document(f.config);
    base = fs::absolute(f.config).parent_path();
  }
  if (f.preset) set_config_leaf(doc, "preset", *f.preset);
  if (f.seed) set_config_leaf(doc, "seed", *f.seed);
  if (f.count) set_config_leaf(doc, "synth.count", *f.count);
  if (f.format) set_config_leaf(doc, "emit.format", *f.format);
  if (f.real_fraction) set_config_leaf(doc, "mix.real_fraction", *f.real_fraction);
  if (f.out) set_config_leaf(doc, "paths.output", fs::absolute(*f.out).lexically_normal().string());
  if (f.workers) {
    set_config_leaf(doc, "workers", *f.workers);
  } else if (!doc.contains("workers")) {
    if (const char* env = std::getenv("SYNTHPASTE_WORKERS"); env && *env) {
      char* end = nullptr;
      const long w = std::strtol(env, &end, 10);
      if (*end != '\0' || w < 1 || w > 1024) {
        throw ConfigError(std::string("SYNTHPASTE_WORKERS must be a positive integer, got '") + env + "'");
      }
      doc["workers"] = static_cast<int>(w);
    }
  }
  return PipelineConfig::from_json(doc, base);
}

const std::string& require(const std::string& value, const char* key) {
  if (value.empty()) throw ConfigError(std::string(key) + " is required for this subcommand");
  return value;
}

void write_provenance(const fs::path& dir, const std::string& sub, const PipelineConfig& c,
                      ojson outputs) {
  ojson j;
  j["tool"] = "synthpaste";
  j["version"] = SYNTHPASTE_VERSION;
  j["subcommand"] = sub;
  j["seeds"] = {{"master", c.seed}, {"pool", substream_seed(c.seed, kPoolKey)}};
  // Output location and worker count never change output bytes.
  ojson cfg = c.to_json();
  cfg["paths"].erase("output");
  cfg.erase("workers");
  j["config"] = std::move(cfg);
  j["outputs"] = std::move(outputs);
  write_text_file(dir / "provenance.json", j.dump(2) + "\n");
}

void prepare_output(const fs::path& root, bool overwrite) {
  if (!fs::exists(root / "manifest.json") && !fs::exists(root / "images")) return;
  if (!overwrite) {
    throw IoError("output directory " + root.string() +
                  " already holds a dataset; pass --overwrite to replace it");
  }
  for (const char* name : {"images", "labels", "manifest.json", "multilabel.csv", "provenance.json"}) {
    std::error_code ec;
    fs::remove_all(root / name, ec);
    if (ec) throw IoError("cannot remove " + (root / name).string() + ": " + ec.message());
  }
}

DatasetManifest load_source(const PipelineConfig& c) {
  return load_manifest(require(c.paths.manifest, "paths.manifest"));
}

fs::path manifest_dir(const PipelineConfig& c) { return fs::absolute(c.paths.manifest).parent_path(); }

CompositionConfig effective_composition(const PipelineConfig& c, const DatasetManifest* m) {
  CompositionConfig comp = c.composition;
  if (c.empirical_counts || c.empirical_classes) {
    if (!m) throw ConfigError("empirical samplers need paths.manifest");
    if (c.empirical_counts) comp.count = EmpiricalCount{per_image_object_counts(*m)};
    if (c.empirical_classes) comp.classes = empirical_class_weights(*m);
    comp.validate();
  }
  return comp;
}

struct PoolInfo {
  std::shared_ptr<const PatchPool> pool;
  std::vector<PoolFailure> failures;
  std::string source;
};

PoolInfo acquire_pool(const PipelineConfig& c, const DatasetManifest* m) {
  PoolInfo info;
  if (!c.paths.pool_cache.empty() && fs::exists(fs::path(c.paths.pool_cache) / "index.json")) {
    info.pool = std::make_shared<const PatchPool>(load_pool_cache(c.paths.pool_cache));
    info.source = "cache";
    return info;
  }
  if (!m) throw ConfigError("paths.manifest or a populated paths.pool_cache is required");
  const SizeTable sizes = SizeTable::load(require(c.paths.size_table, "paths.size_table"));
  PoolBuildResult r = build_patch_pool(*m, sizes, substream_seed(c.seed, kPoolKey),
                                       file_image_loader(manifest_dir(c)), c.workers);
  info.pool = std::make_shared<const PatchPool>(std::move(r.pool));
  info.failures = std::move(r.failures);
  info.source = "manifest";
  return info;
}

ojson failures_json(const std::vector<PoolFailure>& failures) {
  ojson a = ojson::array();
  for (const PoolFailure& f : failures) {
    a.push_back({{"image_id", f.image_id},
                 {"kind", f.kind},
                 {"annotation_index", f.annotation_index},
                 {"message", f.message}});
  }
  return a;
}

ojson pool_counts(const PatchPool& pool) {
  ojson j = ojson::object();
  for (ClassLabel c : kAllClasses) j[std::string(class_name(c))] = pool.of(c).size();
  return j;
}

ojson finding_json(const ValidationFinding& f) {
  return {{"kind", f.kind}, {"locus", f.locus}, {"message", f.message}};
}

// ---- subcommands ----

int cmd_validate(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  const std::string& path = require(c.paths.manifest, "paths.manifest");
  const auto bytes = read_file_bytes(path);
  const DatasetManifest m = parse_manifest_unvalidated(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), ManifestFormat::kJson);
  ValidationReport report = validate_manifest(m);

  const fs::path base = manifest_dir(c);
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    const SourceImageRecord& r = m.records[i];
    const std::string locus = "images[" + std::to_string(i) + "]";
    const fs::path p = base / r.path;
    if (r.path.empty() || !fs::is_regular_file(p)) {
      report.errors.push_back({"MissingFile", locus, "image file not found: " + p.string()});
      continue;
    }
    try {
      const auto encoded = read_file_bytes(p);
      int w = 0, h = 0;
      if (encoded.size() >= 8 && encoded[0] == 0x89 && encoded[1] == 'P') {
        std::tie(w, h) = png_dimensions(encoded);
      } else {
        const Image img = decode_image(encoded);
        w = img.width();
        h = img.height();
      }
      if (w != r.width || h != r.height) {
        report.errors.push_back({"SizeMismatch", locus,
                                 "declared " + std::to_string(r.width) + "x" + std::to_string(r.height) +
                                     ", file is " + std::to_string(w) + "x" + std::to_string(h)});
      }
    } catch (const Error& e) {
      report.errors.push_back({e.kind(), locus, e.what()});
    }
  }
  if (!c.paths.size_table.empty()) {
    try {
      SizeTable::load(c.paths.size_table);
    } catch (const Error& e) {
      report.errors.push_back({e.kind(), "size_table", e.what()});
    }
  }

  ojson j;
  j["ok"] = report.ok();
  j["images"] = m.records.size();
  j["centers"] = m.centers.size();
  j["boxes"] = m.boxes.size();
  j["errors"] = ojson::array();
  for (const auto& f : report.errors) j["errors"].push_back(finding_json(f));
  j["warnings"] = ojson::array();
  for (const auto& f : report.warnings) j["warnings"].push_back(finding_json(f));
  out << j.dump(2) << "\n";
  if (flags.out) {
    std::error_code ec;
    fs::create_directories(c.paths.output, ec);
    if (ec) throw IoError("cannot create " + c.paths.output + ": " + ec.message());
    write_text_file(fs::path(c.paths.output) / "validation.json", j.dump(2) + "\n");
    write_provenance(c.paths.output, "validate", c, {{"report", "validation.json"}});
  }
  return report.ok() ? 0 : 3;
}

int cmd_split(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  const DatasetManifest m = load_source(c);
  const fs::path dir = require(c.paths.output, "paths.output");
  ManifestSplit s = split_by_sample(m, c.test_fraction, c.seed);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const fs::path src = manifest_dir(c);
  const fs::path dst = fs::weakly_canonical(dir);
  auto rebase = [&](DatasetManifest& part) {
    for (auto& r : part.records) {
      r.path = fs::weakly_canonical(src / r.path).lexically_relative(dst).generic_string();
    }
  };
  rebase(s.train);
  rebase(s.test);
  write_text_file(dir / "train.json", serialize_manifest(s.train));
  write_text_file(dir / "test.json", serialize_manifest(s.test));

  auto samples = [](const DatasetManifest& part) {
    std::vector<std::string> ids;
    for (const auto& r : part.records) {
      if (ids.empty() || ids.back() != r.sample_id) ids.push_back(r.sample_id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  };
  ojson j;
  j["train"] = {{"file", "train.json"}, {"images", s.train.records.size()}, {"samples", samples(s.train)}};
  j["test"] = {{"file", "test.json"}, {"images", s.test.records.size()}, {"samples", samples(s.test)}};
  write_provenance(dir, "split", c, j);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_extract(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  const DatasetManifest m = load_source(c);
  fs::path dest = c.paths.pool_cache;
  if (dest.empty()) {
    if (c.paths.output.empty()) throw ConfigError("paths.pool_cache or paths.output is required");
    dest = fs::path(c.paths.output) / "pool";
  }
  const SizeTable sizes = SizeTable::load(require(c.paths.size_table, "paths.size_table"));
  PoolBuildResult r =
      build_patch_pool(m, sizes, substream_seed(c.seed, kPoolKey), file_image_loader(manifest_dir(c)), c.workers);
  if (r.pool.total() == 0) throw EmptyPool("no patch could be extracted from " + c.paths.manifest);
  std::error_code ec;
  fs::remove_all(dest, ec);
  save_pool_cache(r.pool, dest);

  ojson j;
  j["pool_cache"] = fs::path(dest).generic_string();
  j["patches"] = r.pool.total();
  j["per_class"] = pool_counts(r.pool);
  j["failures"] = failures_json(r.failures);
  write_provenance(dest, "extract", c, j);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_synth(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  const fs::path dir = require(c.paths.output, "paths.output");
  std::optional<DatasetManifest> m;
  if (!c.paths.manifest.empty()) m = load_source(c);
  const bool need_pool = c.count > 0 || !c.paths.manifest.empty() || !c.paths.pool_cache.empty();

  GeneratorSpec spec;
  spec.config = effective_composition(c, m ? &*m : nullptr);
  spec.master_seed = c.seed;
  PoolInfo pool;
  if (need_pool) {
    pool = acquire_pool(c, m ? &*m : nullptr);
    spec.pool = pool.pool;
  }
  prepare_output(dir, flags.overwrite);
  DatasetLayout layout;
  layout.root = dir;
  layout.format = c.format;
  layout.class_order = c.class_order;
  const OutputManifest om = generate_dataset(spec, c.count, layout, c.workers);

  std::size_t objects = 0, artifacts = 0, drops = 0;
  for (const auto& e : om.entries) {
    objects += e.objects;
    artifacts += e.artifacts;
    drops += e.drops;
  }
  ojson j;
  j["images"] = om.entries.size();
  j["format"] = format_name(c.format);
  j["objects"] = objects;
  j["artifacts"] = artifacts;
  j["drops"] = drops;
  if (pool.pool) {
    j["pool"] = {{"patches", pool.pool->total()}, {"per_class", pool_counts(*pool.pool)},
                 {"failures", failures_json(pool.failures)}};
  }
  write_provenance(dir, "synth", c, j);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_mix(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  const fs::path dir = require(c.paths.output, "paths.output");
  DatasetLayout syn, real;
  syn.root = require(c.paths.synthetic, "paths.synthetic");
  real.root = require(c.paths.real, "paths.real");
  const OutputManifest mixed = mix_datasets(syn, real, {c.real_fraction, c.seed}, dir);
  std::size_t n_real = 0;
  for (const auto& e : mixed.entries) n_real += e.provenance == "real";
  ojson j;
  j["images"] = mixed.entries.size();
  j["synthetic"] = mixed.entries.size() - n_real;
  j["real"] = n_real;
  j["requested_fraction"] = c.real_fraction;
  j["achieved_fraction"] = mixed.entries.empty() ? 0.0 : static_cast<double>(n_real) / mixed.entries.size();
  write_provenance(dir, "mix", c, j);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_stats(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  std::vector<std::pair<std::string, fs::path>> inputs;
  for (const std::string& d : flags.datasets) {
    const auto eq = d.find('=');
    if (eq == std::string::npos) {
      inputs.emplace_back(fs::path(d).lexically_normal().filename().string(), d);
    } else {
      inputs.emplace_back(d.substr(0, eq), d.substr(eq + 1));
    }
  }
  if (inputs.empty() && !c.paths.output.empty()) inputs.emplace_back("dataset", c.paths.output);

  std::vector<std::pair<std::string, ClassHistogram>> columns;
  if (!c.paths.manifest.empty()) columns.emplace_back("source", histogram(load_source(c)));
  ojson j;
  j["datasets"] = ojson::array();
  bool clean = true;
  for (const auto& [name, path] : inputs) {
    ClassHistogram h = histogram(path);
    const AuditReport audit = audit_labels(path);
    clean = clean && audit.clean();
    ojson d;
    d["name"] = name;
    d["path"] = path.generic_string();
    d["histogram"] = ojson::parse(histogram_to_json(h));
    if (h.object_total() > 0) {
      std::array<double, kNumObjectClasses> uniform;
      uniform.fill(1.0 / kNumObjectClasses);
      const ConformanceReport r = conformance(h, uniform, 0.05);
      d["conformance_uniform"] = {{"statistic", r.statistic},
                                  {"df", r.degrees_of_freedom},
                                  {"critical_value", r.critical_value},
                                  {"alpha", r.alpha},
                                  {"pass", r.pass}};
    }
    d["audit"] = ojson::array();
    for (const AuditFinding& f : audit.findings) {
      d["audit"].push_back({{"kind", f.kind}, {"file", f.file}, {"line", f.line}, {"message", f.message}});
    }
    j["datasets"].push_back(std::move(d));
    columns.emplace_back(name, h);
  }
  if (flags.json_output) {
    out << j.dump(2) << "\n";
  } else {
    out << render_table(columns);
    for (const auto& d : j["datasets"]) {
      for (const auto& f : d["audit"]) {
        out << d["name"].get<std::string>() << ": " << f["kind"].get<std::string>() << " "
            << f["file"].get<std::string>() << ":" << f["line"].get<std::size_t>() << " "
            << f["message"].get<std::string>() << "\n";
      }
    }
  }
  return clean ? 0 : 3;
}

int cmd_bench(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  std::optional<DatasetManifest> m;
  if (!c.paths.manifest.empty()) m = load_source(c);
  GeneratorSpec spec;
  spec.config = effective_composition(c, m ? &*m : nullptr);
  spec.master_seed = c.seed;
  spec.pool = acquire_pool(c, m ? &*m : nullptr).pool;
  const BenchResult r = run_bench(spec, flags.samples.value_or(c.bench_samples), c.workers);
  const std::string text = bench_to_json(r);
  out << text;
  if (flags.out) {
    std::error_code ec;
    fs::create_directories(c.paths.output, ec);
    if (ec) throw IoError("cannot create " + c.paths.output + ": " + ec.message());
    write_text_file(fs::path(c.paths.output) / "bench.json", text);
    write_provenance(c.paths.output, "bench", c, {{"report", "bench.json"}});
  }
  return 0;
}

int cmd_export_real(const Flags& flags, std::ostream& out) {
  const PipelineConfig c = resolve_config(flags);
  const DatasetManifest m = load_source(c);
  const fs::path dir = require(c.paths.output, "paths.output");
  if (m.boxes.empty()) throw ReferentialError(c.paths.manifest + " has no box annotations");
  std::map<std::string, std::vector<LabeledBox>> boxes;
  for (const BoxAnnotation& b : m.boxes) boxes[b.image_id].push_back({b.cls, {b.x, b.y, b.w, b.h}});
  const ImageLoader load = file_image_loader(manifest_dir(c));
  std::vector<RealImage> images;
  for (const SourceImageRecord& r : m.records) {
    auto it = boxes.find(r.id);
    if (it == boxes.end()) continue;  // only exhaustively annotated images
    images.push_back({load(r), it->second});
  }
  prepare_output(dir, flags.overwrite);
  DatasetLayout layout;
  layout.root = dir;
  layout.format = c.format;
  layout.class_order = c.class_order;
  const OutputManifest om = write_real_dataset(images, layout);
  ojson j;
  j["images"] = om.entries.size();
  j["format"] = format_name(c.format);
  write_provenance(dir, "export-real", c, j);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_demo(const Flags& flags, std::ostream& out) {
  if (!flags.out) throw ConfigError("demo needs --out");
  DemoOptions o;
  o.images = flags.demo_images;
  o.seed = flags.seed.value_or(1);
  const DatasetManifest m = write_demo(*flags.out, o);
  ojson j;
  j["root"] = fs::absolute(*flags.out).lexically_normal().generic_string();
  j["images"] = m.records.size();
  j["centers"] = m.centers.size();
  j["boxes"] = m.boxes.size();
  j["config"] = "config.json";
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copy-paste synthetic data generator for urine microscopy", "synthpaste"};
  app.set_version_flag("--version", SYNTHPASTE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "JSON config file (or a provenance record)");
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--count", f.count, "number of synthetic images (synth)");
  app.add_option("--preset", f.preset, "weak-384 or detect-416");
  app.add_option("--workers", f.workers, "worker threads (default: SYNTHPASTE_WORKERS or 1)");
  app.add_option("--format", f.format, "yolo_txt, coco_json or multilabel_csv");
  app.add_option("--real-fraction", f.real_fraction, "share of real images (mix)");
  app.add_option("--out", f.out, "output directory");

  auto* validate = app.add_subcommand("validate", "check a source manifest and its images");
  auto* split = app.add_subcommand("split", "sample-level train/test split");
  auto* extract = app.add_subcommand("extract", "build the patch pool cache");
  auto* synth = app.add_subcommand("synth", "write a synthetic dataset");
  synth->add_flag("--overwrite", f.overwrite, "replace an existing dataset in the output directory");
  auto* mix = app.add_subcommand("mix", "blend real images into a synthetic dataset");
  auto* stats = app.add_subcommand("stats", "class histogram, conformance and label audit");
  stats->add_option("datasets", f.datasets, "dataset roots, optionally NAME=PATH");
  stats->add_flag("--json", f.json_output, "print JSON instead of the table");
  auto* bench = app.add_subcommand("bench", "generation throughput benchmark");
  bench->add_option("--samples", f.samples, "samples per timing run");
  auto* export_real = app.add_subcommand("export-real", "write box-annotated source images as a dataset");
  export_real->add_flag("--overwrite", f.overwrite, "replace an existing dataset in the output directory");
  auto* demo = app.add_subcommand("demo", "write a small procedural source dataset");
  demo->add_option("--images", f.demo_images, "number of fields of view")->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "", "config", "UsageError", e.what());
    return 2;
  }

  std::string sub = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
  try {
    if (sub == "validate") return cmd_validate(f, out);
    if (sub == "split") return cmd_split(f, out);
    if (sub == "extract") return cmd_extract(f, out);
    if (sub == "synth") return cmd_synth(f, out);
    if (sub == "mix") return cmd_mix(f, out);
    if (sub == "stats") return cmd_stats(f, out);
    if (sub == "bench") return cmd_bench(f, out);
    if (sub == "export-real") return cmd_export_real(f, out);
    if (sub == "demo") return cmd_demo(f, out);
    (void)validate, (void)split, (void)extract, (void)mix;
    report_error(err, sub, "config", "UsageError", "unknown subcommand");
    return 2;
  } catch (const Error& e) {
    report_error(err, sub, category_name(e.category()), e.kind(), e.what());
    return exit_code(e.category());
  } catch (const fs::filesystem_error& e) {
    report_error(err, sub, "io", "IoError", e.what());
    return 4;
  } catch (const std::exception& e) {
    report_error(err, sub, "internal", "InternalError", e.what());
    return 1;
  }
}

}  // namespace synthpaste::cli

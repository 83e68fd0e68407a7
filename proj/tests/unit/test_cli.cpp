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

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "../../tools/cli.hpp"
#include "support.hpp"

using namespace synthpaste;
using namespace synthpaste::test;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "synthpaste");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json error_line(const Result& r) {
  REQUIRE_FALSE(r.err.empty());
  return json::parse(r.err.substr(0, r.err.find('\n')));
}

/// Demo source data in `dir`; returns the config path.
std::string demo(const TempDir& dir) {
  const Result r = invoke({"demo", "--out", dir.path().string(), "--images", "4"});
  REQUIRE(r.code == 0);
  return (dir / "config.json").string();
}

}  // namespace

TEST_CASE("usage errors exit 2", "[cli]") {
  const Result none = invoke({});
  REQUIRE(none.code == 2);
  REQUIRE(error_line(none)["kind"] == "UsageError");
  REQUIRE(invoke({"frobnicate"}).code == 2);
  REQUIRE(invoke({"synth", "--count", "many"}).code == 2);
  REQUIRE(invoke({"--version"}).code == 0);
}

TEST_CASE("error categories map to exit codes", "[cli]") {
  TempDir dir;
  const Result missing = invoke({"validate", "--config", (dir / "nope.json").string()});
  REQUIRE(missing.code == 4);
  const json e = error_line(missing);
  REQUIRE(e["status"] == "error");
  REQUIRE(e["subcommand"] == "validate");
  REQUIRE(e["category"] == "io");

  write_text_file(dir / "bad.json", R"({"colour": 1})");
  const Result bad = invoke({"synth", "--config", (dir / "bad.json").string()});
  REQUIRE(bad.code == 2);
  REQUIRE(error_line(bad)["kind"] == "ConfigError");

  const std::string config = demo(dir);
  auto m = json::parse(read_text(dir / "manifest.json"));
  m["images"].push_back(m["images"][0]);
  write_text_file(dir / "manifest.json", m.dump());
  const Result dup = invoke({"validate", "--config", config});
  REQUIRE(dup.code == 3);
}

TEST_CASE("validate accepts demo data", "[cli]") {
  TempDir dir;
  const std::string config = demo(dir);
  const Result r = invoke({"validate", "--config", config});
  INFO(r.err);
  REQUIRE(r.code == 0);
  REQUIRE_FALSE(std::filesystem::exists(dir / "out"));
}

TEST_CASE("synth --count 0 writes an empty tree", "[cli]") {
  TempDir dir;
  const std::string config = demo(dir);
  const Result r = invoke({"synth", "--config", config, "--count", "0", "--out", (dir / "empty").string()});
  INFO(r.err);
  REQUIRE(r.code == 0);
  const auto tree = snapshot_tree(dir / "empty");
  REQUIRE(tree.count("manifest.json") == 1);
  REQUIRE(tree.count("provenance.json") == 1);
  REQUIRE(tree.size() == 2);
  REQUIRE(std::filesystem::is_directory(dir / "empty/images"));
  REQUIRE(std::filesystem::is_directory(dir / "empty/labels"));
}

TEST_CASE("synth is deterministic and reproducible from provenance", "[cli]") {
  TempDir dir;
  const std::string config = demo(dir);
  const auto a = (dir / "a").string(), b = (dir / "b").string(), c = (dir / "c").string();
  REQUIRE(invoke({"synth", "--config", config, "--count", "12", "--seed", "5", "--out", a}).code == 0);
  REQUIRE(invoke({"synth", "--config", config, "--count", "12", "--seed", "5", "--workers", "3", "--out", b}).code == 0);
  REQUIRE(snapshot_tree(a) == snapshot_tree(b));

  REQUIRE(invoke({"synth", "--config", a + "/provenance.json", "--out", c}).code == 0);
  REQUIRE(snapshot_tree(a) == snapshot_tree(c));

  const auto prov = json::parse(read_text(dir / "a/provenance.json"));
  REQUIRE(prov["tool"] == "synthpaste");
  REQUIRE(prov["subcommand"] == "synth");
  REQUIRE(prov["seeds"]["master"] == 5);

  SECTION("a different seed changes the output") {
    REQUIRE(invoke({"synth", "--config", config, "--count", "12", "--seed", "6", "--out", c, "--overwrite"}).code == 0);
    REQUIRE_FALSE(snapshot_tree(a) == snapshot_tree(c));
  }
  SECTION("an existing dataset is not overwritten silently") {
    const Result r = invoke({"synth", "--config", config, "--count", "3", "--out", a});
    REQUIRE(r.code == 4);
    REQUIRE(snapshot_tree(a) == snapshot_tree(b));
  }
}

TEST_CASE("SYNTHPASTE_WORKERS", "[cli]") {
  TempDir dir;
  const std::string config = demo(dir);
  ::setenv("SYNTHPASTE_WORKERS", "2", 1);
  const Result ok = invoke({"synth", "--config", config, "--count", "6", "--out", (dir / "w2").string()});
  ::setenv("SYNTHPASTE_WORKERS", "zero", 1);
  const Result bad = invoke({"synth", "--config", config, "--count", "6", "--out", (dir / "w0").string()});
  ::unsetenv("SYNTHPASTE_WORKERS");
  const Result one = invoke({"synth", "--config", config, "--count", "6", "--out", (dir / "w1").string()});
  REQUIRE(ok.code == 0);
  REQUIRE(bad.code == 2);
  REQUIRE(one.code == 0);
  REQUIRE(snapshot_tree(dir / "w1") == snapshot_tree(dir / "w2"));
}

TEST_CASE("stats reports and audits", "[cli]") {
  TempDir dir;
  const std::string config = demo(dir);
  const auto out = (dir / "s").string();
  REQUIRE(invoke({"synth", "--config", config, "--count", "10", "--out", out}).code == 0);
  const Result r = invoke({"stats", "--json", "synthetic=" + out});
  INFO(r.err);
  REQUIRE(r.code == 0);
  REQUIRE_NOTHROW(json::parse(r.out));

  write_text_file(dir / "s/labels/img_000002.txt", "0 0.5 0.5 0 0.1\n");
  REQUIRE(invoke({"stats", out}).code == 3);
}

TEST_CASE("mix through the cli", "[cli]") {
  TempDir dir;
  const std::string config = demo(dir);
  const auto syn = (dir / "syn").string(), real = (dir / "real").string(), mixed = (dir / "mixed").string();
  REQUIRE(invoke({"synth", "--config", config, "--count", "18", "--out", syn}).code == 0);
  const Result ex = invoke({"export-real", "--config", config, "--out", real});
  INFO(ex.err);
  REQUIRE(ex.code == 0);
  const Result mx = invoke({"mix", "--config", config, "--real-fraction", "0.1", "--out", mixed});
  INFO(mx.err);
  // paths.synthetic and paths.real are not set in the demo config
  REQUIRE(mx.code == 2);

  auto doc = json::parse(read_text(config));
  doc["paths"]["synthetic"] = syn;
  doc["paths"]["real"] = real;
  write_text_file(dir / "mix.json", doc.dump());
  const Result ok = invoke({"mix", "--config", (dir / "mix.json").string(), "--real-fraction", "0.1", "--out", mixed});
  INFO(ok.err);
  REQUIRE(ok.code == 0);
  const auto m = json::parse(read_text(dir / "mixed/manifest.json"));
  REQUIRE(m["entries"].size() == 20);

  const Result too_much =
      invoke({"mix", "--config", (dir / "mix.json").string(), "--real-fraction", "0.9", "--out", (dir / "m2").string()});
  REQUIRE(too_much.code == 3);
  REQUIRE(error_line(too_much)["kind"] == "InsufficientReal");
}

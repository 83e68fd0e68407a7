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

#include <json.hpp>

#include "support.hpp"
#include "synthpaste/error.hpp"
#include "synthpaste/stream.hpp"

using namespace synthpaste;
using namespace synthpaste::test;

namespace {

GeneratorSpec small_spec(std::uint64_t seed) {
  Rng rng(99);
  GeneratorSpec spec;
  spec.pool = std::make_shared<PatchPool>(random_pool(rng, 4, 8, 24));
  spec.config = CompositionConfig::preset("detect-416");
  spec.config.canvas = {96, 80};
  spec.config.count = UniformCount{0, 6};
  spec.master_seed = seed;
  return spec;
}

bool same(const SyntheticSample& a, const SyntheticSample& b) {
  return a.image == b.image && a.boxes == b.boxes && a.multilabel == b.multilabel && a.plan == b.plan;
}

}  // namespace

TEST_CASE("sample_at is a pure function of seed and index", "[stream]") {
  const GeneratorSpec spec = small_spec(11);
  const SyntheticSample first = sample_at(spec, 37);
  for (int i = 0; i < 40; ++i) sample_at(spec, static_cast<std::uint64_t>(i));
  REQUIRE(same(sample_at(spec, 37), first));
  REQUIRE(same(sample_at(small_spec(11), 37), first));
}

TEST_CASE("different master seeds give different samples", "[stream]") {
  const GeneratorSpec a = small_spec(1), b = small_spec(2);
  int differing = 0;
  for (std::uint64_t i = 0; i < 100; ++i) differing += same(sample_at(a, i), sample_at(b, i)) ? 0 : 1;
  REQUIRE(differing >= 95);
}

TEST_CASE("batch does not depend on parallelism", "[stream]") {
  const GeneratorSpec spec = small_spec(5);
  REQUIRE(batch(spec, 0, 0, 4).empty());
  const auto serial = batch(spec, 0, 8, 1);
  const auto parallel = batch(spec, 0, 8, 4);
  REQUIRE(serial.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) REQUIRE(same(serial[i], parallel[i]));
  // a later window equals the same indices of a larger one
  const auto window = batch(spec, 3, 4, 3);
  for (std::size_t i = 0; i < 4; ++i) REQUIRE(same(window[i], serial[3 + i]));
}

TEST_CASE("sample_at without a pool", "[stream]") {
  GeneratorSpec spec;
  REQUIRE_THROWS_AS(sample_at(spec, 0), EmptyPool);
}

TEST_CASE("generate_dataset is byte-identical across workers", "[stream]") {
  const GeneratorSpec spec = small_spec(8);
  TempDir a, b, c;
  DatasetLayout la, lb, lc;
  la.root = a.path();
  lb.root = b.path();
  lc.root = c.path();
  StageTimings t;
  const OutputManifest ma = generate_dataset(spec, 150, la, 1, &t);
  const OutputManifest mb = generate_dataset(spec, 150, lb, 3);
  REQUIRE(ma == mb);
  REQUIRE(ma.entries.size() == 150);
  REQUIRE(snapshot_tree(a.path()) == snapshot_tree(b.path()));
  REQUIRE(t.plan > 0);
  REQUIRE(t.encode > 0);

  // generated images equal the in-memory stream
  const SyntheticSample s = sample_at(spec, 140);
  REQUIRE(read_image(a / "images/img_000141.png") == s.image);
  REQUIRE(read_text(a / "labels/img_000141.txt") == emit_yolo(s, la.class_order));

  // empty output
  const OutputManifest empty = generate_dataset(spec, 0, lc, 2);
  REQUIRE(empty.entries.empty());
  REQUIRE(snapshot_tree(c.path()).size() == 1);
}

TEST_CASE("run_bench reports", "[stream]") {
  const GeneratorSpec spec = small_spec(3);
  const BenchResult r = run_bench(spec, 10, 2);
  REQUIRE(r.samples == 10);
  REQUIRE(r.workers == 2);
  REQUIRE(r.serial_seconds > 0);
  REQUIRE(r.parallel_efficiency > 0);
  const auto j = nlohmann::json::parse(bench_to_json(r));
  REQUIRE(j["samples"] == 10);
  REQUIRE(j.contains("stage_seconds_per_sample"));
}

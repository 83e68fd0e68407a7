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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "synthpaste/compositor.hpp"
#include "synthpaste/emitters.hpp"
#include "synthpaste/patch.hpp"

namespace synthpaste {

/// Index-addressable, unbounded sequence of synthetic samples. Sample i is
/// rendered from the substream (master_seed, i) and nothing else.
struct GeneratorSpec {
  CompositionConfig config;
  std::shared_ptr<const PatchPool> pool;
  std::uint64_t master_seed = 0;
};

SyntheticSample sample_at(const GeneratorSpec& spec, std::uint64_t index,
                          StageTimings* timings = nullptr);

/// Element k equals sample_at(spec, start + k) for any parallelism.
std::vector<SyntheticSample> batch(const GeneratorSpec& spec, std::uint64_t start, std::size_t n,
                                   int parallelism);

/// Generates samples [0, count) and writes them in bounded chunks.
OutputManifest generate_dataset(const GeneratorSpec& spec, std::size_t count,
                                const DatasetLayout& layout, int workers,
                                StageTimings* timings = nullptr);

struct BenchResult {
  std::size_t samples = 0;
  int workers = 1;
  int hardware_threads = 0;
  double serial_seconds = 0;
  double parallel_seconds = 0;
  double serial_samples_per_second = 0;
  double samples_per_second = 0;
  /// speedup / workers, where speedup = serial_seconds / parallel_seconds.
  double parallel_efficiency = 0;
  double mean_placements = 0;
  StageTimings stages;  // per-sample means from the serial run
  std::string simd;
};

/// Plans, renders and PNG-encodes `count` samples once serially and once on
/// `workers` threads.
BenchResult run_bench(const GeneratorSpec& spec, std::size_t count, int workers);
std::string bench_to_json(const BenchResult& result);

}  // namespace synthpaste

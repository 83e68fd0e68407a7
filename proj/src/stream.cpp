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

#include "synthpaste/stream.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "synthpaste/error.hpp"
#include "synthpaste/image.hpp"
#include "synthpaste/parallel.hpp"
#include "synthpaste/simd/kernels.hpp"

namespace synthpaste {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

constexpr std::size_t kChunk = 128;

}  // namespace

SyntheticSample sample_at(const GeneratorSpec& spec, std::uint64_t index, StageTimings* timings) {
  if (!spec.pool) throw EmptyPool("generator has no patch pool");
  const auto t0 = Clock::now();
  Rng rng = Rng::substream(spec.master_seed, index);
  CompositionPlan plan = sample_plan(spec.config, *spec.pool, rng);
  if (timings) timings->plan += seconds(Clock::now() - t0);
  return render(plan, *spec.pool, timings);
}

std::vector<SyntheticSample> batch(const GeneratorSpec& spec, std::uint64_t start, std::size_t n,
                                   int parallelism) {
  std::vector<SyntheticSample> out(n);
  parallel_for(n, parallelism, [&](std::size_t k) { out[k] = sample_at(spec, start + k); });
  return out;
}

OutputManifest generate_dataset(const GeneratorSpec& spec, std::size_t count,
                                const DatasetLayout& layout, int workers, StageTimings* timings) {
  DatasetWriter writer(layout);
  for (std::size_t start = 0; start < count; start += kChunk) {
    const std::size_t n = std::min(kChunk, count - start);
    std::vector<SyntheticSample> samples(n);
    std::vector<StageTimings> per(n);
    parallel_for(n, workers, [&](std::size_t k) {
      samples[k] = sample_at(spec, start + k, timings ? &per[k] : nullptr);
    });
    if (timings) {
      for (const StageTimings& t : per) {
        timings->plan += t.plan;
        timings->augment += t.augment;
        timings->paste += t.paste;
      }
    }
    writer.add(std::span<const SyntheticSample>(samples), workers, timings);
  }
  return writer.finish();
}

namespace {

// Full per-sample pipeline: plan, render and encode; returns placements.
std::size_t produce(const GeneratorSpec& spec, std::uint64_t index, StageTimings* t) {
  SyntheticSample s = sample_at(spec, index, t);
  const auto t0 = Clock::now();
  const auto png = encode_png(s.image);
  if (t) t->encode += seconds(Clock::now() - t0);
  if (png.empty()) throw IoError("PNG encoder produced no output");
  return s.plan.placements.size();
}

}  // namespace

BenchResult run_bench(const GeneratorSpec& spec, std::size_t count, int workers) {
  BenchResult r;
  r.samples = count;
  r.workers = std::max(1, workers);
  r.hardware_threads = static_cast<int>(std::thread::hardware_concurrency());
  r.simd = std::string(simd::active_kernels().name);

  std::size_t placements = 0;
  StageTimings stages;
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < count; ++i) placements += produce(spec, i, &stages);
  r.serial_seconds = seconds(Clock::now() - t0);

  t0 = Clock::now();
  parallel_for(count, r.workers, [&](std::size_t i) { produce(spec, i, nullptr); });
  r.parallel_seconds = seconds(Clock::now() - t0);

  if (count > 0) {
    const double n = static_cast<double>(count);
    r.mean_placements = static_cast<double>(placements) / n;
    r.stages = {stages.plan / n, stages.augment / n, stages.paste / n, stages.encode / n};
  }
  if (r.serial_seconds > 0) r.serial_samples_per_second = count / r.serial_seconds;
  if (r.parallel_seconds > 0) {
    r.samples_per_second = count / r.parallel_seconds;
    r.parallel_efficiency = (r.serial_seconds / r.parallel_seconds) / r.workers;
  }
  return r;
}

std::string bench_to_json(const BenchResult& r) {
  nlohmann::ordered_json j;
  j["samples"] = r.samples;
  j["workers"] = r.workers;
  j["hardware_threads"] = r.hardware_threads;
  j["simd"] = r.simd;
  j["mean_placements"] = r.mean_placements;
  j["serial_seconds"] = r.serial_seconds;
  j["parallel_seconds"] = r.parallel_seconds;
  j["serial_samples_per_second"] = r.serial_samples_per_second;
  j["samples_per_second"] = r.samples_per_second;
  j["parallel_efficiency"] = r.parallel_efficiency;
  j["stage_seconds_per_sample"] = {{"plan", r.stages.plan},
                                   {"augment", r.stages.augment},
                                   {"paste", r.stages.paste},
                                   {"encode", r.stages.encode}};
  return j.dump(2) + "\n";
}

}  // namespace synthpaste

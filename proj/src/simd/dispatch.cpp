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

#include <cstdlib>
#include <string_view>

#include "synthpaste/simd/kernels.hpp"

namespace synthpaste::simd {

#if !defined(SYNTHPASTE_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#if !defined(SYNTHPASTE_HAVE_NEON)
const KernelTable* neon_kernels() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(SYNTHPASTE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const KernelTable& select() {
  const auto available = available_kernels();
  if (const char* forced = std::getenv("SYNTHPASTE_SIMD")) {
    for (const KernelTable* k : available) {
      if (k->name == std::string_view(forced)) return *k;
    }
  }
  return *available.back();
}

}  // namespace

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* k = avx2_kernels(); k && cpu_has_avx2()) out.push_back(k);
  // NEON is mandatory on AArch64, so compiled-in means supported.
  if (const KernelTable* k = neon_kernels()) out.push_back(k);
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace synthpaste::simd

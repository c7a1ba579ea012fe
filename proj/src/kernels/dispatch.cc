// Copyright 2026 The hegel Authors.
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
#include <cstring>

#include "hegel/errors.h"
#include "hegel/kernels.h"

namespace hegel::kernels {

#if defined(HEGEL_HAVE_AVX2)
template <typename T>
const KernelTable<T>* avx2_table_unchecked();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(HEGEL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa choose_isa() {
  const char* env = std::getenv("HEGEL_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
  if (env && std::strcmp(env, "avx2") == 0 && !cpu_has_avx2()) {
    throw ConfigError("HEGEL_SIMD=avx2 requested but the CPU lacks AVX2/FMA");
  }
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

Isa active_isa() {
  static const Isa isa = choose_isa();
  return isa;
}

}  // namespace

template <typename T>
const KernelTable<T>* avx2_table() {
#if defined(HEGEL_HAVE_AVX2)
  if (cpu_has_avx2()) return avx2_table_unchecked<T>();
#endif
  return nullptr;
}

template <typename T>
const KernelTable<T>& active() {
  static const KernelTable<T>& table =
      active_isa() == Isa::kAvx2 ? *avx2_table<T>() : scalar_table<T>();
  return table;
}

const char* active_isa_name() {
  return active_isa() == Isa::kAvx2 ? "avx2" : "scalar";
}

template const KernelTable<float>* avx2_table<float>();
template const KernelTable<double>* avx2_table<double>();
template const KernelTable<float>& active<float>();
template const KernelTable<double>& active<double>();

}  // namespace hegel::kernels

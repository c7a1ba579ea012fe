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

#ifndef HEGEL_KERNELS_H_
#define HEGEL_KERNELS_H_

// Dense inner loops used by the tensor layer. Every kernel exists as a scalar
// reference and, on x86-64, as an AVX2+FMA variant; one table is chosen at
// process start from CPUID, overridable with HEGEL_SIMD=scalar|avx2.
//
// All gemm kernels accumulate into C. Matrices are row-major and dense.

#include <cstddef>

namespace hegel::kernels {

enum class Isa { kScalar, kAvx2 };

template <typename T>
struct KernelTable {
  Isa isa;
  const char* name;

  T (*dot)(const T* a, const T* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(T alpha, const T* x, T* y, std::size_t n);
  // y += x
  void (*add)(const T* x, T* y, std::size_t n);
  // x *= s
  void (*scale)(T* x, T s, std::size_t n);
  // C[n,m] += A[n,k] * B[k,m]
  void (*gemm_nn)(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
                  std::size_t m);
  // C[n,m] += A[n,k] * B[m,k]^T
  void (*gemm_nt)(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
                  std::size_t m);
  // C[k,m] += A[n,k]^T * B[n,m]
  void (*gemm_tn)(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
                  std::size_t m);
  // y = x > 0 ? x : slope * x
  void (*leaky_relu)(const T* x, T* y, std::size_t n, T slope);
  // dx += dy * (x > 0 ? 1 : slope)
  void (*leaky_relu_backward)(const T* x, const T* dy, T* dx, std::size_t n,
                              T slope);
};

template <typename T>
const KernelTable<T>& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
template <typename T>
const KernelTable<T>* avx2_table();

// The table selected for this process.
template <typename T>
const KernelTable<T>& active();

const char* active_isa_name();

}  // namespace hegel::kernels

#endif  // HEGEL_KERNELS_H_

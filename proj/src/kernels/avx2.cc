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

// Compiled with -mavx2 -mfma. Nothing in this file may run before dispatch
// has confirmed CPU support.

#include <immintrin.h>

#include "hegel/kernels.h"

namespace hegel::kernels {
namespace {

template <typename T>
struct Vec;

template <>
struct Vec<float> {
  using Reg = __m256;
  static constexpr std::size_t kWidth = 8;
  static Reg zero() { return _mm256_setzero_ps(); }
  static Reg load(const float* p) { return _mm256_loadu_ps(p); }
  static void store(float* p, Reg v) { _mm256_storeu_ps(p, v); }
  static Reg set1(float v) { return _mm256_set1_ps(v); }
  static Reg fmadd(Reg a, Reg b, Reg c) { return _mm256_fmadd_ps(a, b, c); }
  static Reg add(Reg a, Reg b) { return _mm256_add_ps(a, b); }
  static Reg mul(Reg a, Reg b) { return _mm256_mul_ps(a, b); }
  static Reg max(Reg a, Reg b) { return _mm256_max_ps(a, b); }
  static Reg min(Reg a, Reg b) { return _mm256_min_ps(a, b); }
  static Reg gt_zero_blend(Reg x, Reg if_true, Reg if_false) {
    Reg mask = _mm256_cmp_ps(x, zero(), _CMP_GT_OQ);
    return _mm256_blendv_ps(if_false, if_true, mask);
  }
  static float hsum(Reg v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    __m128 shuf = _mm_movehdup_ps(lo);
    __m128 sums = _mm_add_ps(lo, shuf);
    shuf = _mm_movehl_ps(shuf, sums);
    sums = _mm_add_ss(sums, shuf);
    return _mm_cvtss_f32(sums);
  }
};

template <>
struct Vec<double> {
  using Reg = __m256d;
  static constexpr std::size_t kWidth = 4;
  static Reg zero() { return _mm256_setzero_pd(); }
  static Reg load(const double* p) { return _mm256_loadu_pd(p); }
  static void store(double* p, Reg v) { _mm256_storeu_pd(p, v); }
  static Reg set1(double v) { return _mm256_set1_pd(v); }
  static Reg fmadd(Reg a, Reg b, Reg c) { return _mm256_fmadd_pd(a, b, c); }
  static Reg add(Reg a, Reg b) { return _mm256_add_pd(a, b); }
  static Reg mul(Reg a, Reg b) { return _mm256_mul_pd(a, b); }
  static Reg max(Reg a, Reg b) { return _mm256_max_pd(a, b); }
  static Reg min(Reg a, Reg b) { return _mm256_min_pd(a, b); }
  static Reg gt_zero_blend(Reg x, Reg if_true, Reg if_false) {
    Reg mask = _mm256_cmp_pd(x, zero(), _CMP_GT_OQ);
    return _mm256_blendv_pd(if_false, if_true, mask);
  }
  static double hsum(Reg v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d high64 = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, high64));
  }
};

template <typename T>
T dot(const T* a, const T* b, std::size_t n) {
  using V = Vec<T>;
  constexpr std::size_t W = V::kWidth;
  auto acc0 = V::zero(), acc1 = V::zero();
  std::size_t i = 0;
  for (; i + 2 * W <= n; i += 2 * W) {
    acc0 = V::fmadd(V::load(a + i), V::load(b + i), acc0);
    acc1 = V::fmadd(V::load(a + i + W), V::load(b + i + W), acc1);
  }
  for (; i + W <= n; i += W) acc0 = V::fmadd(V::load(a + i), V::load(b + i), acc0);
  T s = V::hsum(V::add(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
void axpy(T alpha, const T* x, T* y, std::size_t n) {
  using V = Vec<T>;
  constexpr std::size_t W = V::kWidth;
  auto va = V::set1(alpha);
  std::size_t i = 0;
  for (; i + W <= n; i += W) V::store(y + i, V::fmadd(va, V::load(x + i), V::load(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void add(const T* x, T* y, std::size_t n) {
  using V = Vec<T>;
  constexpr std::size_t W = V::kWidth;
  std::size_t i = 0;
  for (; i + W <= n; i += W) V::store(y + i, V::add(V::load(x + i), V::load(y + i)));
  for (; i < n; ++i) y[i] += x[i];
}

template <typename T>
void scale(T* x, T s, std::size_t n) {
  using V = Vec<T>;
  constexpr std::size_t W = V::kWidth;
  auto vs = V::set1(s);
  std::size_t i = 0;
  for (; i + W <= n; i += W) V::store(x + i, V::mul(V::load(x + i), vs));
  for (; i < n; ++i) x[i] *= s;
}

// C[rows, m] += Op(A)[rows, depth] * B[depth, m], where Op(A)(r, q) is
// a[r * row_stride + q * depth_stride]. Covers both A*B and A^T*B. The
// column strip of B stays hot across all row blocks.
template <typename T>
void gemm_strided(const T* a, std::size_t row_stride, std::size_t depth_stride,
                  const T* b, T* c, std::size_t rows, std::size_t depth,
                  std::size_t m) {
  using V = Vec<T>;
  using Reg = typename V::Reg;
  constexpr std::size_t W = V::kWidth;
  constexpr std::size_t kRows = 4;
  std::size_t j = 0;
  for (; j + 2 * W <= m; j += 2 * W) {
    std::size_t r = 0;
    for (; r + kRows <= rows; r += kRows) {
      Reg acc[kRows][2];
      for (std::size_t u = 0; u < kRows; ++u) {
        acc[u][0] = V::load(c + (r + u) * m + j);
        acc[u][1] = V::load(c + (r + u) * m + j + W);
      }
      for (std::size_t q = 0; q < depth; ++q) {
        const T* brow = b + q * m + j;
        Reg b0 = V::load(brow);
        Reg b1 = V::load(brow + W);
        for (std::size_t u = 0; u < kRows; ++u) {
          Reg av = V::set1(a[(r + u) * row_stride + q * depth_stride]);
          acc[u][0] = V::fmadd(av, b0, acc[u][0]);
          acc[u][1] = V::fmadd(av, b1, acc[u][1]);
        }
      }
      for (std::size_t u = 0; u < kRows; ++u) {
        V::store(c + (r + u) * m + j, acc[u][0]);
        V::store(c + (r + u) * m + j + W, acc[u][1]);
      }
    }
    for (; r < rows; ++r) {
      Reg acc0 = V::load(c + r * m + j);
      Reg acc1 = V::load(c + r * m + j + W);
      for (std::size_t q = 0; q < depth; ++q) {
        Reg av = V::set1(a[r * row_stride + q * depth_stride]);
        acc0 = V::fmadd(av, V::load(b + q * m + j), acc0);
        acc1 = V::fmadd(av, V::load(b + q * m + j + W), acc1);
      }
      V::store(c + r * m + j, acc0);
      V::store(c + r * m + j + W, acc1);
    }
  }
  for (; j + W <= m; j += W) {
    for (std::size_t r = 0; r < rows; ++r) {
      Reg acc = V::load(c + r * m + j);
      for (std::size_t q = 0; q < depth; ++q) {
        acc = V::fmadd(V::set1(a[r * row_stride + q * depth_stride]),
                       V::load(b + q * m + j), acc);
      }
      V::store(c + r * m + j, acc);
    }
  }
  for (; j < m; ++j) {
    for (std::size_t r = 0; r < rows; ++r) {
      T s = c[r * m + j];
      for (std::size_t q = 0; q < depth; ++q) {
        s += a[r * row_stride + q * depth_stride] * b[q * m + j];
      }
      c[r * m + j] = s;
    }
  }
}

template <typename T>
void gemm_nn(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
             std::size_t m) {
  gemm_strided(a, k, 1, b, c, n, k, m);
}

template <typename T>
void gemm_tn(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
             std::size_t m) {
  gemm_strided(a, 1, k, b, c, k, n, m);
}

template <typename T>
void gemm_nt(const T* a, const T* b, T* c, std::size_t n, std::size_t k,
             std::size_t m) {
  using V = Vec<T>;
  using Reg = typename V::Reg;
  constexpr std::size_t W = V::kWidth;
  for (std::size_t i = 0; i < n; ++i) {
    const T* arow = a + i * k;
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
      const T* b0 = b + j * k;
      const T* b1 = b0 + k;
      const T* b2 = b1 + k;
      const T* b3 = b2 + k;
      Reg s0 = V::zero(), s1 = V::zero(), s2 = V::zero(), s3 = V::zero();
      std::size_t p = 0;
      for (; p + W <= k; p += W) {
        Reg av = V::load(arow + p);
        s0 = V::fmadd(av, V::load(b0 + p), s0);
        s1 = V::fmadd(av, V::load(b1 + p), s1);
        s2 = V::fmadd(av, V::load(b2 + p), s2);
        s3 = V::fmadd(av, V::load(b3 + p), s3);
      }
      T t0 = V::hsum(s0), t1 = V::hsum(s1), t2 = V::hsum(s2), t3 = V::hsum(s3);
      for (; p < k; ++p) {
        t0 += arow[p] * b0[p];
        t1 += arow[p] * b1[p];
        t2 += arow[p] * b2[p];
        t3 += arow[p] * b3[p];
      }
      c[i * m + j] += t0;
      c[i * m + j + 1] += t1;
      c[i * m + j + 2] += t2;
      c[i * m + j + 3] += t3;
    }
    for (; j < m; ++j) c[i * m + j] += dot(arow, b + j * k, k);
  }
}

template <typename T>
void leaky_relu(const T* x, T* y, std::size_t n, T slope) {
  using V = Vec<T>;
  constexpr std::size_t W = V::kWidth;
  auto vs = V::set1(slope);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    auto v = V::load(x + i);
    V::store(y + i, V::gt_zero_blend(v, v, V::mul(v, vs)));
  }
  for (; i < n; ++i) y[i] = x[i] > 0 ? x[i] : slope * x[i];
}

template <typename T>
void leaky_relu_backward(const T* x, const T* dy, T* dx, std::size_t n,
                         T slope) {
  using V = Vec<T>;
  constexpr std::size_t W = V::kWidth;
  auto vs = V::set1(slope);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    auto g = V::load(dy + i);
    auto local = V::gt_zero_blend(V::load(x + i), g, V::mul(g, vs));
    V::store(dx + i, V::add(V::load(dx + i), local));
  }
  for (; i < n; ++i) dx[i] += x[i] > 0 ? dy[i] : slope * dy[i];
}

template <typename T>
constexpr KernelTable<T> kTable = {
    Isa::kAvx2,    "avx2",        &dot<T>,     &axpy<T>,
    &add<T>,       &scale<T>,     &gemm_nn<T>, &gemm_nt<T>,
    &gemm_tn<T>,   &leaky_relu<T>, &leaky_relu_backward<T>};

}  // namespace

template <typename T>
const KernelTable<T>* avx2_table_unchecked() {
  return &kTable<T>;
}

template const KernelTable<float>* avx2_table_unchecked<float>();
template const KernelTable<double>* avx2_table_unchecked<double>();

}  // namespace hegel::kernels

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

#include <algorithm>
#include <cmath>
#include <limits>

#include "hegel/autograd.h"
#include "hegel/kernels.h"

namespace hegel {
namespace {

template <typename T>
const kernels::KernelTable<T>& K() {
  return kernels::active<T>();
}

template <typename T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b,
                        const char* op) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(op) + ": shape mismatch " +
                     shape_string(a.rows(), a.cols()) + " vs " +
                     shape_string(b.rows(), b.cols()));
  }
}

template <typename T>
T stable_sigmoid(T x) {
  if (x >= 0) return T(1) / (T(1) + std::exp(-x));
  T e = std::exp(x);
  return e / (T(1) + e);
}

}  // namespace

template <typename T>
Var<T> matmul(Var<T> x, Var<T> w) {
  const Matrix<T>& X = x.value();
  const Matrix<T>& W = w.value();
  if (X.cols() != W.rows()) {
    throw ShapeError("matmul: " + shape_string(X.rows(), X.cols()) + " x " +
                     shape_string(W.rows(), W.cols()));
  }
  const std::size_t n = X.rows(), k = X.cols(), m = W.cols();
  Matrix<T> out(n, m);
  K<T>().gemm_nn(X.data(), W.data(), out.data(), n, k, m);
  const Var<T> inputs[] = {x, w};
  return x.tape()->record(std::move(out), inputs,
                          [x, w, n, k, m](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    if (tape.requires_grad(x.id())) {
      K<T>().gemm_nt(dy.data(), w.value().data(), tape.grad(x.id()).data(), n,
                     m, k);
    }
    if (tape.requires_grad(w.id())) {
      K<T>().gemm_tn(x.value().data(), dy.data(), tape.grad(w.id()).data(), n,
                     k, m);
    }
  });
}

template <typename T>
Var<T> add(Var<T> a, Var<T> b) {
  require_same_shape(a.value(), b.value(), "add");
  Matrix<T> out = a.value();
  K<T>().add(b.value().data(), out.data(), out.size());
  const Var<T> inputs[] = {a, b};
  return a.tape()->record(std::move(out), inputs,
                          [a, b](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    for (const Var<T>& in : {a, b}) {
      if (tape.requires_grad(in.id())) {
        K<T>().add(dy.data(), tape.grad(in.id()).data(), dy.size());
      }
    }
  });
}

template <typename T>
Var<T> add_row(Var<T> x, Var<T> bias) {
  const Matrix<T>& X = x.value();
  const Matrix<T>& B = bias.value();
  if (B.rows() != 1 || B.cols() != X.cols()) {
    throw ShapeError("add_row: bias " + shape_string(B.rows(), B.cols()) +
                     " for input " + shape_string(X.rows(), X.cols()));
  }
  Matrix<T> out = X;
  for (std::size_t r = 0; r < X.rows(); ++r) {
    K<T>().add(B.data(), out.row(r).data(), X.cols());
  }
  const Var<T> inputs[] = {x, bias};
  return x.tape()->record(std::move(out), inputs,
                          [x, bias](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    if (tape.requires_grad(x.id())) {
      K<T>().add(dy.data(), tape.grad(x.id()).data(), dy.size());
    }
    if (tape.requires_grad(bias.id())) {
      Matrix<T>& db = tape.grad(bias.id());
      for (std::size_t r = 0; r < dy.rows(); ++r) {
        K<T>().add(dy.row(r).data(), db.data(), dy.cols());
      }
    }
  });
}

template <typename T>
Var<T> mul(Var<T> a, Var<T> b) {
  require_same_shape(a.value(), b.value(), "mul");
  Matrix<T> out = a.value();
  const T* bv = b.value().data();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= bv[i];
  const Var<T> inputs[] = {a, b};
  return a.tape()->record(std::move(out), inputs,
                          [a, b](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    if (tape.requires_grad(a.id())) {
      Matrix<T>& da = tape.grad(a.id());
      const Matrix<T>& bv = b.value();
      for (std::size_t i = 0; i < dy.size(); ++i) da.data()[i] += dy.data()[i] * bv.data()[i];
    }
    if (tape.requires_grad(b.id())) {
      Matrix<T>& db = tape.grad(b.id());
      const Matrix<T>& av = a.value();
      for (std::size_t i = 0; i < dy.size(); ++i) db.data()[i] += dy.data()[i] * av.data()[i];
    }
  });
}

template <typename T>
Var<T> scale(Var<T> x, T factor) {
  Matrix<T> out = x.value();
  K<T>().scale(out.data(), factor, out.size());
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x, factor](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    K<T>().axpy(factor, dy.data(), tape.grad(x.id()).data(), dy.size());
  });
}

template <typename T>
Var<T> slice_rows(Var<T> x, std::size_t begin, std::size_t end) {
  const Matrix<T>& X = x.value();
  if (begin > end || end > X.rows()) {
    throw ShapeError("slice_rows: [" + std::to_string(begin) + ", " +
                     std::to_string(end) + ") outside " +
                     shape_string(X.rows(), X.cols()));
  }
  const std::size_t d = X.cols();
  Matrix<T> out(end - begin, d,
                std::vector<T>(X.data() + begin * d, X.data() + end * d));
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x, begin, d](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    K<T>().add(dy.data(), tape.grad(x.id()).data() + begin * d, dy.size());
  });
}

template <typename T>
Var<T> leaky_relu(Var<T> x, T slope) {
  const Matrix<T>& X = x.value();
  Matrix<T> out(X.rows(), X.cols());
  K<T>().leaky_relu(X.data(), out.data(), X.size(), slope);
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x, slope](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    K<T>().leaky_relu_backward(x.value().data(), dy.data(),
                               tape.grad(x.id()).data(), dy.size(), slope);
  });
}

template <typename T>
Var<T> sigmoid(Var<T> x) {
  Matrix<T> out = x.value();
  for (T& v : out.storage()) v = stable_sigmoid(v);
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    const Matrix<T>& y = tape.value(self);
    Matrix<T>& dx = tape.grad(x.id());
    for (std::size_t i = 0; i < dy.size(); ++i) {
      dx.data()[i] += dy.data()[i] * y.data()[i] * (T(1) - y.data()[i]);
    }
  });
}

template <typename T>
Var<T> softmax_rows(Var<T> x) {
  Matrix<T> out = x.value();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    T mx = *std::max_element(row.begin(), row.end());
    T total = 0;
    for (T& v : row) total += (v = std::exp(v - mx));
    for (T& v : row) v /= total;
  }
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    const Matrix<T>& y = tape.value(self);
    Matrix<T>& dx = tape.grad(x.id());
    for (std::size_t r = 0; r < y.rows(); ++r) {
      T inner = K<T>().dot(dy.row(r).data(), y.row(r).data(), y.cols());
      for (std::size_t c = 0; c < y.cols(); ++c) {
        dx(r, c) += y(r, c) * (dy(r, c) - inner);
      }
    }
  });
}

template <typename T>
Var<T> layer_norm(Var<T> x, Var<T> gamma, Var<T> beta, T eps) {
  const Matrix<T>& X = x.value();
  const std::size_t n = X.rows(), d = X.cols();
  if (gamma.value().rows() != 1 || gamma.value().cols() != d ||
      !gamma.value().same_shape(beta.value())) {
    throw ShapeError("layer_norm: affine parameters must be 1x" +
                     std::to_string(d));
  }
  // xhat and per-row 1/sigma are kept for the backward pass.
  Matrix<T> xhat(n, d);
  std::vector<T> inv_std(n);
  Matrix<T> out(n, d);
  const T* g = gamma.value().data();
  const T* b = beta.value().data();
  for (std::size_t r = 0; r < n; ++r) {
    auto row = X.row(r);
    T mu = 0;
    for (T v : row) mu += v;
    mu /= static_cast<T>(d);
    T var = 0;
    for (T v : row) var += (v - mu) * (v - mu);
    var /= static_cast<T>(d);
    inv_std[r] = T(1) / std::sqrt(var + eps);
    for (std::size_t c = 0; c < d; ++c) {
      xhat(r, c) = (row[c] - mu) * inv_std[r];
      out(r, c) = xhat(r, c) * g[c] + b[c];
    }
  }
  const Var<T> inputs[] = {x, gamma, beta};
  return x.tape()->record(
      std::move(out), inputs,
      [x, gamma, beta, xhat = std::move(xhat), inv_std = std::move(inv_std)](
          Tape<T>& tape, std::size_t self) {
        const Matrix<T>& dy = tape.grad(self);
        const std::size_t n = dy.rows(), d = dy.cols();
        if (tape.requires_grad(gamma.id())) {
          Matrix<T>& dg = tape.grad(gamma.id());
          for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < d; ++c) dg.data()[c] += dy(r, c) * xhat(r, c);
          }
        }
        if (tape.requires_grad(beta.id())) {
          Matrix<T>& db = tape.grad(beta.id());
          for (std::size_t r = 0; r < n; ++r) {
            K<T>().add(dy.row(r).data(), db.data(), d);
          }
        }
        if (tape.requires_grad(x.id())) {
          Matrix<T>& dx = tape.grad(x.id());
          const T* g = gamma.value().data();
          std::vector<T> dxhat(d);
          for (std::size_t r = 0; r < n; ++r) {
            T mean_d = 0, mean_dx = 0;
            for (std::size_t c = 0; c < d; ++c) {
              dxhat[c] = dy(r, c) * g[c];
              mean_d += dxhat[c];
              mean_dx += dxhat[c] * xhat(r, c);
            }
            mean_d /= static_cast<T>(d);
            mean_dx /= static_cast<T>(d);
            for (std::size_t c = 0; c < d; ++c) {
              dx(r, c) += inv_std[r] * (dxhat[c] - mean_d - xhat(r, c) * mean_dx);
            }
          }
        }
      });
}

template <typename T>
Var<T> dropout(Var<T> x, double rate, Rng* rng) {
  if (rate <= 0.0 || rng == nullptr) return x;
  if (rate >= 1.0) throw ConfigError("dropout rate must be < 1");
  const T keep_scale = static_cast<T>(1.0 / (1.0 - rate));
  Matrix<T> mask(x.rows(), x.cols());
  for (T& m : mask.storage()) m = rng->uniform() >= rate ? keep_scale : T(0);
  Matrix<T> out = x.value();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= mask.data()[i];
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x, mask = std::move(mask)](Tape<T>& tape, std::size_t self) {
    const Matrix<T>& dy = tape.grad(self);
    Matrix<T>& dx = tape.grad(x.id());
    for (std::size_t i = 0; i < dy.size(); ++i) dx.data()[i] += dy.data()[i] * mask.data()[i];
  });
}

template <typename T>
Var<T> concat_cols(std::span<const Var<T>> parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no inputs");
  const std::size_t n = parts[0].rows();
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p.rows() != n) throw ShapeError("concat_cols: row count mismatch");
    total += p.cols();
  }
  Matrix<T> out(n, total);
  std::size_t offset = 0;
  std::vector<std::size_t> offsets;
  for (const auto& p : parts) {
    offsets.push_back(offset);
    const Matrix<T>& v = p.value();
    for (std::size_t r = 0; r < n; ++r) {
      std::copy(v.row(r).begin(), v.row(r).end(), out.row(r).begin() + offset);
    }
    offset += v.cols();
  }
  std::vector<Var<T>> saved(parts.begin(), parts.end());
  return parts[0].tape()->record(
      std::move(out), parts,
      [saved = std::move(saved), offsets = std::move(offsets)](Tape<T>& tape,
                                                               std::size_t self) {
        const Matrix<T>& dy = tape.grad(self);
        for (std::size_t i = 0; i < saved.size(); ++i) {
          if (!tape.requires_grad(saved[i].id())) continue;
          Matrix<T>& dx = tape.grad(saved[i].id());
          for (std::size_t r = 0; r < dx.rows(); ++r) {
            K<T>().add(dy.row(r).data() + offsets[i], dx.row(r).data(), dx.cols());
          }
        }
      });
}

template <typename T>
Var<T> sum(Var<T> x) {
  T total = 0;
  for (T v : x.value().storage()) total += v;
  Matrix<T> out(1, 1, total);
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x](Tape<T>& tape, std::size_t self) {
    const T g = tape.grad(self)(0, 0);
    for (T& v : tape.grad(x.id()).storage()) v += g;
  });
}

template <typename T>
Var<T> mean(Var<T> x) {
  if (x.value().empty()) throw ShapeError("mean of an empty matrix");
  const T inv = T(1) / static_cast<T>(x.value().size());
  T total = 0;
  for (T v : x.value().storage()) total += v;
  Matrix<T> out(1, 1, total * inv);
  const Var<T> inputs[] = {x};
  return x.tape()->record(std::move(out), inputs,
                          [x, inv](Tape<T>& tape, std::size_t self) {
    const T g = tape.grad(self)(0, 0) * inv;
    for (T& v : tape.grad(x.id()).storage()) v += g;
  });
}

template <typename T>
Var<T> incidence_attention(Var<T> values, Var<T> source_score,
                           const Var<T>* target_score, const Adjacency& adj,
                           std::vector<T>* weights) {
  const Matrix<T>& V = values.value();
  const Matrix<T>& S = source_score.value();
  const std::size_t targets = adj.targets();
  const std::size_t d = V.cols();
  if (S.rows() != V.rows() || S.cols() != 1) {
    throw ShapeError("incidence_attention: source scores must be " +
                     shape_string(V.rows(), 1));
  }
  if (target_score &&
      (target_score->rows() != targets || target_score->cols() != 1)) {
    throw ShapeError("incidence_attention: target scores must be " +
                     shape_string(targets, 1));
  }
  std::vector<T> alpha(adj.indices.size());
  Matrix<T> out(targets, d);
  for (std::size_t t = 0; t < targets; ++t) {
    auto sources = adj.sources(t);
    if (sources.empty()) {
      throw ShapeError("incidence_attention: target " + std::to_string(t) +
                       " has no sources");
    }
    const T bias = target_score ? target_score->value()(t, 0) : T(0);
    T* a = alpha.data() + adj.offsets[t];
    T mx = -std::numeric_limits<T>::infinity();
    for (std::size_t q = 0; q < sources.size(); ++q) {
      if (sources[q] >= V.rows()) {
        throw ShapeError("incidence_attention: source index out of range");
      }
      a[q] = S(sources[q], 0) + bias;
      mx = std::max(mx, a[q]);
    }
    T total = 0;
    for (std::size_t q = 0; q < sources.size(); ++q) total += (a[q] = std::exp(a[q] - mx));
    for (std::size_t q = 0; q < sources.size(); ++q) {
      a[q] /= total;
      K<T>().axpy(a[q], V.row(sources[q]).data(), out.row(t).data(), d);
    }
  }
  if (weights) *weights = alpha;

  std::vector<Var<T>> inputs = {values, source_score};
  if (target_score) inputs.push_back(*target_score);
  const bool has_target = target_score != nullptr;
  const Var<T> tgt = has_target ? *target_score : Var<T>();
  return values.tape()->record(
      std::move(out), inputs,
      [values, source_score, tgt, has_target, &adj, alpha = std::move(alpha)](
          Tape<T>& tape, std::size_t self) {
        const Matrix<T>& dy = tape.grad(self);
        const Matrix<T>& V = values.value();
        const std::size_t d = V.cols();
        const bool need_v = tape.requires_grad(values.id());
        const bool need_s = tape.requires_grad(source_score.id());
        const bool need_t = has_target && tape.requires_grad(tgt.id());
        Matrix<T>* dv = need_v ? &tape.grad(values.id()) : nullptr;
        Matrix<T>* ds = need_s ? &tape.grad(source_score.id()) : nullptr;
        Matrix<T>* dt = need_t ? &tape.grad(tgt.id()) : nullptr;
        std::vector<T> dalpha;
        for (std::size_t t = 0; t < adj.targets(); ++t) {
          auto sources = adj.sources(t);
          const T* a = alpha.data() + adj.offsets[t];
          const T* g = dy.row(t).data();
          if (need_v) {
            for (std::size_t q = 0; q < sources.size(); ++q) {
              K<T>().axpy(a[q], g, dv->row(sources[q]).data(), d);
            }
          }
          if (!need_s && !need_t) continue;
          dalpha.resize(sources.size());
          T weighted = 0;
          for (std::size_t q = 0; q < sources.size(); ++q) {
            dalpha[q] = K<T>().dot(g, V.row(sources[q]).data(), d);
            weighted += a[q] * dalpha[q];
          }
          T target_total = 0;
          for (std::size_t q = 0; q < sources.size(); ++q) {
            const T dscore = a[q] * (dalpha[q] - weighted);
            if (need_s) (*ds)(sources[q], 0) += dscore;
            target_total += dscore;
          }
          if (need_t) (*dt)(t, 0) += target_total;
        }
      });
}

template <typename T>
Var<T> bce(Var<T> probabilities, std::span<const T> labels) {
  const Matrix<T>& P = probabilities.value();
  if (P.size() != labels.size()) {
    throw ShapeError("bce: " + std::to_string(P.size()) + " predictions for " +
                     std::to_string(labels.size()) + " labels");
  }
  if (labels.empty()) throw ShapeError("bce: empty input");
  const T lo = static_cast<T>(kBceClamp);
  const T hi = T(1) - lo;
  std::vector<T> clamped(P.size());
  T total = 0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const T y = labels[i];
    const T p = std::clamp(P.data()[i], lo, hi);
    clamped[i] = p;
    total -= y * std::log(p) + (T(1) - y) * std::log(T(1) - p);
  }
  const T inv = T(1) / static_cast<T>(P.size());
  Matrix<T> out(1, 1, total * inv);
  std::vector<T> y(labels.begin(), labels.end());
  const Var<T> inputs[] = {probabilities};
  return probabilities.tape()->record(
      std::move(out), inputs,
      [probabilities, inv, clamped = std::move(clamped), y = std::move(y)](
          Tape<T>& tape, std::size_t self) {
        const T g = tape.grad(self)(0, 0) * inv;
        Matrix<T>& dp = tape.grad(probabilities.id());
        for (std::size_t i = 0; i < clamped.size(); ++i) {
          const T p = clamped[i];
          dp.data()[i] += g * (p - y[i]) / (p * (T(1) - p));
        }
      });
}

#define HEGEL_INSTANTIATE_OPS(T)                                              \
  template Var<T> matmul(Var<T>, Var<T>);                                     \
  template Var<T> add(Var<T>, Var<T>);                                        \
  template Var<T> add_row(Var<T>, Var<T>);                                    \
  template Var<T> mul(Var<T>, Var<T>);                                        \
  template Var<T> scale(Var<T>, T);                                           \
  template Var<T> slice_rows(Var<T>, std::size_t, std::size_t);              \
  template Var<T> leaky_relu(Var<T>, T);                                      \
  template Var<T> sigmoid(Var<T>);                                            \
  template Var<T> softmax_rows(Var<T>);                                       \
  template Var<T> layer_norm(Var<T>, Var<T>, Var<T>, T);                      \
  template Var<T> dropout(Var<T>, double, Rng*);                              \
  template Var<T> concat_cols(std::span<const Var<T>>);                       \
  template Var<T> sum(Var<T>);                                                \
  template Var<T> mean(Var<T>);                                               \
  template Var<T> incidence_attention(Var<T>, Var<T>, const Var<T>*,          \
                                      const Adjacency&, std::vector<T>*);     \
  template Var<T> bce(Var<T>, std::span<const T>);

HEGEL_INSTANTIATE_OPS(float)
HEGEL_INSTANTIATE_OPS(double)

#undef HEGEL_INSTANTIATE_OPS

}  // namespace hegel

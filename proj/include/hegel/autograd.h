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

#ifndef HEGEL_AUTOGRAD_H_
#define HEGEL_AUTOGRAD_H_

// Tape-based reverse-mode differentiation over Matrix<T>. Nodes are recorded
// in creation order, which is a valid topological order, so backward() is a
// single reverse sweep. A tape is single-threaded; parameters may be shared
// read-only by several no-grad tapes at once.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hegel/tensor.h"

namespace hegel {

template <typename T>
class Tape;

template <typename T>
class Var {
 public:
  Var() = default;
  Var(Tape<T>* tape, std::size_t id) : tape_(tape), id_(id) {}

  const Matrix<T>& value() const { return tape_->value(id_); }
  // Gradient accumulated so far; zero-filled if nothing reached this node.
  const Matrix<T>& grad() const { return tape_->grad(id_); }
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  bool requires_grad() const { return tape_->requires_grad(id_); }

  Tape<T>* tape() const { return tape_; }
  std::size_t id() const { return id_; }

 private:
  Tape<T>* tape_ = nullptr;
  std::size_t id_ = 0;
};

template <typename T>
class Tape {
 public:
  // Called with the tape and the id of the node being differentiated.
  using BackwardFn = std::function<void(Tape&, std::size_t)>;

  explicit Tape(bool grad_enabled = true) : grad_enabled_(grad_enabled) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool grad_enabled() const { return grad_enabled_; }

  Var<T> constant(Matrix<T> value);
  Var<T> leaf(Matrix<T> value, bool requires_grad = true);
  // Binds a parameter without copying it. Gradients flow straight into
  // param.grad, which is allocated on first use.
  Var<T> param(Parameter<T>& p);
  Var<T> param(const Parameter<T>& p);

  // Records an op output. `backward` runs only if some input requires grad.
  Var<T> record(Matrix<T> value, std::span<const Var<T>> inputs,
                BackwardFn backward);

  // Reverse sweep from a 1x1 loss. A second call without reset() throws.
  void backward(Var<T> loss);
  void reset();

  const Matrix<T>& value(std::size_t id) const;
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  // Mutable gradient buffer for node `id`, allocated zero on first access.
  Matrix<T>& grad(std::size_t id);
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix<T> value;
    const Matrix<T>* external = nullptr;
    Parameter<T>* param = nullptr;
    Matrix<T> grad;
    bool requires_grad = false;
    BackwardFn backward;
  };

  std::vector<Node> nodes_;
  bool grad_enabled_;
  bool backward_done_ = false;
};

// Compressed adjacency: targets t = 0..offsets.size()-2, each with sources
// indices[offsets[t] .. offsets[t+1]).
struct Adjacency {
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> indices;

  std::size_t targets() const { return offsets.size() - 1; }
  std::span<const std::uint32_t> sources(std::size_t t) const {
    return {indices.data() + offsets[t], offsets[t + 1] - offsets[t]};
  }
};

// ---- ops -----------------------------------------------------------------

template <typename T>
Var<T> matmul(Var<T> x, Var<T> w);  // [n,k] x [k,m]
template <typename T>
Var<T> add(Var<T> a, Var<T> b);  // same shape
template <typename T>
Var<T> add_row(Var<T> x, Var<T> bias);  // bias [1,m] broadcast over rows
template <typename T>
Var<T> mul(Var<T> a, Var<T> b);  // elementwise
template <typename T>
Var<T> scale(Var<T> x, T factor);
template <typename T>
Var<T> slice_rows(Var<T> x, std::size_t begin, std::size_t end);  // rows [begin, end)
template <typename T>
Var<T> leaky_relu(Var<T> x, T slope);
template <typename T>
Var<T> sigmoid(Var<T> x);
template <typename T>
Var<T> softmax_rows(Var<T> x);
// Per-row normalization to mean 0 / variance 1, then gamma * xhat + beta.
template <typename T>
Var<T> layer_norm(Var<T> x, Var<T> gamma, Var<T> beta, T eps = T(1e-5));
// Inverted dropout. Identity when rate == 0 or rng == nullptr.
template <typename T>
Var<T> dropout(Var<T> x, double rate, Rng* rng);
template <typename T>
Var<T> concat_cols(std::span<const Var<T>> parts);
template <typename T>
Var<T> sum(Var<T> x);  // 1x1
template <typename T>
Var<T> mean(Var<T> x);  // 1x1

// Attention aggregation over an incidence structure:
//   out[t] = sum_{s in N(t)} a_ts * values[s],
//   a_t = softmax_{s in N(t)}(source_score[s] + target_score[t]).
// target_score may be omitted (treated as 0). When `weights` is given it
// receives a_ts laid out like adj.indices. Throws ShapeError if any target has
// no sources. `adj` is referenced by the backward pass and must outlive it.
template <typename T>
Var<T> incidence_attention(Var<T> values, Var<T> source_score,
                           const Var<T>* target_score, const Adjacency& adj,
                           std::vector<T>* weights = nullptr);

// Mean binary cross-entropy of probabilities against 0/1 labels, with
// predictions clamped to [1e-7, 1 - 1e-7]. The clamp passes gradients
// through, evaluated at the clamped value.
template <typename T>
Var<T> bce(Var<T> probabilities, std::span<const T> labels);

inline constexpr double kBceClamp = 1e-7;

}  // namespace hegel

#endif  // HEGEL_AUTOGRAD_H_

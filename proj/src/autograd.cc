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

#include "hegel/autograd.h"

namespace hegel {

// ---- Tape ----------------------------------------------------------------

template <typename T>
Var<T> Tape<T>::constant(Matrix<T> value) {
  Node node;
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

template <typename T>
Var<T> Tape<T>::leaf(Matrix<T> value, bool requires_grad) {
  Node node;
  node.value = std::move(value);
  node.requires_grad = grad_enabled_ && requires_grad;
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

template <typename T>
Var<T> Tape<T>::param(Parameter<T>& p) {
  Node node;
  node.external = &p.value;
  node.param = grad_enabled_ ? &p : nullptr;
  node.requires_grad = grad_enabled_;
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

template <typename T>
Var<T> Tape<T>::param(const Parameter<T>& p) {
  Node node;
  node.external = &p.value;
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

template <typename T>
Var<T> Tape<T>::record(Matrix<T> value, std::span<const Var<T>> inputs,
                       BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  if (grad_enabled_) {
    for (const auto& in : inputs) {
      if (in.tape() != this) throw ShapeError("op mixes variables from two tapes");
      node.requires_grad = node.requires_grad || nodes_[in.id()].requires_grad;
    }
    if (node.requires_grad) node.backward = std::move(backward);
  }
  nodes_.push_back(std::move(node));
  return {this, nodes_.size() - 1};
}

template <typename T>
const Matrix<T>& Tape<T>::value(std::size_t id) const {
  const Node& node = nodes_[id];
  return node.external ? *node.external : node.value;
}

template <typename T>
Matrix<T>& Tape<T>::grad(std::size_t id) {
  Node& node = nodes_[id];
  Matrix<T>& g = node.param ? node.param->grad : node.grad;
  const Matrix<T>& v = value(id);
  if (!g.same_shape(v)) g = Matrix<T>(v.rows(), v.cols());
  return g;
}

template <typename T>
void Tape<T>::backward(Var<T> loss) {
  if (loss.tape() != this) throw ShapeError("backward: loss belongs to another tape");
  if (backward_done_) throw Error("backward called twice without reset()");
  const Matrix<T>& v = value(loss.id());
  if (v.rows() != 1 || v.cols() != 1) {
    throw ShapeError("backward requires a scalar loss, got " +
                     shape_string(v.rows(), v.cols()));
  }
  backward_done_ = true;
  if (!nodes_[loss.id()].requires_grad) return;
  grad(loss.id())(0, 0) += T(1);
  // Only nodes whose gradient buffer was touched by a consumer contribute.
  for (std::size_t id = loss.id() + 1; id-- > 0;) {
    Node& node = nodes_[id];
    if (!node.backward || !node.grad.same_shape(value(id))) continue;
    node.backward(*this, id);
  }
}

template <typename T>
void Tape<T>::reset() {
  nodes_.clear();
  backward_done_ = false;
}

template class Tape<float>;
template class Tape<double>;

}  // namespace hegel

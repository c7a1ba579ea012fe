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

#include "hegel/optim.h"

#include <cmath>

namespace hegel {

template <typename T>
AdamState<T> make_adam_state(const ParameterSet<T>& params,
                             const AdamOptions& options) {
  AdamState<T> state;
  state.options = options;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& value = params[i].value;
    state.m.emplace_back(value.rows(), value.cols());
    state.v.emplace_back(value.rows(), value.cols());
  }
  return state;
}

template <typename T>
double gradient_norm(const ParameterSet<T>& params) {
  double total = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (T g : params[i].grad.storage()) total += static_cast<double>(g) * g;
  }
  return std::sqrt(total);
}

template <typename T>
void adam_step(ParameterSet<T>& params, AdamState<T>& state) {
  if (state.m.size() != params.size()) {
    throw ShapeError("adam_step: state tracks " + std::to_string(state.m.size()) +
                     " parameters, got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = params[i];
    if (!state.m[i].same_shape(p.value) ||
        (!p.grad.empty() && !p.grad.same_shape(p.value))) {
      throw ShapeError("adam_step: shape mismatch for " + p.name);
    }
  }
  const AdamOptions& o = state.options;
  double clip = 1.0;
  if (o.clip_norm > 0) {
    const double norm = gradient_norm(params);
    if (norm > o.clip_norm) clip = o.clip_norm / norm;
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(o.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(o.beta2, static_cast<double>(state.t));
  const T b1 = static_cast<T>(o.beta1), b2 = static_cast<T>(o.beta2);
  const T step = static_cast<T>(o.lr / c1);
  const T inv_c2 = static_cast<T>(1.0 / c2);
  const T eps = static_cast<T>(o.eps);
  const T clip_t = static_cast<T>(clip);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& p = params[i];
    T* w = p.value.data();
    const T* g = p.grad.empty() ? nullptr : p.grad.data();
    T* m = state.m[i].data();
    T* v = state.v[i].data();
    for (std::size_t j = 0; j < p.value.size(); ++j) {
      const T gj = g ? g[j] * clip_t : T(0);
      m[j] = b1 * m[j] + (T(1) - b1) * gj;
      v[j] = b2 * v[j] + (T(1) - b2) * gj * gj;
      w[j] -= step * m[j] / (std::sqrt(v[j] * inv_c2) + eps);
    }
  }
}

template AdamState<float> make_adam_state(const ParameterSet<float>&,
                                          const AdamOptions&);
template AdamState<double> make_adam_state(const ParameterSet<double>&,
                                           const AdamOptions&);
template double gradient_norm(const ParameterSet<float>&);
template double gradient_norm(const ParameterSet<double>&);
template void adam_step(ParameterSet<float>&, AdamState<float>&);
template void adam_step(ParameterSet<double>&, AdamState<double>&);

}  // namespace hegel

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

#ifndef HEGEL_OPTIM_H_
#define HEGEL_OPTIM_H_

#include <cstdint>
#include <vector>

#include "hegel/tensor.h"

namespace hegel {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Global gradient-norm clip; 0 disables.
  double clip_norm = 0.0;
};

template <typename T>
struct AdamState {
  AdamOptions options;
  std::vector<Matrix<T>> m;
  std::vector<Matrix<T>> v;
  std::int64_t t = 0;
};

// One bias-corrected Adam update over every parameter in `params`, reading
// param.grad. Parameters without a gradient buffer count as zero gradient.
// Throws ShapeError if the state was built for differently shaped parameters.
template <typename T>
void adam_step(ParameterSet<T>& params, AdamState<T>& state);

template <typename T>
AdamState<T> make_adam_state(const ParameterSet<T>& params,
                             const AdamOptions& options);

// L2 norm over all parameter gradients.
template <typename T>
double gradient_norm(const ParameterSet<T>& params);

}  // namespace hegel

#endif  // HEGEL_OPTIM_H_

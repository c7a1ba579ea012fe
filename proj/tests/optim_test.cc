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

#include <gtest/gtest.h>

namespace hegel {
namespace {

TEST(Adam, FirstStepMovesByLearningRateTimesSign) {
  // With m and v zero, the bias-corrected first step is lr * g / (|g| + eps).
  ParameterSet<double> params;
  auto& p = params.add("w", 1, 3);
  p.value.storage() = {1.0, 2.0, 3.0};
  p.grad = Matrix<double>(1, 3, std::vector<double>{0.5, -2.0, 1e-3});
  AdamOptions o;
  o.lr = 0.01;
  auto state = make_adam_state(params, o);
  adam_step(params, state);
  EXPECT_NEAR(p.value(0, 0), 1.0 - 0.01 * 0.5 / (0.5 + 1e-8), 1e-15);
  EXPECT_NEAR(p.value(0, 1), 2.0 + 0.01 * 2.0 / (2.0 + 1e-8), 1e-15);
  EXPECT_NEAR(p.value(0, 2), 3.0 - 0.01 * 1e-3 / (1e-3 + 1e-8), 1e-15);
  EXPECT_EQ(state.t, 1);
}

TEST(Adam, SecondStepMatchesHandComputation) {
  ParameterSet<double> params;
  auto& p = params.add("w", 1, 1);
  AdamOptions o;
  o.lr = 0.1;
  auto state = make_adam_state(params, o);
  double w = 0, m = 0, v = 0;
  for (int t = 1; t <= 2; ++t) {
    const double g = t == 1 ? 1.0 : -3.0;
    p.grad = Matrix<double>(1, 1, g);
    adam_step(params, state);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mh = m / (1 - std::pow(0.9, t)), vh = v / (1 - std::pow(0.999, t));
    w -= 0.1 * mh / (std::sqrt(vh) + 1e-8);
  }
  EXPECT_NEAR(p.value(0, 0), w, 1e-12);
}

TEST(Adam, ZeroGradientFromFreshStateIsFixedPoint) {
  ParameterSet<double> params;
  auto& p = params.add("w", 2, 2);
  p.value.storage() = {1, -2, 3, -4};
  const auto before = p.value;
  auto state = make_adam_state(params, AdamOptions{});
  p.grad = Matrix<double>(2, 2, 0.0);
  for (int i = 0; i < 5; ++i) adam_step(params, state);
  EXPECT_EQ(p.value, before);
}

TEST(Adam, MissingGradientBufferActsAsZeroGradient) {
  ParameterSet<double> a, b;
  auto& pa = a.add("w", 1, 1);
  auto& pb = b.add("w", 1, 1);
  auto sa = make_adam_state(a, AdamOptions{});
  auto sb = make_adam_state(b, AdamOptions{});
  pa.grad = Matrix<double>(1, 1, 1.0);
  pb.grad = Matrix<double>(1, 1, 1.0);
  adam_step(a, sa);
  adam_step(b, sb);
  pa.grad = Matrix<double>(1, 1, 0.0);
  pb.grad = Matrix<double>();
  adam_step(a, sa);
  adam_step(b, sb);
  EXPECT_EQ(pa.value, pb.value);
  EXPECT_EQ(sa.m[0], sb.m[0]);
}

TEST(Adam, ClipScalesGradientToNorm) {
  ParameterSet<double> params;
  auto& p = params.add("w", 1, 2);
  p.grad = Matrix<double>(1, 2, std::vector<double>{3.0, 4.0});
  EXPECT_DOUBLE_EQ(gradient_norm(params), 5.0);
  AdamOptions o;
  o.clip_norm = 1.0;
  auto state = make_adam_state(params, o);
  adam_step(params, state);
  EXPECT_NEAR(state.m[0](0, 0), 0.1 * 0.6, 1e-15);
  EXPECT_NEAR(state.m[0](0, 1), 0.1 * 0.8, 1e-15);
}

TEST(Adam, DeterministicAcrossRuns) {
  auto run = [] {
    ParameterSet<float> params;
    auto& p = params.add("w", 3, 3);
    Rng rng(5);
    glorot_uniform(p.value, rng);
    auto state = make_adam_state(params, AdamOptions{});
    for (int i = 0; i < 10; ++i) {
      p.grad = p.value;  // gradient of 0.5 * |w|^2
      adam_step(params, state);
    }
    return p.value;
  };
  EXPECT_EQ(run(), run());
}

TEST(Adam, MinimizesQuadratic) {
  ParameterSet<double> params;
  auto& p = params.add("w", 1, 1);
  p.value(0, 0) = 5.0;
  AdamOptions o;
  o.lr = 0.1;
  auto state = make_adam_state(params, o);
  for (int i = 0; i < 500; ++i) {
    p.grad = Matrix<double>(1, 1, 2 * (p.value(0, 0) - 1.0));
    adam_step(params, state);
  }
  EXPECT_NEAR(p.value(0, 0), 1.0, 1e-2);
}

TEST(Adam, ShapeMismatchThrows) {
  ParameterSet<double> a, b;
  a.add("w", 2, 2);
  b.add("w", 3, 2);
  auto state = make_adam_state(a, AdamOptions{});
  EXPECT_THROW(adam_step(b, state), ShapeError);
}

}  // namespace
}  // namespace hegel

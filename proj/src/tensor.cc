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

#include "hegel/tensor.h"

#include <cmath>
#include <limits>

namespace hegel {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::string shape_string(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

Rng::Rng(std::uint64_t seed) {
  for (auto& s : state_) s = splitmix64(seed);
}

// xoshiro256**
std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::size_t Rng::below(std::size_t bound) {
  if (bound == 0) return 0;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return static_cast<std::size_t>(r % bound);
}

template <typename T>
Parameter<T>& ParameterSet<T>::add(const std::string& name, std::size_t rows,
                                   std::size_t cols) {
  if (contains(name)) throw ConfigError("duplicate parameter " + name);
  index_[name] = params_.size();
  params_.push_back(std::make_unique<Parameter<T>>(
      Parameter<T>{name, Matrix<T>(rows, cols), Matrix<T>()}));
  return *params_.back();
}

template <typename T>
Parameter<T>& ParameterSet<T>::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw ConfigError("unknown parameter " + name);
  return *params_[it->second];
}

template <typename T>
const Parameter<T>& ParameterSet<T>::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ConfigError("unknown parameter " + name);
  return *params_[it->second];
}

template <typename T>
std::size_t ParameterSet<T>::scalar_count() const {
  std::size_t total = 0;
  for (const auto& p : params_) total += p->value.size();
  return total;
}

template <typename T>
void ParameterSet<T>::zero_grad() {
  for (auto& p : params_) {
    if (!p->grad.empty()) p->grad.fill(T(0));
  }
}

template <typename T>
bool ParameterSet<T>::all_finite() const {
  for (const auto& p : params_) {
    for (T v : p->value.storage()) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

template <typename T>
void glorot_uniform(Matrix<T>& w, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  for (T& v : w.storage()) v = static_cast<T>(rng.uniform(-a, a));
}

template <typename T>
std::vector<T> softmax_masked(std::span<const T> scores,
                              std::span<const std::size_t> members) {
  if (members.empty()) throw ShapeError("softmax_masked: empty mask");
  T max_score = -std::numeric_limits<T>::infinity();
  for (std::size_t m : members) {
    if (m >= scores.size()) throw ShapeError("softmax_masked: index out of range");
    max_score = std::max(max_score, scores[m]);
  }
  std::vector<T> out(scores.size(), T(0));
  T total = 0;
  for (std::size_t m : members) {
    out[m] = std::exp(scores[m] - max_score);
    total += out[m];
  }
  for (std::size_t m : members) out[m] /= total;
  return out;
}

template class ParameterSet<float>;
template class ParameterSet<double>;
template void glorot_uniform(Matrix<float>&, Rng&);
template void glorot_uniform(Matrix<double>&, Rng&);
template std::vector<float> softmax_masked(std::span<const float>,
                                           std::span<const std::size_t>);
template std::vector<double> softmax_masked(std::span<const double>,
                                            std::span<const std::size_t>);

}  // namespace hegel

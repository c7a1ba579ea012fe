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

#include "hegel/rouge.h"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "hegel/errors.h"

namespace hegel {
namespace {

std::unordered_map<std::string, int> ngram_counts(std::span<const Token> tokens,
                                                  int n) {
  std::unordered_map<std::string, int> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    // '\x1f' cannot occur inside a token.
    for (int k = 1; k < n; ++k) key.append("\x1f").append(tokens[i + k]);
    ++counts[key];
  }
  return counts;
}

}  // namespace

PrfScore make_prf(double overlap, double candidate_total,
                  double reference_total) {
  PrfScore s;
  if (candidate_total <= 0 || reference_total <= 0) return s;
  s.precision = overlap / candidate_total;
  s.recall = overlap / reference_total;
  if (s.precision + s.recall > 0) {
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

PrfScore rouge_n(std::span<const Token> candidate,
                 std::span<const Token> reference, int n) {
  if (n != 1 && n != 2) {
    throw ConfigError("rouge_n supports n in {1,2}, got " + std::to_string(n));
  }
  auto cand = ngram_counts(candidate, n);
  auto ref = ngram_counts(reference, n);
  double overlap = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  auto total = [n](std::span<const Token> t) {
    return t.size() >= static_cast<std::size_t>(n)
               ? static_cast<double>(t.size() - n + 1)
               : 0.0;
  };
  return make_prf(overlap, total(candidate), total(reference));
}

std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

PrfScore rouge_l(std::span<const Token> candidate,
                 std::span<const Token> reference) {
  return make_prf(static_cast<double>(lcs_length(candidate, reference)),
                  static_cast<double>(candidate.size()),
                  static_cast<double>(reference.size()));
}

RougeTriple rouge_all(std::span<const Token> candidate,
                      std::span<const Token> reference) {
  return {rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2),
          rouge_l(candidate, reference)};
}

}  // namespace hegel

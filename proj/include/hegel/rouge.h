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

#ifndef HEGEL_ROUGE_H_
#define HEGEL_ROUGE_H_

#include <span>

#include "hegel/text.h"

namespace hegel {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Harmonic mean with f1 = 0 when precision + recall = 0.
PrfScore make_prf(double overlap, double candidate_total, double reference_total);

// ROUGE-N with clipped n-gram counts. Orders other than 1 and 2 throw
// ConfigError. Empty inputs score zero.
PrfScore rouge_n(std::span<const Token> candidate,
                 std::span<const Token> reference, int n);

// Summary-level ROUGE-L: LCS over the full token sequences.
PrfScore rouge_l(std::span<const Token> candidate,
                 std::span<const Token> reference);

std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b);

struct RougeTriple {
  PrfScore r1, r2, rl;
};

RougeTriple rouge_all(std::span<const Token> candidate,
                      std::span<const Token> reference);

}  // namespace hegel

#endif  // HEGEL_ROUGE_H_

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

#ifndef HEGEL_ORACLE_H_
#define HEGEL_ORACLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hegel/corpus.h"

namespace hegel {

struct LabelVector {
  std::vector<int> labels;                  // 0/1 per sentence
  std::vector<std::size_t> selected_order;  // greedy pick order
  std::vector<double> objective_trace;      // objective after each pick
  bool empty_abstract = false;
};

struct OracleOptions {
  std::size_t max_sentences = 30;
  double epsilon = 1e-9;
};

// Objective used by the greedy oracle: mean of ROUGE-1 F and ROUGE-2 F of the
// selected sentences against the abstract. N-grams are counted within each
// sentence (bigrams never span a sentence boundary), on both sides.
double oracle_objective(std::span<const TokenList> selected,
                        std::span<const TokenList> reference);

// Greedy extractive labels: repeatedly add the sentence with the best
// objective, ties to the smaller index, until no strict improvement. Scores
// within 1e-12 count as tied so summation order cannot break a tie.
LabelVector greedy_oracle(const Document& doc, const OracleOptions& options = {});

}  // namespace hegel

#endif  // HEGEL_ORACLE_H_

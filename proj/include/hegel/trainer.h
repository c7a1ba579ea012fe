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

#ifndef HEGEL_TRAINER_H_
#define HEGEL_TRAINER_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hegel/checkpoint.h"
#include "hegel/corpus.h"
#include "hegel/hypergraph.h"
#include "hegel/model.h"
#include "hegel/optim.h"
#include "hegel/rouge.h"

namespace hegel {

// Everything one training or validation step needs for a document.
struct Sample {
  Document doc;
  Hypergraph graph;
  Matrix<float> inputs;       // n x input_dim, positional terms included
  std::vector<float> labels;  // n oracle labels in {0, 1}
};

struct SelectionOptions {
  std::size_t budget_words = 203;
  std::size_t max_sentences = 10;
};

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0;  // mean per-document BCE
  double val_rouge1_f = 0;
  bool improved = false;
  double seconds = 0;
};

struct TrainConfig {
  ModelConfig model;
  AdamOptions adam;
  std::size_t epochs = 20;
  std::size_t patience = 3;
  std::uint64_t seed = 13;
  SelectionOptions selection;
  std::size_t threads = 0;  // validation workers, 0 = default
  std::function<void(const EpochLog&)> on_epoch;

  // Throws ConfigError on zero epochs or a bad model config. A patience at
  // least as long as the run disables early stopping.
  void validate() const;
  nlohmann::json to_json() const;
};

struct TrainResult {
  Checkpoint best;
  std::vector<EpochLog> history;
};

// Per-document Adam steps over a seeded shuffle each epoch. Validation ROUGE-1
// F picks the checkpoint; training stops once `patience` consecutive epochs
// fail to improve it. Throws NumericError on a non-finite loss.
TrainResult train(std::span<const Sample> train_set, std::span<const Sample> val_set,
                  const TrainConfig& config);

// Highest scores first (ties to the smaller index) while the running word
// count stays within budget and the count within max_sentences; stops at the
// first sentence that does not fit. Returned in document order. If even the
// top sentence exceeds the budget it is returned alone.
std::vector<std::size_t> select_summary(std::span<const float> scores,
                                        const Document& doc,
                                        const SelectionOptions& options);

// Leading sentences under the same budget rule.
std::vector<std::size_t> lead_summary(const Document& doc,
                                      const SelectionOptions& options);

TokenList summary_tokens(const Document& doc, std::span<const std::size_t> picked);
std::vector<std::string> summary_sentences(const Document& doc,
                                           std::span<const std::size_t> picked);

// Mean ROUGE-1 F of selected summaries against abstracts. Throws ConfigError
// on an empty set.
double validate(const HegelModel<float>& model, std::span<const Sample> samples,
                const SelectionOptions& options, std::size_t threads = 0);

// Mean ROUGE-1/2/L triple for the LEAD baseline.
RougeTriple lead_rouge(std::span<const Sample> samples,
                       const SelectionOptions& options);

}  // namespace hegel

#endif  // HEGEL_TRAINER_H_

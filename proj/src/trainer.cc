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

#include "hegel/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "hegel/parallel.h"

namespace hegel {

void TrainConfig::validate() const {
  model.validate();
  if (epochs == 0) throw ConfigError("epochs must be positive");
  if (!(adam.lr > 0)) throw ConfigError("learning rate must be positive");
  if (selection.budget_words == 0 || selection.max_sentences == 0) {
    throw ConfigError("selection budget must be positive");
  }
}

nlohmann::json TrainConfig::to_json() const {
  return {{"model", model.to_json()},
          {"lr", adam.lr},
          {"beta1", adam.beta1},
          {"beta2", adam.beta2},
          {"adam_eps", adam.eps},
          {"clip_norm", adam.clip_norm},
          {"epochs", epochs},
          {"patience", patience},
          {"seed", seed},
          {"budget_words", selection.budget_words},
          {"max_sentences", selection.max_sentences}};
}

std::vector<std::size_t> select_summary(std::span<const float> scores,
                                        const Document& doc,
                                        const SelectionOptions& options) {
  const std::size_t n = doc.n_sentences();
  if (scores.size() != n) {
    throw ShapeError("select_summary: " + std::to_string(scores.size()) +
                     " scores for " + std::to_string(n) + " sentences");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  std::vector<std::size_t> picked;
  std::size_t words = 0;
  for (std::size_t i : order) {
    if (picked.size() >= options.max_sentences) break;
    const std::size_t w = doc.tokens[i].size();
    if (words + w > options.budget_words) break;
    picked.push_back(i);
    words += w;
  }
  if (picked.empty() && n > 0) picked.push_back(order[0]);
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<std::size_t> lead_summary(const Document& doc,
                                      const SelectionOptions& options) {
  std::vector<std::size_t> picked;
  std::size_t words = 0;
  for (std::size_t i = 0; i < doc.n_sentences(); ++i) {
    if (picked.size() >= options.max_sentences) break;
    const std::size_t w = doc.tokens[i].size();
    if (words + w > options.budget_words) break;
    picked.push_back(i);
    words += w;
  }
  if (picked.empty() && doc.n_sentences() > 0) picked.push_back(0);
  return picked;
}

TokenList summary_tokens(const Document& doc, std::span<const std::size_t> picked) {
  TokenList out;
  for (std::size_t i : picked) {
    out.insert(out.end(), doc.tokens.at(i).begin(), doc.tokens.at(i).end());
  }
  return out;
}

std::vector<std::string> summary_sentences(const Document& doc,
                                           std::span<const std::size_t> picked) {
  std::vector<std::string> out;
  for (std::size_t i : picked) out.push_back(doc.sentences.at(i));
  return out;
}

double validate(const HegelModel<float>& model, std::span<const Sample> samples,
                const SelectionOptions& options, std::size_t threads) {
  if (samples.empty()) throw ConfigError("validation set is empty");
  std::vector<double> f(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const Sample& s = samples[i];
    const auto scores = model.scores(s.inputs, s.graph);
    const auto picked = select_summary(scores, s.doc, options);
    f[i] = rouge_n(summary_tokens(s.doc, picked), s.doc.abstract_tokens(), 1).f1;
  });
  // Fixed-order reduction keeps the result independent of thread timing.
  double total = 0;
  for (double v : f) total += v;
  return total / static_cast<double>(samples.size());
}

RougeTriple lead_rouge(std::span<const Sample> samples,
                       const SelectionOptions& options) {
  if (samples.empty()) throw ConfigError("LEAD evaluation set is empty");
  RougeTriple mean;
  for (const auto& s : samples) {
    const auto r = rouge_all(summary_tokens(s.doc, lead_summary(s.doc, options)),
                             s.doc.abstract_tokens());
    mean.r1.f1 += r.r1.f1;
    mean.r2.f1 += r.r2.f1;
    mean.rl.f1 += r.rl.f1;
  }
  const double k = static_cast<double>(samples.size());
  mean.r1.f1 /= k;
  mean.r2.f1 /= k;
  mean.rl.f1 /= k;
  return mean;
}

namespace {

std::uint64_t step_seed(std::uint64_t seed, std::size_t epoch, std::size_t step) {
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (epoch + 1)) ^
                    (0xBF58476D1CE4E5B9ULL * (step + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_sample(const Sample& s, const ModelConfig& config, bool need_labels) {
  const std::size_t n = s.doc.n_sentences();
  if (s.graph.nodes() != n || s.inputs.rows() != n ||
      (need_labels && s.labels.size() != n)) {
    throw ShapeError("sample " + s.doc.id + ": graph/inputs/labels disagree on n=" +
                     std::to_string(n));
  }
  if (s.inputs.cols() != config.input_dim) {
    throw ShapeError("sample " + s.doc.id + ": inputs have " +
                     std::to_string(s.inputs.cols()) + " columns, model expects " +
                     std::to_string(config.input_dim));
  }
}

}  // namespace

TrainResult train(std::span<const Sample> train_set, std::span<const Sample> val_set,
                  const TrainConfig& config) {
  config.validate();
  if (train_set.empty()) throw ConfigError("training set is empty");
  if (val_set.empty()) throw ConfigError("validation set is empty");
  for (const auto& s : train_set) check_sample(s, config.model, true);
  for (const auto& s : val_set) check_sample(s, config.model, false);

  HegelModel<float> model(config.model, config.seed);
  AdamState<float> adam = make_adam_state(model.params(), config.adam);
  Rng shuffle_rng(config.seed ^ 0x5851F42D4C957F2DULL);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  result.best.config = config.model;
  result.best.val_rouge1_f = -1;
  std::size_t stale = 0;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.below(i)]);
    }
    double loss_total = 0;
    for (std::size_t step = 0; step < order.size(); ++step) {
      const Sample& s = train_set[order[step]];
      Rng dropout_rng(step_seed(config.seed, epoch, step));
      Tape<float> tape;
      model.params().zero_grad();
      Var<float> scores =
          model.forward(tape, s.inputs, s.graph, {true, &dropout_rng});
      Var<float> loss = bce_loss<float>(scores, s.labels);
      const double value = loss.value()(0, 0);
      if (!std::isfinite(value)) {
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch) +
                           ", document " + s.doc.id);
      }
      tape.backward(loss);
      if (!std::isfinite(gradient_norm(model.params()))) {
        throw NumericError("non-finite gradient at epoch " + std::to_string(epoch) +
                           ", document " + s.doc.id);
      }
      adam_step(model.params(), adam);
      loss_total += value;
    }
    EpochLog log;
    log.epoch = epoch;
    log.train_loss = loss_total / static_cast<double>(order.size());
    log.val_rouge1_f = validate(model, val_set, config.selection, config.threads);
    log.improved = log.val_rouge1_f > result.best.val_rouge1_f;
    if (log.improved) {
      result.best.params = ParameterSet<float>{};
      snapshot_params(model.params(), result.best.params);
      result.best.epoch = epoch;
      result.best.val_rouge1_f = log.val_rouge1_f;
      stale = 0;
    } else {
      ++stale;
    }
    log.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    result.history.push_back(log);
    if (config.on_epoch) config.on_epoch(log);
    if (stale >= config.patience) break;
  }
  result.best.metadata["train_config"] = config.to_json();
  return result;
}

}  // namespace hegel

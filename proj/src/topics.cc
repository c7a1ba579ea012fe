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

#include "hegel/topics.h"

#include <algorithm>
#include <unordered_map>

namespace hegel {

LdaSampler::LdaSampler(std::span<const TokenList> sentences,
                       const LdaOptions& options)
    : options_(options), sentences_(sentences.size()), rng_(options.seed) {
  if (options_.topics == 0) throw ConfigError("LDA needs at least one topic");
  if (options_.sweeps == 0) throw ConfigError("LDA needs at least one sweep");
  if (options_.alpha <= 0 || options_.beta <= 0) {
    throw ConfigError("LDA priors must be positive");
  }
  std::unordered_map<std::string, std::uint32_t> ids;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (const auto& token : sentences[s]) {
      auto [it, inserted] =
          ids.try_emplace(token, static_cast<std::uint32_t>(vocabulary_.size()));
      if (inserted) vocabulary_.push_back(token);
      words_.push_back(it->second);
      owner_.push_back(static_cast<std::uint32_t>(s));
    }
  }
  if (words_.empty()) throw Error("fit_lda: empty vocabulary");
  const std::size_t K = options_.topics;
  doc_topic_.assign(sentences_ * K, 0);
  topic_word_.assign(K * vocabulary_.size(), 0);
  topic_total_.assign(K, 0);
  probs_.resize(K);
  topic_.resize(words_.size());
  for (std::size_t t = 0; t < words_.size(); ++t) {
    const auto k = static_cast<std::uint32_t>(rng_.below(K));
    topic_[t] = k;
    ++doc_topic_[owner_[t] * K + k];
    ++topic_word_[k * vocabulary_.size() + words_[t]];
    ++topic_total_[k];
  }
}

void LdaSampler::sweep() {
  const std::size_t K = options_.topics;
  const std::size_t V = vocabulary_.size();
  const double alpha = options_.alpha, beta = options_.beta;
  const double vbeta = static_cast<double>(V) * beta;
  for (std::size_t t = 0; t < words_.size(); ++t) {
    const std::uint32_t w = words_[t], d = owner_[t];
    std::uint32_t k = topic_[t];
    --doc_topic_[d * K + k];
    --topic_word_[k * V + w];
    --topic_total_[k];
    double total = 0;
    for (std::size_t j = 0; j < K; ++j) {
      total += (doc_topic_[d * K + j] + alpha) * (topic_word_[j * V + w] + beta) /
               (topic_total_[j] + vbeta);
      probs_[j] = total;
    }
    const double u = rng_.uniform() * total;
    k = static_cast<std::uint32_t>(
        std::upper_bound(probs_.begin(), probs_.end(), u) - probs_.begin());
    if (k >= K) k = static_cast<std::uint32_t>(K - 1);
    topic_[t] = k;
    ++doc_topic_[d * K + k];
    ++topic_word_[k * V + w];
    ++topic_total_[k];
  }
}

std::size_t LdaSampler::topic_word_total() const {
  std::size_t total = 0;
  for (auto c : topic_word_) total += c;
  return total;
}

TopicModel LdaSampler::estimate() const {
  const std::size_t K = options_.topics;
  const std::size_t V = vocabulary_.size();
  TopicModel model;
  model.num_topics = K;
  model.vocabulary = vocabulary_;
  model.phi = Matrix<double>(K, V);
  for (std::size_t k = 0; k < K; ++k) {
    const double denom = topic_total_[k] + V * options_.beta;
    for (std::size_t w = 0; w < V; ++w) {
      model.phi(k, w) = (topic_word_[k * V + w] + options_.beta) / denom;
    }
  }
  model.theta = Matrix<double>(sentences_, K);
  model.assignments.resize(sentences_);
  for (std::size_t d = 0; d < sentences_; ++d) {
    std::size_t len = 0;
    for (std::size_t k = 0; k < K; ++k) len += doc_topic_[d * K + k];
    const double denom = len + K * options_.alpha;
    std::size_t best = 0;
    for (std::size_t k = 0; k < K; ++k) {
      model.theta(d, k) = (doc_topic_[d * K + k] + options_.alpha) / denom;
      if (model.theta(d, k) > model.theta(d, best)) best = k;
    }
    model.assignments[d] = best;
  }
  return model;
}

TopicModel fit_lda(std::span<const TokenList> sentences,
                   const LdaOptions& options) {
  LdaSampler sampler(sentences, options);
  for (std::size_t s = 0; s < options.sweeps; ++s) sampler.sweep();
  return sampler.estimate();
}

std::size_t default_topic_count(std::size_t n_sentences, std::size_t topics_max) {
  return std::min(topics_max, std::max<std::size_t>(2, n_sentences / 5));
}

IncidenceBlock topic_hyperedges(const TopicModel& model, std::size_t n) {
  if (model.assignments.size() != n) {
    throw ShapeError("topic_hyperedges: model covers " +
                     std::to_string(model.assignments.size()) +
                     " sentences, expected " + std::to_string(n));
  }
  std::vector<std::vector<std::uint32_t>> by_topic(model.num_topics);
  for (std::size_t i = 0; i < n; ++i) {
    by_topic[model.assignments[i]].push_back(static_cast<std::uint32_t>(i));
  }
  IncidenceBlock block;
  block.rows = n;
  for (auto& members : by_topic) {
    if (!members.empty()) block.columns.push_back(std::move(members));
  }
  return block;
}

}  // namespace hegel

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

#ifndef HEGEL_TOPICS_H_
#define HEGEL_TOPICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hegel/incidence.h"
#include "hegel/tensor.h"
#include "hegel/text.h"

namespace hegel {

struct LdaOptions {
  std::size_t topics = 2;
  double alpha = 0.1;
  double beta = 0.01;
  std::size_t sweeps = 200;
  std::uint64_t seed = 0;
};

struct TopicModel {
  std::size_t num_topics = 0;
  std::vector<std::string> vocabulary;
  Matrix<double> phi;    // K x V topic-word distributions
  Matrix<double> theta;  // n x K sentence-topic distributions
  std::vector<std::size_t> assignments;  // argmax of theta, ties to lower k
};

// Collapsed Gibbs sampler with sentences as pseudo-documents.
class LdaSampler {
 public:
  LdaSampler(std::span<const TokenList> sentences, const LdaOptions& options);

  void sweep();
  TopicModel estimate() const;

  std::size_t total_tokens() const { return words_.size(); }
  // Sum over the topic-word count table; equals total_tokens() at all times.
  std::size_t topic_word_total() const;
  std::size_t vocabulary_size() const { return vocabulary_.size(); }

 private:
  LdaOptions options_;
  std::size_t sentences_;
  std::vector<std::string> vocabulary_;
  std::vector<std::uint32_t> words_;      // word id per token
  std::vector<std::uint32_t> owner_;      // sentence per token
  std::vector<std::uint32_t> topic_;      // current assignment per token
  std::vector<std::uint32_t> doc_topic_;  // n x K
  std::vector<std::uint32_t> topic_word_;  // K x V
  std::vector<std::uint32_t> topic_total_;  // K
  std::vector<double> probs_;
  Rng rng_;
};

// Throws Error when no sentence has a token.
TopicModel fit_lda(std::span<const TokenList> sentences,
                   const LdaOptions& options);

// K = min(topics_max, max(2, n / 5)).
std::size_t default_topic_count(std::size_t n_sentences, std::size_t topics_max);

// Column j collects the sentences whose argmax topic is j; empty topics are
// dropped, so every row sums to exactly 1.
IncidenceBlock topic_hyperedges(const TopicModel& model, std::size_t n);

}  // namespace hegel

#endif  // HEGEL_TOPICS_H_

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

#ifndef HEGEL_SYNTHETIC_H_
#define HEGEL_SYNTHETIC_H_

// Deterministic generators for corpora in the arXiv/PubMed JSONL layout.
// Generated documents carry a known salience structure: a handful of
// sentences scattered past the opening paragraphs mention document-specific
// key terms and cue phrases, and the abstract paraphrases exactly those
// sentences.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hegel {

enum class CorpusStyle { kArxiv, kPubmed };

struct SyntheticOptions {
  CorpusStyle style = CorpusStyle::kPubmed;
  std::size_t documents = 100;
  std::uint64_t seed = 1;
  std::size_t min_sections = 4;
  std::size_t max_sections = 6;
  std::size_t min_section_sentences = 8;
  std::size_t max_section_sentences = 16;
  std::size_t salient_sentences = 6;
  std::size_t key_terms = 3;
  double distractor_rate = 0.2;  // non-salient body sentences with one key term
  // Salient sentences are placed at flattened index >= lead_gap.
  std::size_t lead_gap = 12;
};

struct SyntheticDocument {
  nlohmann::json raw;                  // one JSONL record
  std::vector<std::size_t> salient;    // flattened sentence indices
  std::vector<std::string> key_terms;
};

std::vector<SyntheticDocument> synthetic_corpus(const SyntheticOptions& options);

// Eight-sentence documents in one section where exactly two sentences share a
// planted term, and the abstract repeats those two sentences.
std::vector<SyntheticDocument> planted_keyword_corpus(std::size_t documents,
                                                      std::uint64_t seed);

// Sentences drawn from two disjoint vocabularies; truth[i] is the source
// vocabulary of sentence i.
struct TwoTopicCorpus {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::size_t> truth;
};
TwoTopicCorpus two_topic_corpus(std::size_t sentences, std::size_t words_per_sentence,
                                std::uint64_t seed);

void write_jsonl(const std::string& path, const std::vector<SyntheticDocument>& docs);

}  // namespace hegel

#endif  // HEGEL_SYNTHETIC_H_

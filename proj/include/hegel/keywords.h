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

#ifndef HEGEL_KEYWORDS_H_
#define HEGEL_KEYWORDS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hegel/corpus.h"
#include "hegel/embed.h"
#include "hegel/incidence.h"

namespace hegel {

struct Keyword {
  TokenList tokens;  // one or two lowercase tokens
  double score = 0;  // cosine against the document centroid
  std::size_t first_occurrence = 0;  // flattened token position

  std::string phrase() const;
};

enum class KeywordVectors {
  // Candidate vector = mean of the hashed TF-IDF basis vectors of its tokens;
  // the embedding matrix must come from tfidf_embed with the same seed.
  kHashedTfidf,
  // Candidate vector = mean of the rows of sentences that contain it.
  kSentenceRows,
};

struct KeywordOptions {
  std::size_t k = 20;
  KeywordVectors vectors = KeywordVectors::kHashedTfidf;
  std::uint64_t hash_seed = 0;
};

// Centroid-similarity keyword ranking over unigram and bigram candidates.
// Candidates skip stopwords and pure numbers; a bigram needs two distinct
// tokens. Top-k by score, ties to the earliest first occurrence. An empty
// result means the document had no candidate.
std::vector<Keyword> extract_keywords(const Document& doc,
                                      const EmbeddingMatrix& embeddings,
                                      const KeywordOptions& options);

// Column j marks the sentences whose token list contains keyword j as a
// contiguous run.
IncidenceBlock keyword_hyperedges(const Document& doc,
                                  std::span<const Keyword> keywords);

bool contains_contiguous(std::span<const Token> haystack,
                         std::span<const Token> needle);

}  // namespace hegel

#endif  // HEGEL_KEYWORDS_H_

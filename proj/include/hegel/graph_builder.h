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

#ifndef HEGEL_GRAPH_BUILDER_H_
#define HEGEL_GRAPH_BUILDER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hegel/corpus.h"
#include "hegel/embed.h"
#include "hegel/hypergraph.h"
#include "hegel/keywords.h"
#include "hegel/topics.h"

namespace hegel {

struct GraphBuildOptions {
  std::size_t topics_max = 100;
  std::size_t lda_sweeps = 200;
  double lda_alpha = 0.1;
  double lda_beta = 0.01;
  std::size_t keywords = 20;
  KeywordVectors keyword_vectors = KeywordVectors::kSentenceRows;
  FuseOptions fuse;
  std::uint64_t seed = 13;
  // Must equal the tfidf_embed seed when keyword_vectors is kHashedTfidf.
  std::uint64_t embedding_seed = 7;
};

struct DocumentGraph {
  GraphFile file;
  std::vector<Keyword> keywords;
  std::vector<std::size_t> topic_of_sentence;  // empty when LDA was skipped
  std::size_t topics_fitted = 0;
  std::size_t topic_edges_dropped = 0;
  std::size_t keyword_edges_dropped = 0;
};

// Sentences with stopwords and pure numbers removed; the LDA input.
std::vector<TokenList> content_tokens(const Document& doc);

// Per-document LDA seed: same run seed gives a different stream per article.
std::uint64_t document_seed(const Document& doc, std::uint64_t seed);

// Sections, LDA topics and keywords fused into one hypergraph. `embeddings`
// must be n x d and is only read by keyword extraction.
DocumentGraph build_document_graph(const Document& doc,
                                   const EmbeddingMatrix& embeddings,
                                   const GraphBuildOptions& options);

// Keyword and topic sidecar written next to a graph cache file.
std::string keywords_sidecar_json(const DocumentGraph& graph);

}  // namespace hegel

#endif  // HEGEL_GRAPH_BUILDER_H_

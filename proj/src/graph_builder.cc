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

#include "hegel/graph_builder.h"

#include "json.hpp"

namespace hegel {

std::vector<TokenList> content_tokens(const Document& doc) {
  std::vector<TokenList> out(doc.n_sentences());
  for (std::size_t i = 0; i < doc.n_sentences(); ++i) {
    for (const auto& t : doc.tokens[i]) {
      if (!is_stopword(t) && !is_numeric(t)) out[i].push_back(t);
    }
  }
  return out;
}

std::uint64_t document_seed(const Document& doc, std::uint64_t seed) {
  return hash64(doc.id, seed);
}

DocumentGraph build_document_graph(const Document& doc,
                                   const EmbeddingMatrix& embeddings,
                                   const GraphBuildOptions& options) {
  const std::size_t n = doc.n_sentences();
  if (embeddings.rows() != n) {
    throw ShapeError("build_document_graph: " + std::to_string(embeddings.rows()) +
                     " embedding rows for " + std::to_string(n) + " sentences");
  }
  DocumentGraph out;
  IncidenceBlock sections = section_hyperedges(doc);

  IncidenceBlock topics;
  topics.rows = n;
  const auto content = content_tokens(doc);
  bool any_content = false;
  for (const auto& s : content) any_content = any_content || !s.empty();
  if (any_content) {
    LdaOptions lda;
    lda.topics = default_topic_count(n, options.topics_max);
    lda.alpha = options.lda_alpha;
    lda.beta = options.lda_beta;
    lda.sweeps = options.lda_sweeps;
    lda.seed = document_seed(doc, options.seed);
    TopicModel model = fit_lda(content, lda);
    topics = topic_hyperedges(model, n);
    out.topic_of_sentence = model.assignments;
    out.topics_fitted = model.num_topics;
  }

  KeywordOptions kw;
  kw.k = options.keywords;
  kw.vectors = options.keyword_vectors;
  kw.hash_seed = options.embedding_seed;
  out.keywords = extract_keywords(doc, embeddings, kw);
  IncidenceBlock keywords = keyword_hyperedges(doc, out.keywords);

  FusedColumns fused = fuse(sections, topics, keywords, options.fuse);
  out.file.article_id = doc.id;
  out.file.graph = std::move(fused.graph);
  std::size_t kept_topics = 0, kept_keywords = 0;
  for (std::size_t j = 0; j < out.file.graph.edges(); ++j) {
    const std::size_t src = fused.source_column[j];
    switch (out.file.graph.edge_types()[j]) {
      case EdgeType::kSection:
        out.file.edge_labels.push_back("section:" + doc.sections[src].name);
        break;
      case EdgeType::kTopic:
        out.file.edge_labels.push_back(
            "topic:" + std::to_string(out.topic_of_sentence[out.file.graph.members(j)[0]]));
        ++kept_topics;
        break;
      case EdgeType::kKeyword:
        out.file.edge_labels.push_back("keyword:" + out.keywords[src].phrase());
        ++kept_keywords;
        break;
    }
  }
  out.topic_edges_dropped = topics.cols() - kept_topics;
  out.keyword_edges_dropped = keywords.cols() - kept_keywords;
  out.file.graph.check_invariants(options.fuse.min_degree);
  return out;
}

std::string keywords_sidecar_json(const DocumentGraph& graph) {
  nlohmann::json j;
  j["article_id"] = graph.file.article_id;
  nlohmann::json kws = nlohmann::json::array();
  for (const auto& k : graph.keywords) {
    kws.push_back({{"phrase", k.phrase()}, {"score", k.score},
                   {"first_occurrence", k.first_occurrence}});
  }
  j["keywords"] = kws;
  j["topics_fitted"] = graph.topics_fitted;
  j["topic_of_sentence"] = graph.topic_of_sentence;
  j["topic_edges_dropped"] = graph.topic_edges_dropped;
  j["keyword_edges_dropped"] = graph.keyword_edges_dropped;
  return j.dump(2);
}

}  // namespace hegel

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

#include "hegel/keywords.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace hegel {
namespace {

bool candidate_token(const Token& t) { return !is_stopword(t) && !is_numeric(t); }

struct Candidate {
  TokenList tokens;
  std::size_t first_occurrence;
  std::vector<std::uint32_t> sentences;  // sorted, unique
};

}  // namespace

std::string Keyword::phrase() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

bool contains_contiguous(std::span<const Token> haystack,
                         std::span<const Token> needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

std::vector<Keyword> extract_keywords(const Document& doc,
                                      const EmbeddingMatrix& embeddings,
                                      const KeywordOptions& options) {
  if (options.k == 0) throw ConfigError("keyword count must be >= 1");
  if (embeddings.rows() != doc.n_sentences()) {
    throw ShapeError("extract_keywords: embedding rows do not match sentences");
  }
  const std::size_t d = embeddings.cols();

  std::map<TokenList, std::size_t> index;
  std::vector<Candidate> candidates;
  std::size_t position = 0;
  for (std::size_t s = 0; s < doc.n_sentences(); ++s) {
    const auto& tokens = doc.tokens[s];
    for (std::size_t i = 0; i < tokens.size(); ++i, ++position) {
      if (!candidate_token(tokens[i])) continue;
      auto note = [&](TokenList key) {
        auto [it, inserted] = index.try_emplace(key, candidates.size());
        if (inserted) candidates.push_back({std::move(key), position, {}});
        auto& sents = candidates[it->second].sentences;
        if (sents.empty() || sents.back() != s) {
          sents.push_back(static_cast<std::uint32_t>(s));
        }
      };
      note({tokens[i]});
      if (i + 1 < tokens.size() && candidate_token(tokens[i + 1]) &&
          tokens[i + 1] != tokens[i]) {
        note({tokens[i], tokens[i + 1]});
      }
    }
  }

  std::vector<double> centroid(d, 0.0);
  for (std::size_t r = 0; r < embeddings.rows(); ++r) {
    for (std::size_t c = 0; c < d; ++c) centroid[c] += embeddings(r, c);
  }
  double centroid_norm = 0;
  for (double& v : centroid) {
    v /= static_cast<double>(std::max<std::size_t>(1, embeddings.rows()));
    centroid_norm += v * v;
  }
  centroid_norm = std::sqrt(centroid_norm);

  std::vector<double> vec(d);
  std::vector<Keyword> scored;
  scored.reserve(candidates.size());
  for (auto& cand : candidates) {
    std::fill(vec.begin(), vec.end(), 0.0);
    if (options.vectors == KeywordVectors::kHashedTfidf) {
      for (const auto& t : cand.tokens) {
        vec[embedding_bucket(t, d, options.hash_seed)] +=
            1.0 / static_cast<double>(cand.tokens.size());
      }
    } else {
      for (auto s : cand.sentences) {
        for (std::size_t c = 0; c < d; ++c) vec[c] += embeddings(s, c);
      }
      for (double& v : vec) v /= static_cast<double>(cand.sentences.size());
    }
    double dot = 0, norm = 0;
    for (std::size_t c = 0; c < d; ++c) {
      dot += vec[c] * centroid[c];
      norm += vec[c] * vec[c];
    }
    const double denom = std::sqrt(norm) * centroid_norm;
    scored.push_back({std::move(cand.tokens), denom > 0 ? dot / denom : 0.0,
                      cand.first_occurrence});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Keyword& a, const Keyword& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.first_occurrence < b.first_occurrence;
                   });
  if (scored.size() > options.k) scored.resize(options.k);
  return scored;
}

IncidenceBlock keyword_hyperedges(const Document& doc,
                                  std::span<const Keyword> keywords) {
  IncidenceBlock block;
  block.rows = doc.n_sentences();
  for (const auto& kw : keywords) {
    std::vector<std::uint32_t> members;
    for (std::size_t s = 0; s < doc.n_sentences(); ++s) {
      if (contains_contiguous(doc.tokens[s], kw.tokens)) {
        members.push_back(static_cast<std::uint32_t>(s));
      }
    }
    block.columns.push_back(std::move(members));
  }
  return block;
}

}  // namespace hegel

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

#ifndef HEGEL_EMBED_H_
#define HEGEL_EMBED_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hegel/corpus.h"
#include "hegel/tensor.h"

namespace hegel {

using EmbeddingMatrix = Matrix<float>;

struct PositionalConfig {
  double gamma_section = 0.001;
  double gamma_sentence = 0.001;
};

// Sinusoidal encoding: entry 2i = sin(pos / 10000^(2i/d)), entry 2i+1 =
// cos(same). Odd d_model throws ConfigError.
std::vector<double> positional_encoding(std::size_t pos, std::size_t d_model);

// H0[i] = X[i] + gamma_section * PE(section[i]) + gamma_sentence *
// PE(position[i]). Indices are 0-based.
template <typename T>
Matrix<T> initial_node_reps(const Matrix<T>& x,
                            std::span<const std::size_t> section_index,
                            std::span<const std::size_t> sentence_index,
                            const PositionalConfig& config);

// Hashed per-document TF-IDF sentence vectors. Stopwords are ignored; each
// remaining token adds tf * idf to bucket hash(token, seed) % d, with
// idf = ln((1 + n) / (1 + df)) + 1 over the document's sentences. Rows are
// L2-normalized; a sentence with no content token is the zero row.
EmbeddingMatrix tfidf_embed(const Document& doc, std::size_t d,
                            std::uint64_t seed);

std::size_t embedding_bucket(std::string_view token, std::size_t d,
                             std::uint64_t seed);

// Interchange format: "HGEMB1", u32 n, u32 d, n*d float32, all little-endian.
inline constexpr char kEmbeddingMagic[] = "HGEMB1";

void write_embeddings(const std::string& path, const EmbeddingMatrix& m);
// Throws FormatError (naming the offending field) on bad magic, short data,
// trailing bytes, non-finite values, or n != expected_n.
EmbeddingMatrix load_embeddings(const std::string& path,
                                std::size_t expected_n);
EmbeddingMatrix load_embeddings(const std::string& path);

// Directory of .emb files plus manifest.json mapping article_id -> file name.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::string dir);
  bool contains(const std::string& article_id) const;
  EmbeddingMatrix load(const Document& doc) const;
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::map<std::string, std::string> files_;
};

// Filesystem-safe stem for an article id.
std::string safe_file_stem(const std::string& article_id);

}  // namespace hegel

#endif  // HEGEL_EMBED_H_

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

#include "hegel/embed.h"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "hegel/errors.h"
#include "json.hpp"

namespace hegel {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

}  // namespace

std::vector<double> positional_encoding(std::size_t pos, std::size_t d_model) {
  if (d_model == 0 || d_model % 2 != 0) {
    throw ConfigError("positional encoding needs an even d_model, got " +
                      std::to_string(d_model));
  }
  std::vector<double> pe(d_model);
  for (std::size_t i = 0; i < d_model / 2; ++i) {
    const double angle =
        static_cast<double>(pos) /
        std::pow(10000.0, static_cast<double>(2 * i) / static_cast<double>(d_model));
    pe[2 * i] = std::sin(angle);
    pe[2 * i + 1] = std::cos(angle);
  }
  return pe;
}

template <typename T>
Matrix<T> initial_node_reps(const Matrix<T>& x,
                            std::span<const std::size_t> section_index,
                            std::span<const std::size_t> sentence_index,
                            const PositionalConfig& config) {
  if (x.rows() != section_index.size() || x.rows() != sentence_index.size()) {
    throw ShapeError("initial_node_reps: " + std::to_string(x.rows()) +
                     " rows but " + std::to_string(section_index.size()) + "/" +
                     std::to_string(sentence_index.size()) + " positions");
  }
  if (config.gamma_section < 0 || config.gamma_sentence < 0) {
    throw ConfigError("positional scales must be non-negative");
  }
  Matrix<T> h = x;
  const std::size_t d = x.cols();
  std::unordered_map<std::size_t, std::vector<double>> cache;
  auto pe = [&](std::size_t pos) -> const std::vector<double>& {
    auto it = cache.find(pos);
    if (it == cache.end()) it = cache.emplace(pos, positional_encoding(pos, d)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto& sec = pe(section_index[i]);
    const auto& sen = pe(sentence_index[i]);
    for (std::size_t c = 0; c < d; ++c) {
      h(i, c) += static_cast<T>(config.gamma_section * sec[c] +
                                config.gamma_sentence * sen[c]);
    }
  }
  return h;
}

template Matrix<float> initial_node_reps(const Matrix<float>&,
                                         std::span<const std::size_t>,
                                         std::span<const std::size_t>,
                                         const PositionalConfig&);
template Matrix<double> initial_node_reps(const Matrix<double>&,
                                          std::span<const std::size_t>,
                                          std::span<const std::size_t>,
                                          const PositionalConfig&);

std::size_t embedding_bucket(std::string_view token, std::size_t d,
                             std::uint64_t seed) {
  return static_cast<std::size_t>(hash64(token, seed) % d);
}

EmbeddingMatrix tfidf_embed(const Document& doc, std::size_t d,
                            std::uint64_t seed) {
  if (d < 16) throw ConfigError("tfidf_embed needs d >= 16");
  const std::size_t n = doc.n_sentences();
  std::unordered_map<std::string_view, std::size_t> df;
  std::vector<std::unordered_map<std::string_view, std::size_t>> tf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& token : doc.tokens[i]) {
      if (is_stopword(token)) continue;
      if (tf[i][token]++ == 0) ++df[token];
    }
  }
  EmbeddingMatrix out(n, d);
  std::vector<double> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    // Accumulate in token order so the float sums do not depend on hash-map
    // iteration order.
    for (const auto& token : doc.tokens[i]) {
      if (is_stopword(token)) continue;
      auto it = tf[i].find(token);
      if (it == tf[i].end()) continue;
      const double idf =
          std::log((1.0 + n) / (1.0 + static_cast<double>(df[token]))) + 1.0;
      row[embedding_bucket(token, d, seed)] += static_cast<double>(it->second) * idf;
      tf[i].erase(it);
    }
    double norm = 0;
    for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    for (std::size_t c = 0; c < d; ++c) out(i, c) = static_cast<float>(row[c] / norm);
  }
  return out;
}

void write_embeddings(const std::string& path, const EmbeddingMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(kEmbeddingMagic, 6);
  write_u32(out, static_cast<std::uint32_t>(m.rows()));
  write_u32(out, static_cast<std::uint32_t>(m.cols()));
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(float)));
  if (!out) throw IoError("write failed for " + path);
}

EmbeddingMatrix load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file " + path);
  char magic[6];
  if (!in.read(magic, 6)) throw FormatError(path + ": file too short for magic");
  if (std::memcmp(magic, kEmbeddingMagic, 6) != 0) {
    throw FormatError(path + ": bad magic (expected HGEMB1)");
  }
  std::uint32_t n = 0, d = 0;
  if (!in.read(reinterpret_cast<char*>(&n), 4)) throw FormatError(path + ": missing field n");
  if (!in.read(reinterpret_cast<char*>(&d), 4)) throw FormatError(path + ": missing field d");
  std::vector<float> data(static_cast<std::size_t>(n) * d);
  if (!in.read(reinterpret_cast<char*>(data.data()),
               static_cast<std::streamsize>(data.size() * sizeof(float)))) {
    throw FormatError(path + ": data section shorter than n*d floats");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError(path + ": trailing bytes after n*d floats");
  }
  for (float v : data) {
    if (!std::isfinite(v)) throw FormatError(path + ": non-finite value in data");
  }
  return EmbeddingMatrix(n, d, std::move(data));
}

EmbeddingMatrix load_embeddings(const std::string& path,
                                std::size_t expected_n) {
  EmbeddingMatrix m = load_embeddings(path);
  if (m.rows() != expected_n) {
    throw FormatError(path + ": field n is " + std::to_string(m.rows()) +
                      " but the document has " + std::to_string(expected_n) +
                      " sentences");
  }
  return m;
}

std::string safe_file_stem(const std::string& article_id) {
  std::string out;
  for (unsigned char c : article_id) {
    const bool ok = std::isalnum(c) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? static_cast<char>(c) : '_');
  }
  if (out.empty() || out[0] == '.') out.insert(out.begin(), '_');
  // Distinct ids may sanitize to the same stem.
  if (out != article_id) out += "-" + hex64(hash64(article_id, 0)).substr(0, 8);
  return out;
}

EmbeddingStore::EmbeddingStore(std::string dir) : dir_(std::move(dir)) {
  const auto manifest = std::filesystem::path(dir_) / "manifest.json";
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open " + manifest.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }
  if (!j.is_object()) throw FormatError(manifest.string() + ": expected an object");
  for (const auto& [id, file] : j.items()) {
    if (!file.is_string()) throw FormatError(manifest.string() + ": entry " + id);
    files_[id] = file.get<std::string>();
  }
}

bool EmbeddingStore::contains(const std::string& article_id) const {
  return files_.count(article_id) > 0;
}

EmbeddingMatrix EmbeddingStore::load(const Document& doc) const {
  auto it = files_.find(doc.id);
  if (it == files_.end()) {
    throw IoError("no embeddings for '" + doc.id + "' in " + dir_);
  }
  return load_embeddings((std::filesystem::path(dir_) / it->second).string(),
                         doc.n_sentences());
}

}  // namespace hegel

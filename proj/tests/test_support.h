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

#ifndef HEGEL_TESTS_TEST_SUPPORT_H_
#define HEGEL_TESTS_TEST_SUPPORT_H_

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <unistd.h>

#include "hegel/autograd.h"
#include "hegel/corpus.h"
#include "hegel/embed.h"
#include "hegel/graph_builder.h"
#include "hegel/hypergraph.h"
#include "hegel/model.h"
#include "hegel/oracle.h"
#include "hegel/tensor.h"
#include "hegel/trainer.h"

namespace hegel::testing {

inline Matrix<double> random_matrix(std::size_t r, std::size_t c, Rng& rng,
                                    double lo = -1, double hi = 1) {
  Matrix<double> m(r, c);
  for (auto& v : m.storage()) v = rng.uniform(lo, hi);
  return m;
}

// |a - n| / max(|a|, |n|), with gradients below `floor` in both entries
// compared absolutely instead.
inline double gradient_error(double analytic, double numeric, double floor = 1e-8) {
  const double diff = std::abs(analytic - numeric);
  const double scale = std::max(std::abs(analytic), std::abs(numeric));
  if (scale < floor) return diff < floor ? 0.0 : diff;
  return diff / scale;
}

// Worst gradient_error over every entry of `x`, comparing the analytic
// gradient `grad` with central differences of `f` at step h.
inline double max_gradient_error(Matrix<double>& x, const Matrix<double>& grad,
                                 const std::function<double()>& f, double h = 1e-5) {
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x.data()[i];
    x.data()[i] = saved + h;
    const double up = f();
    x.data()[i] = saved - h;
    const double down = f();
    x.data()[i] = saved;
    worst = std::max(worst, gradient_error(grad.data()[i], (up - down) / (2 * h)));
  }
  return worst;
}

// Random hypergraph on n nodes with m edges where every node is covered: the
// first edge family partitions the nodes, the rest are random subsets.
inline Hypergraph random_hypergraph(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<std::vector<std::uint32_t>> cols(m);
  std::vector<EdgeType> types(m);
  const std::size_t sections = std::max<std::size_t>(1, std::min(m, 1 + rng.below(3)));
  for (std::size_t i = 0; i < n; ++i) {
    cols[rng.below(sections)].push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (j < sections) {
      types[j] = EdgeType::kSection;
      if (cols[j].empty()) cols[j].push_back(static_cast<std::uint32_t>(rng.below(n)));
      continue;
    }
    types[j] = rng.below(2) ? EdgeType::kTopic : EdgeType::kKeyword;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < 0.3) cols[j].push_back(static_cast<std::uint32_t>(i));
    }
    if (cols[j].empty()) cols[j].push_back(static_cast<std::uint32_t>(rng.below(n)));
  }
  return Hypergraph(n, std::move(cols), std::move(types));
}

inline Document make_document(const std::vector<std::vector<std::string>>& sections,
                              const std::vector<std::string>& abstract,
                              const std::string& id = "doc") {
  nlohmann::json raw;
  raw["article_id"] = id;
  raw["sections"] = sections;
  std::vector<std::string> names;
  for (std::size_t s = 0; s < sections.size(); ++s) names.push_back("sec" + std::to_string(s));
  raw["section_names"] = names;
  raw["abstract_text"] = abstract;
  return validate(raw);
}

// In-memory training sample: tfidf embeddings, freshly built graph, oracle
// labels.
inline Sample make_sample(const Document& doc, std::size_t input_dim,
                          const GraphBuildOptions& graph_options = {},
                          const PositionalConfig& positional = {}) {
  Sample s;
  s.doc = doc;
  const EmbeddingMatrix emb = tfidf_embed(doc, input_dim, graph_options.embedding_seed);
  s.graph = build_document_graph(doc, emb, graph_options).file.graph;
  s.inputs = prepare_inputs<float>(doc, emb, positional);
  for (int y : greedy_oracle(doc).labels) s.labels.push_back(static_cast<float>(y));
  return s;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("hegel-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace hegel::testing

#endif  // HEGEL_TESTS_TEST_SUPPORT_H_

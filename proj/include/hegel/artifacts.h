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

#ifndef HEGEL_ARTIFACTS_H_
#define HEGEL_ARTIFACTS_H_

// File layout shared by the pipeline stages: where graph caches, label files
// and run manifests live, and how a document's sample is reassembled from
// them.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hegel/embed.h"
#include "hegel/graph_builder.h"
#include "hegel/oracle.h"
#include "hegel/trainer.h"
#include "json.hpp"

namespace hegel {

inline constexpr char kToolVersion[] = "0.3.0";

// "tfidf" (hashed TF-IDF at `dim`) or a directory written by the embedding
// exporter (HGEMB1 files plus manifest.json).
class EmbeddingSource {
 public:
  EmbeddingSource(const std::string& spec, std::size_t dim, std::uint64_t seed);

  bool is_tfidf() const { return !store_; }
  std::size_t dim() const { return dim_; }
  const std::string& spec() const { return spec_; }
  // n x dim; throws ShapeError if an exported matrix has another width.
  EmbeddingMatrix embed(const Document& doc) const;

 private:
  std::string spec_;
  std::size_t dim_;
  std::uint64_t seed_;
  std::shared_ptr<EmbeddingStore> store_;
};

std::string graph_path(const std::string& dir, const std::string& article_id);
std::string keywords_path(const std::string& dir, const std::string& article_id);

// Labels file: one JSON object per line with article_id, labels, selected,
// objective.
std::string label_record(const std::string& article_id, const LabelVector& labels);
std::map<std::string, std::vector<float>> read_labels(const std::string& path);

// Records what produced an artifact. `hash` covers command, options and
// input content hashes, never paths or timestamps, so equal inputs give an
// equal hash.
struct RunManifest {
  std::string command;
  nlohmann::json options = nlohmann::json::object();
  std::map<std::string, std::string> inputs;  // path -> content hash
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string created;  // ISO-8601 UTC

  void add_input(const std::string& path);
  std::string hash() const;
  nlohmann::json to_json() const;
};

std::string manifest_path(const std::string& artifact);
void write_manifest(const std::string& artifact, const RunManifest& manifest);
// True when `artifact` and its manifest exist and the recorded hash matches.
bool cache_hit(const std::string& artifact, const RunManifest& manifest);

std::string utc_timestamp();

// Reassembles training/inference samples. Missing graph caches or labels are
// reported as IoError naming the pipeline step that produces them. `labels`
// may be null for inference, in which case labels are left empty.
std::vector<Sample> assemble_samples(
    const std::vector<Document>& docs, const std::string& graph_dir,
    const EmbeddingSource& embeddings, const PositionalConfig& positional,
    const std::map<std::string, std::vector<float>>* labels,
    std::size_t threads = 0);

}  // namespace hegel

#endif  // HEGEL_ARTIFACTS_H_

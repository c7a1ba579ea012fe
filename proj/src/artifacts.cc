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

#include "hegel/artifacts.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "hegel/parallel.h"
#include "hegel/text.h"

namespace hegel {

namespace fs = std::filesystem;

EmbeddingSource::EmbeddingSource(const std::string& spec, std::size_t dim,
                                 std::uint64_t seed)
    : spec_(spec), dim_(dim), seed_(seed) {
  if (spec != "tfidf") store_ = std::make_shared<EmbeddingStore>(spec);
}

EmbeddingMatrix EmbeddingSource::embed(const Document& doc) const {
  if (!store_) return tfidf_embed(doc, dim_, seed_);
  EmbeddingMatrix m = store_->load(doc);
  if (m.cols() != dim_) {
    throw ShapeError("embeddings for '" + doc.id + "' have width " +
                     std::to_string(m.cols()) + ", expected " + std::to_string(dim_));
  }
  return m;
}

std::string graph_path(const std::string& dir, const std::string& article_id) {
  return (fs::path(dir) / (safe_file_stem(article_id) + ".graph")).string();
}

std::string keywords_path(const std::string& dir, const std::string& article_id) {
  return (fs::path(dir) / (safe_file_stem(article_id) + ".keywords.json")).string();
}

std::string label_record(const std::string& article_id, const LabelVector& labels) {
  nlohmann::json j;
  j["article_id"] = article_id;
  j["labels"] = labels.labels;
  j["selected"] = labels.selected_order;
  j["objective"] = labels.objective_trace.empty() ? 0.0 : labels.objective_trace.back();
  return j.dump();
}

std::map<std::string, std::vector<float>> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels file " + path + " (run `hegel oracle` first)");
  std::map<std::string, std::vector<float>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      std::vector<float> labels;
      for (const auto& v : j.at("labels")) labels.push_back(v.get<int>() != 0 ? 1.f : 0.f);
      out[j.at("article_id").get<std::string>()] = std::move(labels);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": " + e.what(), line_no);
    }
  }
  return out;
}

void RunManifest::add_input(const std::string& path) {
  if (path == "tfidf" || path.empty()) return;
  if (fs::is_directory(path)) {
    const auto m = fs::path(path) / "manifest.json";
    inputs[path] = fs::exists(m) ? hex64(hash_file(m.string())) : "dir";
  } else {
    inputs[path] = hex64(hash_file(path));
  }
}

std::string RunManifest::hash() const {
  nlohmann::json key;
  key["command"] = command;
  key["options"] = options;
  std::vector<std::string> contents;
  for (const auto& [path, h] : inputs) contents.push_back(h);
  key["inputs"] = contents;
  key["seed"] = seed;
  key["tool_version"] = tool_version;
  return hex64(hash64(key.dump(), 0x68656765ULL));
}

nlohmann::json RunManifest::to_json() const {
  return {{"hash", hash()},       {"command", command}, {"options", options},
          {"inputs", inputs},     {"seed", seed},       {"tool_version", tool_version},
          {"created", created}};
}

std::string manifest_path(const std::string& artifact) {
  fs::path p(artifact);
  if (fs::is_directory(p)) return (p / "run.manifest.json").string();
  return artifact + ".manifest.json";
}

void write_manifest(const std::string& artifact, const RunManifest& manifest) {
  std::ofstream out(manifest_path(artifact), std::ios::trunc);
  if (!out) throw IoError("cannot write " + manifest_path(artifact));
  out << manifest.to_json().dump(2) << '\n';
}

bool cache_hit(const std::string& artifact, const RunManifest& manifest) {
  if (!fs::exists(artifact)) return false;
  std::ifstream in(manifest_path(artifact));
  if (!in) return false;
  try {
    nlohmann::json j;
    in >> j;
    return j.value("hash", "") == manifest.hash();
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<Sample> assemble_samples(
    const std::vector<Document>& docs, const std::string& graph_dir,
    const EmbeddingSource& embeddings, const PositionalConfig& positional,
    const std::map<std::string, std::vector<float>>* labels, std::size_t threads) {
  std::vector<Sample> samples(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    const Document& doc = docs[i];
    Sample& s = samples[i];
    s.doc = doc;
    const std::string gp = graph_path(graph_dir, doc.id);
    if (!fs::exists(gp)) {
      throw IoError("no graph cache for '" + doc.id + "' at " + gp +
                    " (run `hegel build-graph` first)");
    }
    GraphFile gf = read_graph(gp);
    if (gf.article_id != doc.id || gf.graph.nodes() != doc.n_sentences()) {
      throw FormatError(gp + " was built for a different document or sentence count");
    }
    s.graph = std::move(gf.graph);
    s.inputs = prepare_inputs<float>(doc, embeddings.embed(doc), positional);
    if (labels) {
      auto it = labels->find(doc.id);
      if (it == labels->end()) {
        throw IoError("no oracle labels for '" + doc.id + "' (run `hegel oracle` first)");
      }
      if (it->second.size() != doc.n_sentences()) {
        throw FormatError("labels for '" + doc.id + "' cover " +
                          std::to_string(it->second.size()) + " sentences, document has " +
                          std::to_string(doc.n_sentences()));
      }
      s.labels = it->second;
    }
  });
  return samples;
}

}  // namespace hegel

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

#include "hegel/hypergraph.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hegel {

bool IncidenceBlock::at(std::size_t row, std::size_t col) const {
  const auto& c = columns.at(col);
  return std::binary_search(c.begin(), c.end(), static_cast<std::uint32_t>(row));
}

std::vector<std::size_t> IncidenceBlock::row_sums() const {
  std::vector<std::size_t> sums(rows, 0);
  for (const auto& c : columns) {
    for (auto r : c) ++sums[r];
  }
  return sums;
}

const char* edge_type_name(EdgeType type) {
  switch (type) {
    case EdgeType::kSection:
      return "section";
    case EdgeType::kTopic:
      return "topic";
    case EdgeType::kKeyword:
      return "keyword";
  }
  return "unknown";
}

EdgeType parse_edge_type(const std::string& name) {
  if (name == "section") return EdgeType::kSection;
  if (name == "topic") return EdgeType::kTopic;
  if (name == "keyword") return EdgeType::kKeyword;
  throw FormatError("unknown edge type '" + name + "'");
}

Hypergraph::Hypergraph(std::size_t n,
                       std::vector<std::vector<std::uint32_t>> columns,
                       std::vector<EdgeType> types)
    : n_(n), types_(std::move(types)) {
  if (columns.size() != types_.size()) {
    throw ShapeError("hypergraph: " + std::to_string(columns.size()) +
                     " columns but " + std::to_string(types_.size()) + " types");
  }
  std::vector<std::vector<std::uint32_t>> per_node(n);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& col = columns[j];
    for (std::size_t q = 0; q < col.size(); ++q) {
      if (col[q] >= n) throw ShapeError("hypergraph: row index out of range");
      if (q > 0 && col[q] <= col[q - 1]) {
        throw ShapeError("hypergraph: column members must be sorted and unique");
      }
      per_node[col[q]].push_back(static_cast<std::uint32_t>(j));
    }
    edge_members_.indices.insert(edge_members_.indices.end(), col.begin(), col.end());
    edge_members_.offsets.push_back(
        static_cast<std::uint32_t>(edge_members_.indices.size()));
  }
  for (const auto& edges : per_node) {
    node_edges_.indices.insert(node_edges_.indices.end(), edges.begin(), edges.end());
    node_edges_.offsets.push_back(
        static_cast<std::uint32_t>(node_edges_.indices.size()));
  }
}

bool Hypergraph::at(std::size_t node, std::size_t edge) const {
  auto m = members(edge);
  return std::binary_search(m.begin(), m.end(), static_cast<std::uint32_t>(node));
}

Hypergraph Hypergraph::permute_nodes(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw ShapeError("permute_nodes: wrong permutation size");
  std::vector<std::uint32_t> new_index(n_);
  for (std::size_t i = 0; i < n_; ++i) new_index[perm[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::vector<std::uint32_t>> columns(edges());
  for (std::size_t j = 0; j < edges(); ++j) {
    for (auto v : members(j)) columns[j].push_back(new_index[v]);
    std::sort(columns[j].begin(), columns[j].end());
  }
  return Hypergraph(n_, std::move(columns), types_);
}

void Hypergraph::check_invariants(std::size_t min_degree) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (incident(i).empty()) {
      throw ShapeError("hypergraph: node " + std::to_string(i) + " is isolated");
    }
  }
  for (std::size_t j = 0; j < edges(); ++j) {
    if (degree(j) == 0) throw ShapeError("hypergraph: edge " + std::to_string(j) + " is empty");
    if (types_[j] != EdgeType::kSection && degree(j) < min_degree) {
      throw ShapeError("hypergraph: edge " + std::to_string(j) + " below min degree");
    }
  }
}

bool Hypergraph::operator==(const Hypergraph& other) const {
  return n_ == other.n_ && types_ == other.types_ &&
         edge_members_.offsets == other.edge_members_.offsets &&
         edge_members_.indices == other.edge_members_.indices;
}

IncidenceBlock section_hyperedges(const Document& doc) {
  IncidenceBlock block;
  block.rows = doc.n_sentences();
  for (const auto& section : doc.sections) {
    std::vector<std::uint32_t> members;
    for (std::size_t i = section.begin; i < section.end; ++i) {
      members.push_back(static_cast<std::uint32_t>(i));
    }
    block.columns.push_back(std::move(members));
  }
  return block;
}

FusedColumns fuse(const IncidenceBlock& sections, const IncidenceBlock& topics,
                  const IncidenceBlock& keywords, const FuseOptions& options) {
  const std::size_t n = sections.rows;
  if (topics.rows != n || keywords.rows != n) {
    throw ShapeError("fuse: blocks have " + std::to_string(n) + "/" +
                     std::to_string(topics.rows) + "/" +
                     std::to_string(keywords.rows) + " rows");
  }
  std::vector<std::vector<std::uint32_t>> columns;
  std::vector<EdgeType> types;
  std::vector<std::size_t> source;
  for (std::size_t j = 0; j < sections.cols(); ++j) {
    columns.push_back(sections.columns[j]);
    types.push_back(EdgeType::kSection);
    source.push_back(j);
  }
  auto filtered = [&](const IncidenceBlock& block, EdgeType type) {
    for (std::size_t j = 0; j < block.cols(); ++j) {
      const std::size_t deg = block.columns[j].size();
      if (deg < options.min_degree || deg > options.max_degree) continue;
      columns.push_back(block.columns[j]);
      types.push_back(type);
      source.push_back(j);
    }
  };
  filtered(topics, EdgeType::kTopic);
  filtered(keywords, EdgeType::kKeyword);
  return {Hypergraph(n, std::move(columns), std::move(types)), std::move(source)};
}

std::string serialize_graph(const GraphFile& file) {
  const Hypergraph& g = file.graph;
  nlohmann::json header;
  header["format"] = "hegel-graph/1";
  header["article_id"] = file.article_id;
  header["n"] = g.nodes();
  header["m"] = g.edges();
  std::vector<std::string> types;
  std::vector<std::size_t> degrees;
  for (std::size_t j = 0; j < g.edges(); ++j) {
    types.push_back(edge_type_name(g.edge_types()[j]));
    degrees.push_back(g.degree(j));
  }
  header["edge_types"] = types;
  header["degrees"] = degrees;
  header["edge_labels"] = file.edge_labels;
  header["manifest"] = file.manifest;
  std::string out = header.dump();
  out.push_back('\n');
  const std::size_t row_bytes = (g.edges() + 7) / 8;
  std::string rows(g.nodes() * row_bytes, '\0');
  for (std::size_t j = 0; j < g.edges(); ++j) {
    for (auto i : g.members(j)) {
      rows[i * row_bytes + j / 8] |= static_cast<char>(1u << (j % 8));
    }
  }
  return out + rows;
}

GraphFile parse_graph(const std::string& bytes) {
  const auto eol = bytes.find('\n');
  if (eol == std::string::npos) throw FormatError("graph file: missing header line");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(0, eol));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("graph file header: ") + e.what());
  }
  if (header.value("format", "") != "hegel-graph/1") {
    throw FormatError("graph file: unsupported format tag");
  }
  GraphFile file;
  std::size_t n = 0, m = 0;
  std::vector<std::string> type_names;
  std::vector<std::size_t> degrees;
  try {
    file.article_id = header.at("article_id").get<std::string>();
    n = header.at("n").get<std::size_t>();
    m = header.at("m").get<std::size_t>();
    type_names = header.at("edge_types").get<std::vector<std::string>>();
    degrees = header.at("degrees").get<std::vector<std::size_t>>();
    file.edge_labels = header.value("edge_labels", std::vector<std::string>{});
    file.manifest = header.value("manifest", "");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("graph file header field: ") + e.what());
  }
  if (type_names.size() != m || degrees.size() != m) {
    throw FormatError("graph file: edge_types/degrees length differs from m");
  }
  const std::size_t row_bytes = (m + 7) / 8;
  if (bytes.size() - eol - 1 != n * row_bytes) {
    throw FormatError("graph file: bitset section has " +
                      std::to_string(bytes.size() - eol - 1) + " bytes, expected " +
                      std::to_string(n * row_bytes));
  }
  const char* rows = bytes.data() + eol + 1;
  std::vector<std::vector<std::uint32_t>> columns(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (static_cast<unsigned char>(rows[i * row_bytes + j / 8]) & (1u << (j % 8))) {
        columns[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  std::vector<EdgeType> types;
  for (std::size_t j = 0; j < m; ++j) {
    types.push_back(parse_edge_type(type_names[j]));
    if (columns[j].size() != degrees[j]) {
      throw FormatError("graph file: degree of edge " + std::to_string(j) +
                        " disagrees with bitset");
    }
  }
  file.graph = Hypergraph(n, std::move(columns), std::move(types));
  return file;
}

void write_graph(const std::string& path, const GraphFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  const std::string bytes = serialize_graph(file);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

GraphFile read_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace hegel

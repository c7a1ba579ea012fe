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

#ifndef HEGEL_HYPERGRAPH_H_
#define HEGEL_HYPERGRAPH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hegel/autograd.h"
#include "hegel/corpus.h"
#include "hegel/incidence.h"

namespace hegel {

enum class EdgeType : std::uint8_t { kSection = 0, kTopic = 1, kKeyword = 2 };

const char* edge_type_name(EdgeType type);
EdgeType parse_edge_type(const std::string& name);

// Sentence hypergraph: n nodes, m typed hyperedges. Stored both as member
// lists per edge and as incident-edge lists per node, the two directions the
// attention layers iterate.
class Hypergraph {
 public:
  Hypergraph() = default;
  // Columns must hold sorted, in-range row indices.
  Hypergraph(std::size_t n, std::vector<std::vector<std::uint32_t>> columns,
             std::vector<EdgeType> types);

  std::size_t nodes() const { return n_; }
  std::size_t edges() const { return types_.size(); }
  const std::vector<EdgeType>& edge_types() const { return types_; }

  const Adjacency& edge_members() const { return edge_members_; }
  const Adjacency& node_edges() const { return node_edges_; }
  std::span<const std::uint32_t> members(std::size_t edge) const {
    return edge_members_.sources(edge);
  }
  std::span<const std::uint32_t> incident(std::size_t node) const {
    return node_edges_.sources(node);
  }
  std::size_t degree(std::size_t edge) const { return members(edge).size(); }
  bool at(std::size_t node, std::size_t edge) const;

  // Rows reordered so that new row i is old row perm[i].
  Hypergraph permute_nodes(std::span<const std::size_t> perm) const;
  // Throws ShapeError unless every node has an incident edge and every
  // non-section edge has at least `min_degree` members.
  void check_invariants(std::size_t min_degree = 1) const;

  bool operator==(const Hypergraph& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<EdgeType> types_;
  Adjacency edge_members_;
  Adjacency node_edges_;
};

// One column per section, in order.
IncidenceBlock section_hyperedges(const Document& doc);

struct FuseOptions {
  std::size_t min_degree = 5;
  std::size_t max_degree = 25;
};

struct FusedColumns {
  Hypergraph graph;
  // Column of the source block for each surviving edge.
  std::vector<std::size_t> source_column;
};

// Concatenates sec | topic | keyword after dropping topic and keyword columns
// whose degree is outside [min_degree, max_degree]. Section columns are kept
// unconditionally.
FusedColumns fuse(const IncidenceBlock& sections, const IncidenceBlock& topics,
                  const IncidenceBlock& keywords, const FuseOptions& options = {});

// Graph cache: one JSON header line, then n rows of ceil(m/8) bytes with bit
// j % 8 of byte j / 8 set when node i belongs to edge j.
struct GraphFile {
  std::string article_id;
  Hypergraph graph;
  std::vector<std::string> edge_labels;
  std::string manifest;
};

std::string serialize_graph(const GraphFile& file);
GraphFile parse_graph(const std::string& bytes);
void write_graph(const std::string& path, const GraphFile& file);
GraphFile read_graph(const std::string& path);

}  // namespace hegel

#endif  // HEGEL_HYPERGRAPH_H_

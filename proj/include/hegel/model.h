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

#ifndef HEGEL_MODEL_H_
#define HEGEL_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hegel/autograd.h"
#include "hegel/embed.h"
#include "hegel/hypergraph.h"
#include "json.hpp"

namespace hegel {

struct ModelConfig {
  std::size_t input_dim = 768;
  std::size_t width = 1024;
  std::size_t layers = 2;
  std::size_t heads = 8;
  std::size_t head_dim = 128;
  std::size_t ffn_dim = 4096;
  std::size_t output_hidden = 4096;
  double leaky_slope = 0.01;
  double dropout = 0.3;
  PositionalConfig positional;

  // Throws ConfigError unless heads * head_dim == width and sizes are positive.
  void validate() const;
  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

// Tape bindings for one attention head. w_ae is 2*head_dim x 1: the first
// half scores the edge term, the second half the node term.
template <typename T>
struct HeadVars {
  Var<T> W_h, w_ah, W_e, w_ae;
};

template <typename T>
struct LayerVars {
  std::vector<HeadVars<T>> heads;
  Var<T> W_O;
  Var<T> ffn_W1, ffn_b1, ffn_W2, ffn_b2;
  Var<T> ln1_gamma, ln1_beta, ln2_gamma, ln2_beta;
};

template <typename T>
struct ModelVars {
  Var<T> input_W, input_b;
  std::vector<LayerVars<T>> layers;
  Var<T> W_p1, W_p2;
};

// alpha is laid out like graph.edge_members().indices, beta like
// graph.node_edges().indices.
template <typename T>
struct HeadTrace {
  std::vector<T> alpha;
  std::vector<T> beta;
};

template <typename T>
struct ForwardTrace {
  std::vector<std::vector<HeadTrace<T>>> layers;  // [layer][head]
  std::vector<T> scores;
};

struct ForwardOptions {
  bool training = false;
  Rng* dropout_rng = nullptr;  // required for dropout when training
};

// Edge phase for one head, given P = H W_h (n x dh):
//   g_j = LeakyReLU(sum_{k in e_j} alpha_jk P_k),
//   alpha_j = softmax over members of w_ah . LeakyReLU(P_k).
template <typename T>
Var<T> hga_edge_update(Var<T> projected, Var<T> w_ah, const Hypergraph& graph,
                       T slope, std::vector<T>* alpha = nullptr);

// Node phase for one head, given edge reps G (m x dh) and P = H W_h:
//   h_i = LeakyReLU(sum_{k incident to i} beta_ki Q_k), Q = G W_e,
//   beta_i = softmax over incident edges of w_ae . [LeakyReLU(Q_k) | LeakyReLU(P_i)].
template <typename T>
Var<T> hga_node_update(Var<T> edges, Var<T> projected, Var<T> W_e, Var<T> w_ae,
                       const Hypergraph& graph, T slope,
                       std::vector<T>* beta = nullptr);

// One head: edge phase then node phase. Output n x dh.
template <typename T>
Var<T> hga_head(Var<T> H, const HeadVars<T>& head, const Hypergraph& graph,
                T slope, HeadTrace<T>* trace = nullptr);

// LeakyReLU(concat(heads) W_O). Output n x width.
template <typename T>
Var<T> mh_hga(Var<T> H, std::span<const HeadVars<T>> heads, Var<T> W_O,
              const Hypergraph& graph, T slope,
              std::vector<HeadTrace<T>>* traces = nullptr);

// H' = LN(drop(MH-HGA(H)) + H); out = LN(drop(FFN(H')) + H').
template <typename T>
Var<T> transformer_layer(Var<T> H, const LayerVars<T>& layer,
                         const Hypergraph& graph, T slope, double dropout,
                         Rng* rng, std::vector<HeadTrace<T>>* traces = nullptr);

// sigmoid(LeakyReLU(H W_p1) W_p2), n x 1.
template <typename T>
Var<T> predict_scores(Var<T> H, Var<T> W_p1, Var<T> W_p2, T slope);

template <typename T>
Var<T> bce_loss(Var<T> scores, std::span<const T> labels) {
  return bce(scores, labels);
}

template <typename T>
class HegelModel {
 public:
  // Glorot-uniform weights, zero biases, unit LayerNorm gains.
  HegelModel(const ModelConfig& config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  ParameterSet<T>& params() { return params_; }
  const ParameterSet<T>& params() const { return params_; }

  ModelVars<T> bind(Tape<T>& tape) const;

  // `inputs` is n x input_dim with positional terms already added.
  Var<T> forward(Tape<T>& tape, const Matrix<T>& inputs, const Hypergraph& graph,
                 const ForwardOptions& options = {},
                 ForwardTrace<T>* trace = nullptr) const;

  // Eval-mode scores on a private no-grad tape. Safe to call concurrently.
  std::vector<T> scores(const Matrix<T>& inputs, const Hypergraph& graph,
                        ForwardTrace<T>* trace = nullptr) const;

 private:
  ModelConfig config_;
  ParameterSet<T> params_;
};

// Embeddings plus hierarchical positional terms, cast to T.
template <typename T>
Matrix<T> prepare_inputs(const Document& doc, const EmbeddingMatrix& embeddings,
                         const PositionalConfig& positional);

struct AttentionShares {
  double section = 0;
  double topic = 0;
  double keyword = 0;
  std::size_t nodes = 0;  // nodes averaged over
};

// Mean beta mass per edge type over `nodes`, every layer and head. An empty
// node list averages over all nodes.
template <typename T>
AttentionShares attention_stats(const ForwardTrace<T>& trace,
                                const Hypergraph& graph,
                                std::span<const std::size_t> nodes);

}  // namespace hegel

#endif  // HEGEL_MODEL_H_

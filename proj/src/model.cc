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

#include "hegel/model.h"

#include <cmath>

namespace hegel {

void ModelConfig::validate() const {
  if (input_dim == 0 || width == 0 || layers == 0 || heads == 0 ||
      head_dim == 0 || ffn_dim == 0 || output_hidden == 0) {
    throw ConfigError("model dimensions must be positive");
  }
  if (heads * head_dim != width) {
    throw ConfigError("heads * head_dim (" + std::to_string(heads * head_dim) +
                      ") must equal width (" + std::to_string(width) + ")");
  }
  if (input_dim % 2 != 0) throw ConfigError("input_dim must be even");
  if (!(dropout >= 0 && dropout < 1)) throw ConfigError("dropout must be in [0, 1)");
  if (!(leaky_slope >= 0 && leaky_slope < 1)) {
    throw ConfigError("leaky_slope must be in [0, 1)");
  }
}

nlohmann::json ModelConfig::to_json() const {
  return {{"input_dim", input_dim},
          {"width", width},
          {"layers", layers},
          {"heads", heads},
          {"head_dim", head_dim},
          {"ffn_dim", ffn_dim},
          {"output_hidden", output_hidden},
          {"leaky_slope", leaky_slope},
          {"dropout", dropout},
          {"gamma_section", positional.gamma_section},
          {"gamma_sentence", positional.gamma_sentence}};
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  try {
    c.input_dim = j.at("input_dim").get<std::size_t>();
    c.width = j.at("width").get<std::size_t>();
    c.layers = j.at("layers").get<std::size_t>();
    c.heads = j.at("heads").get<std::size_t>();
    c.head_dim = j.at("head_dim").get<std::size_t>();
    c.ffn_dim = j.at("ffn_dim").get<std::size_t>();
    c.output_hidden = j.at("output_hidden").get<std::size_t>();
    c.leaky_slope = j.at("leaky_slope").get<double>();
    c.dropout = j.at("dropout").get<double>();
    c.positional.gamma_section = j.at("gamma_section").get<double>();
    c.positional.gamma_sentence = j.at("gamma_sentence").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model config: ") + e.what());
  }
  c.validate();
  return c;
}

template <typename T>
Var<T> hga_edge_update(Var<T> projected, Var<T> w_ah, const Hypergraph& graph,
                       T slope, std::vector<T>* alpha) {
  if (projected.rows() != graph.nodes()) {
    throw ShapeError("hga_edge_update: " + std::to_string(projected.rows()) +
                     " node rows for " + std::to_string(graph.nodes()) + " nodes");
  }
  Var<T> node_score = matmul(leaky_relu(projected, slope), w_ah);
  Var<T> pooled = incidence_attention<T>(projected, node_score, nullptr,
                                      graph.edge_members(), alpha);
  return leaky_relu(pooled, slope);
}

template <typename T>
Var<T> hga_node_update(Var<T> edges, Var<T> projected, Var<T> W_e, Var<T> w_ae,
                       const Hypergraph& graph, T slope, std::vector<T>* beta) {
  const std::size_t dh = W_e.cols();
  if (w_ae.rows() != 2 * dh || w_ae.cols() != 1) {
    throw ShapeError("hga_node_update: w_ae must be " + shape_string(2 * dh, 1));
  }
  if (edges.rows() != graph.edges() || projected.rows() != graph.nodes()) {
    throw ShapeError("hga_node_update: representation rows do not match graph");
  }
  Var<T> q = matmul(edges, W_e);
  Var<T> edge_score = matmul(leaky_relu(q, slope), slice_rows(w_ae, 0, dh));
  Var<T> node_score =
      matmul(leaky_relu(projected, slope), slice_rows(w_ae, dh, 2 * dh));
  Var<T> pooled = incidence_attention(q, edge_score, &node_score,
                                      graph.node_edges(), beta);
  return leaky_relu(pooled, slope);
}

template <typename T>
Var<T> hga_head(Var<T> H, const HeadVars<T>& head, const Hypergraph& graph,
                T slope, HeadTrace<T>* trace) {
  Var<T> projected = matmul(H, head.W_h);
  Var<T> g = hga_edge_update(projected, head.w_ah, graph, slope,
                             trace ? &trace->alpha : nullptr);
  return hga_node_update(g, projected, head.W_e, head.w_ae, graph, slope,
                         trace ? &trace->beta : nullptr);
}

template <typename T>
Var<T> mh_hga(Var<T> H, std::span<const HeadVars<T>> heads, Var<T> W_O,
              const Hypergraph& graph, T slope,
              std::vector<HeadTrace<T>>* traces) {
  if (traces) traces->assign(heads.size(), {});
  std::vector<Var<T>> outs;
  outs.reserve(heads.size());
  for (std::size_t h = 0; h < heads.size(); ++h) {
    outs.push_back(hga_head(H, heads[h], graph, slope,
                            traces ? &(*traces)[h] : nullptr));
  }
  Var<T> joined = outs.size() == 1 ? outs[0] : concat_cols<T>(outs);
  return leaky_relu(matmul(joined, W_O), slope);
}

template <typename T>
Var<T> transformer_layer(Var<T> H, const LayerVars<T>& layer,
                         const Hypergraph& graph, T slope, double dropout_rate,
                         Rng* rng, std::vector<HeadTrace<T>>* traces) {
  Var<T> attn = mh_hga<T>(H, layer.heads, layer.W_O, graph, slope, traces);
  Var<T> h1 = layer_norm(add(dropout(attn, dropout_rate, rng), H),
                         layer.ln1_gamma, layer.ln1_beta);
  Var<T> inner = leaky_relu(add_row(matmul(h1, layer.ffn_W1), layer.ffn_b1), slope);
  Var<T> ffn = add_row(matmul(inner, layer.ffn_W2), layer.ffn_b2);
  return layer_norm(add(dropout(ffn, dropout_rate, rng), h1), layer.ln2_gamma,
                    layer.ln2_beta);
}

template <typename T>
Var<T> predict_scores(Var<T> H, Var<T> W_p1, Var<T> W_p2, T slope) {
  return sigmoid(matmul(leaky_relu(matmul(H, W_p1), slope), W_p2));
}

namespace {

std::string head_name(std::size_t l, std::size_t h, const char* what) {
  return "layer" + std::to_string(l) + ".head" + std::to_string(h) + "." + what;
}

std::string layer_name(std::size_t l, const char* what) {
  return "layer" + std::to_string(l) + "." + what;
}

}  // namespace

template <typename T>
HegelModel<T>::HegelModel(const ModelConfig& config, std::uint64_t seed)
    : config_(config) {
  config_.validate();
  Rng rng(seed);
  const auto& c = config_;
  auto weight = [&](const std::string& name, std::size_t r, std::size_t k) {
    glorot_uniform(params_.add(name, r, k).value, rng);
  };
  auto fill = [&](const std::string& name, std::size_t k, T v) {
    params_.add(name, 1, k).value.fill(v);
  };
  weight("input.W", c.input_dim, c.width);
  fill("input.b", c.width, T(0));
  for (std::size_t l = 0; l < c.layers; ++l) {
    for (std::size_t h = 0; h < c.heads; ++h) {
      weight(head_name(l, h, "W_h"), c.width, c.head_dim);
      weight(head_name(l, h, "w_ah"), c.head_dim, 1);
      weight(head_name(l, h, "W_e"), c.head_dim, c.head_dim);
      weight(head_name(l, h, "w_ae"), 2 * c.head_dim, 1);
    }
    weight(layer_name(l, "W_O"), c.width, c.width);
    weight(layer_name(l, "ffn.W1"), c.width, c.ffn_dim);
    fill(layer_name(l, "ffn.b1"), c.ffn_dim, T(0));
    weight(layer_name(l, "ffn.W2"), c.ffn_dim, c.width);
    fill(layer_name(l, "ffn.b2"), c.width, T(0));
    fill(layer_name(l, "ln1.gamma"), c.width, T(1));
    fill(layer_name(l, "ln1.beta"), c.width, T(0));
    fill(layer_name(l, "ln2.gamma"), c.width, T(1));
    fill(layer_name(l, "ln2.beta"), c.width, T(0));
  }
  weight("output.W_p1", c.width, c.output_hidden);
  weight("output.W_p2", c.output_hidden, 1);
}

template <typename T>
ModelVars<T> HegelModel<T>::bind(Tape<T>& tape) const {
  // Non-const parameters let gradients land in param.grad.
  auto& ps = const_cast<ParameterSet<T>&>(params_);
  auto p = [&](const std::string& name) { return tape.param(ps.get(name)); };
  ModelVars<T> v;
  v.input_W = p("input.W");
  v.input_b = p("input.b");
  for (std::size_t l = 0; l < config_.layers; ++l) {
    LayerVars<T> layer;
    for (std::size_t h = 0; h < config_.heads; ++h) {
      layer.heads.push_back({p(head_name(l, h, "W_h")), p(head_name(l, h, "w_ah")),
                             p(head_name(l, h, "W_e")), p(head_name(l, h, "w_ae"))});
    }
    layer.W_O = p(layer_name(l, "W_O"));
    layer.ffn_W1 = p(layer_name(l, "ffn.W1"));
    layer.ffn_b1 = p(layer_name(l, "ffn.b1"));
    layer.ffn_W2 = p(layer_name(l, "ffn.W2"));
    layer.ffn_b2 = p(layer_name(l, "ffn.b2"));
    layer.ln1_gamma = p(layer_name(l, "ln1.gamma"));
    layer.ln1_beta = p(layer_name(l, "ln1.beta"));
    layer.ln2_gamma = p(layer_name(l, "ln2.gamma"));
    layer.ln2_beta = p(layer_name(l, "ln2.beta"));
    v.layers.push_back(std::move(layer));
  }
  v.W_p1 = p("output.W_p1");
  v.W_p2 = p("output.W_p2");
  return v;
}

template <typename T>
Var<T> HegelModel<T>::forward(Tape<T>& tape, const Matrix<T>& inputs,
                              const Hypergraph& graph,
                              const ForwardOptions& options,
                              ForwardTrace<T>* trace) const {
  if (inputs.rows() != graph.nodes() || inputs.cols() != config_.input_dim) {
    throw ShapeError("forward: inputs " + shape_string(inputs.rows(), inputs.cols()) +
                     " for " + std::to_string(graph.nodes()) + " nodes and input_dim " +
                     std::to_string(config_.input_dim));
  }
  const T slope = static_cast<T>(config_.leaky_slope);
  const double rate = options.training ? config_.dropout : 0.0;
  Rng* rng = options.training ? options.dropout_rng : nullptr;
  const ModelVars<T> v = bind(tape);
  Var<T> h = add_row(matmul(tape.constant(inputs), v.input_W), v.input_b);
  if (trace) trace->layers.assign(config_.layers, {});
  for (std::size_t l = 0; l < config_.layers; ++l) {
    h = transformer_layer(h, v.layers[l], graph, slope, rate, rng,
                          trace ? &trace->layers[l] : nullptr);
  }
  Var<T> y = predict_scores(h, v.W_p1, v.W_p2, slope);
  if (trace) trace->scores = y.value().storage();
  return y;
}

template <typename T>
std::vector<T> HegelModel<T>::scores(const Matrix<T>& inputs,
                                     const Hypergraph& graph,
                                     ForwardTrace<T>* trace) const {
  Tape<T> tape(/*grad_enabled=*/false);
  return forward(tape, inputs, graph, {}, trace).value().storage();
}

template <typename T>
Matrix<T> prepare_inputs(const Document& doc, const EmbeddingMatrix& embeddings,
                         const PositionalConfig& positional) {
  if (embeddings.rows() != doc.n_sentences()) {
    throw ShapeError("prepare_inputs: " + std::to_string(embeddings.rows()) +
                     " embedding rows for " + std::to_string(doc.n_sentences()) +
                     " sentences");
  }
  const auto sec = doc.section_index();
  const auto sen = doc.position_in_section();
  return initial_node_reps(embeddings.template cast<T>(), sec, sen, positional);
}

template <typename T>
AttentionShares attention_stats(const ForwardTrace<T>& trace,
                                const Hypergraph& graph,
                                std::span<const std::size_t> nodes) {
  std::vector<std::size_t> all;
  if (nodes.empty()) {
    for (std::size_t i = 0; i < graph.nodes(); ++i) all.push_back(i);
    nodes = all;
  }
  double mass[3] = {0, 0, 0};
  std::size_t count = 0;
  const Adjacency& adj = graph.node_edges();
  for (const auto& layer : trace.layers) {
    for (const auto& head : layer) {
      if (head.beta.size() != adj.indices.size()) {
        throw ShapeError("attention_stats: trace does not match graph");
      }
      for (std::size_t i : nodes) {
        for (std::size_t q = adj.offsets[i]; q < adj.offsets[i + 1]; ++q) {
          mass[static_cast<int>(graph.edge_types()[adj.indices[q]])] += head.beta[q];
        }
        ++count;
      }
    }
  }
  AttentionShares shares;
  shares.nodes = nodes.size();
  const double total = mass[0] + mass[1] + mass[2];
  if (count == 0 || total <= 0) return shares;
  shares.section = mass[0] / total;
  shares.topic = mass[1] / total;
  shares.keyword = mass[2] / total;
  return shares;
}

#define HEGEL_INSTANTIATE_MODEL(T)                                              \
  template Var<T> hga_edge_update(Var<T>, Var<T>, const Hypergraph&, T,         \
                                  std::vector<T>*);                             \
  template Var<T> hga_node_update(Var<T>, Var<T>, Var<T>, Var<T>,               \
                                  const Hypergraph&, T, std::vector<T>*);       \
  template Var<T> hga_head(Var<T>, const HeadVars<T>&, const Hypergraph&, T,    \
                           HeadTrace<T>*);                                      \
  template Var<T> mh_hga(Var<T>, std::span<const HeadVars<T>>, Var<T>,          \
                         const Hypergraph&, T, std::vector<HeadTrace<T>>*);     \
  template Var<T> transformer_layer(Var<T>, const LayerVars<T>&,                \
                                    const Hypergraph&, T, double, Rng*,         \
                                    std::vector<HeadTrace<T>>*);                \
  template Var<T> predict_scores(Var<T>, Var<T>, Var<T>, T);                    \
  template class HegelModel<T>;                                                 \
  template Matrix<T> prepare_inputs(const Document&, const EmbeddingMatrix&,    \
                                    const PositionalConfig&);                   \
  template AttentionShares attention_stats(const ForwardTrace<T>&,              \
                                           const Hypergraph&,                   \
                                           std::span<const std::size_t>);

HEGEL_INSTANTIATE_MODEL(float)
HEGEL_INSTANTIATE_MODEL(double)

#undef HEGEL_INSTANTIATE_MODEL

}  // namespace hegel

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
#include <numeric>

#include <gtest/gtest.h>

#include "test_support.h"

namespace hegel {
namespace {

using M = Matrix<double>;
constexpr double kSlope = 0.01;

double lrelu(double x) { return x > 0 ? x : kSlope * x; }

ModelConfig tiny_config(std::size_t width = 8, std::size_t heads = 2) {
  ModelConfig c;
  c.input_dim = 6;
  c.width = width;
  c.layers = 2;
  c.heads = heads;
  c.head_dim = width / heads;
  c.ffn_dim = 2 * width;
  c.output_hidden = 2 * width;
  c.dropout = 0.0;
  return c;
}

// Dense oracle for one head: explicit masked softmax over the incidence
// matrix, written without the sparse adjacency lists.
struct DenseHead {
  M P, G, Q, out, alpha, beta;  // alpha m x n, beta n x m (zero off-support)
};

DenseHead dense_head(const M& H, const M& W_h, const M& w_ah, const M& W_e, const M& w_ae,
                     const Hypergraph& g) {
  const std::size_t n = H.rows(), m = g.edges(), dh = W_h.cols();
  DenseHead r;
  auto matmul = [](const M& a, const M& b) {
    M c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  };
  auto score = [&](const M& x, std::size_t row, const M& w, std::size_t offset) {
    double s = 0;
    for (std::size_t c = 0; c < dh; ++c) s += lrelu(x(row, c)) * w(offset + c, 0);
    return s;
  };
  r.P = matmul(H, W_h);
  r.alpha = M(m, n);
  r.G = M(m, dh);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = score(r.P, k, w_ah, 0);
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < n; ++k)
      if (g.at(k, j)) members.push_back(k);
    const auto a = softmax_masked<double>(s, members);
    for (std::size_t k = 0; k < n; ++k) {
      r.alpha(j, k) = a[k];
      for (std::size_t c = 0; c < dh; ++c) r.G(j, c) += a[k] * r.P(k, c);
    }
    for (std::size_t c = 0; c < dh; ++c) r.G(j, c) = lrelu(r.G(j, c));
  }
  r.Q = matmul(r.G, W_e);
  r.beta = M(n, m);
  r.out = M(n, dh);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> s(m);
    for (std::size_t k = 0; k < m; ++k) s[k] = score(r.Q, k, w_ae, 0) + score(r.P, i, w_ae, dh);
    std::vector<std::size_t> incident;
    for (std::size_t k = 0; k < m; ++k)
      if (g.at(i, k)) incident.push_back(k);
    const auto b = softmax_masked<double>(s, incident);
    for (std::size_t k = 0; k < m; ++k) {
      r.beta(i, k) = b[k];
      for (std::size_t c = 0; c < dh; ++c) r.out(i, c) += b[k] * r.Q(k, c);
    }
    for (std::size_t c = 0; c < dh; ++c) r.out(i, c) = lrelu(r.out(i, c));
  }
  return r;
}

struct HeadFixture {
  M W_h, w_ah, W_e, w_ae;
  HeadFixture(std::size_t width, std::size_t dh, Rng& rng)
      : W_h(testing::random_matrix(width, dh, rng)),
        w_ah(testing::random_matrix(dh, 1, rng)),
        W_e(testing::random_matrix(dh, dh, rng)),
        w_ae(testing::random_matrix(2 * dh, 1, rng)) {}
  HeadVars<double> bind(Tape<double>& t) const {
    return {t.constant(W_h), t.constant(w_ah), t.constant(W_e), t.constant(w_ae)};
  }
};

TEST(EdgeUpdate, SingletonEdgeCopiesProjection) {
  Rng rng(1);
  const Hypergraph g(3, {{1}, {0, 2}}, {EdgeType::kSection, EdgeType::kSection});
  Tape<double> t(false);
  const M P = testing::random_matrix(3, 4, rng);
  std::vector<double> alpha;
  const auto G = hga_edge_update(t.constant(P), t.constant(testing::random_matrix(4, 1, rng)),
                                 g, kSlope, &alpha);
  EXPECT_EQ(alpha[0], 1.0);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_DOUBLE_EQ(G.value()(0, c), lrelu(P(1, c)));
}

TEST(EdgeUpdate, IdenticalMembersShareAttentionEvenly) {
  Rng rng(2);
  const Hypergraph g(2, {{0, 1}}, {EdgeType::kSection});
  M P(2, 3);
  for (std::size_t c = 0; c < 3; ++c) P(0, c) = P(1, c) = rng.uniform(-1, 1);
  Tape<double> t(false);
  std::vector<double> alpha;
  hga_edge_update(t.constant(P), t.constant(testing::random_matrix(3, 1, rng)), g, kSlope,
                  &alpha);
  EXPECT_DOUBLE_EQ(alpha[0], 0.5);
  EXPECT_DOUBLE_EQ(alpha[1], 0.5);
}

TEST(NodeUpdate, SingleIncidentEdgeAndSymmetricEdges) {
  Rng rng(3);
  // node 0 only in edge 0; node 1 in edges 0 and 1, which carry identical reps
  const Hypergraph g(2, {{0, 1}, {1}}, {EdgeType::kSection, EdgeType::kTopic});
  M G(2, 3);
  for (std::size_t c = 0; c < 3; ++c) G(0, c) = G(1, c) = rng.uniform(-1, 1);
  const M W_e = testing::random_matrix(3, 3, rng);
  Tape<double> t(false);
  std::vector<double> beta;
  const auto out = hga_node_update(t.constant(G), t.constant(testing::random_matrix(2, 3, rng)),
                                   t.constant(W_e), t.constant(testing::random_matrix(6, 1, rng)),
                                   g, kSlope, &beta);
  ASSERT_EQ(beta.size(), 3u);
  EXPECT_EQ(beta[0], 1.0);
  EXPECT_DOUBLE_EQ(beta[1], 0.5);
  EXPECT_DOUBLE_EQ(beta[2], 0.5);
  for (std::size_t c = 0; c < 3; ++c) {
    double q = 0;
    for (std::size_t k = 0; k < 3; ++k) q += G(0, k) * W_e(k, c);
    EXPECT_NEAR(out.value()(0, c), lrelu(q), 1e-15);
  }
}

TEST(Head, MatchesDenseMaskedSoftmaxOracle) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + rng.below(8), m = 2 + rng.below(5);
    const Hypergraph g = testing::random_hypergraph(n, m, rng);
    const HeadFixture f(6, 3, rng);
    const M H = testing::random_matrix(n, 6, rng);
    Tape<double> t(false);
    HeadTrace<double> trace;
    const auto out = hga_head(t.constant(H), f.bind(t), g, kSlope, &trace);
    const DenseHead ref = dense_head(H, f.W_h, f.w_ah, f.W_e, f.w_ae, g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < 3; ++c) ASSERT_NEAR(out.value()(i, c), ref.out(i, c), 1e-12);
    const auto& em = g.edge_members();
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t q = em.offsets[j]; q < em.offsets[j + 1]; ++q)
        ASSERT_NEAR(trace.alpha[q], ref.alpha(j, em.indices[q]), 1e-12);
    const auto& ne = g.node_edges();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = ne.offsets[i]; q < ne.offsets[i + 1]; ++q)
        ASSERT_NEAR(trace.beta[q], ref.beta(i, ne.indices[q]), 1e-12);
  }
}

TEST(MultiHead, ZeroOutputProjectionGivesZeroRows) {
  Rng rng(5);
  const Hypergraph g = testing::random_hypergraph(5, 3, rng);
  Tape<double> t(false);
  const HeadFixture a(4, 2, rng), b(4, 2, rng);
  const std::vector<HeadVars<double>> heads = {a.bind(t), b.bind(t)};
  const auto out = mh_hga<double>(t.constant(testing::random_matrix(5, 4, rng)), heads,
                                  t.constant(M(4, 4)), g, kSlope);
  for (double v : out.value().storage()) EXPECT_EQ(v, 0.0);
}

TEST(MultiHead, SingleHeadReducesToHeadThenProjection) {
  Rng rng(6);
  const Hypergraph g = testing::random_hypergraph(6, 3, rng);
  const HeadFixture f(4, 4, rng);
  const M H = testing::random_matrix(6, 4, rng), W_O = testing::random_matrix(4, 4, rng);
  Tape<double> t(false);
  const std::vector<HeadVars<double>> heads = {f.bind(t)};
  const auto out = mh_hga<double>(t.constant(H), heads, t.constant(W_O), g, kSlope);
  const auto ref = leaky_relu(matmul(hga_head(t.constant(H), heads[0], g, kSlope), t.constant(W_O)),
                              kSlope);
  EXPECT_EQ(out.value(), ref.value());
}

void zero_layer_branches(HegelModel<double>& model, std::size_t layer) {
  auto& p = model.params();
  const std::string prefix = "layer" + std::to_string(layer) + ".";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string& name = p[i].name;
    if (name.rfind(prefix, 0) == 0 && name.find(".ln") == std::string::npos) p[i].value.fill(0);
  }
}

M layer_norm_rows(const M& x) {
  M y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double mu = 0, var = 0;
    for (double v : x.row(i)) mu += v;
    mu /= x.cols();
    for (double v : x.row(i)) var += (v - mu) * (v - mu);
    var /= x.cols();
    for (std::size_t c = 0; c < x.cols(); ++c) y(i, c) = (x(i, c) - mu) / std::sqrt(var + 1e-5);
  }
  return y;
}

TEST(TransformerLayer, ZeroBranchesGiveDoubleLayerNorm) {
  Rng rng(7);
  HegelModel<double> model(tiny_config(), 1);
  zero_layer_branches(model, 0);
  const Hypergraph g = testing::random_hypergraph(5, 3, rng);
  const M H = testing::random_matrix(5, 8, rng, -3, 3);
  Tape<double> t(false);
  const auto vars = model.bind(t);
  const auto out = transformer_layer(t.constant(H), vars.layers[0], g, kSlope, 0.0, nullptr);
  const M ref = layer_norm_rows(layer_norm_rows(H));
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(out.value().data()[i], ref.data()[i], 1e-12);
}

TEST(TransformerLayer, HandTraceOnWidthTwoMiniature) {
  // One node, one edge, one head of width 2: both softmaxes are trivially 1.
  ModelConfig c = tiny_config(2, 1);
  HegelModel<double> model(c, 3);
  auto& p = model.params();
  const M W_h(2, 2, std::vector<double>{1.0, -0.5, 0.25, 2.0});
  const M W_e(2, 2, std::vector<double>{0.5, 0.0, -1.0, 1.5});
  const M W_O(2, 2, std::vector<double>{1.0, 0.2, -0.3, 0.7});
  p.get("layer0.head0.W_h").value = W_h;
  p.get("layer0.head0.W_e").value = W_e;
  p.get("layer0.W_O").value = W_O;
  p.get("layer0.ffn.W1").value = M(2, 4, 0.1);
  p.get("layer0.ffn.W2").value = M(4, 2, std::vector<double>{1, -1, 0.5, 0.5, -2, 1, 0, 3});
  const Hypergraph g(1, {{0}}, {EdgeType::kSection});
  const double h0 = 0.8, h1 = -0.4;

  // hand computation
  const double p0 = h0 * 1.0 + h1 * 0.25, p1 = h0 * -0.5 + h1 * 2.0;  // 0.7, -1.2
  const double g0 = lrelu(p0), g1 = lrelu(p1);
  const double q0 = g0 * 0.5 + g1 * -1.0, q1 = g0 * 0.0 + g1 * 1.5;
  const double n0 = lrelu(q0), n1 = lrelu(q1);
  const double m0 = lrelu(n0 * 1.0 + n1 * -0.3), m1 = lrelu(n0 * 0.2 + n1 * 0.7);
  auto ln2 = [](double a, double b, double& x, double& y) {
    const double mu = (a + b) / 2, var = ((a - mu) * (a - mu) + (b - mu) * (b - mu)) / 2;
    x = (a - mu) / std::sqrt(var + 1e-5);
    y = (b - mu) / std::sqrt(var + 1e-5);
  };
  double a0, a1;
  ln2(m0 + h0, m1 + h1, a0, a1);
  const double inner = lrelu(0.1 * a0 + 0.1 * a1);
  const double f0 = inner * (1 + 0.5 - 2 + 0), f1 = inner * (-1 + 0.5 + 1 + 3);
  double o0, o1;
  ln2(f0 + a0, f1 + a1, o0, o1);

  Tape<double> t(false);
  const auto vars = model.bind(t);
  const auto out = transformer_layer(t.constant(M(1, 2, std::vector<double>{h0, h1})),
                                     vars.layers[0], g, kSlope, 0.0, nullptr);
  EXPECT_NEAR(out.value()(0, 0), o0, 1e-12);
  EXPECT_NEAR(out.value()(0, 1), o1, 1e-12);
}

TEST(PredictScores, ZeroWeightsGiveOneHalf) {
  Rng rng(8);
  Tape<double> t(false);
  const auto y = predict_scores(t.constant(testing::random_matrix(4, 3, rng)),
                                t.constant(M(3, 5)), t.constant(M(5, 1)), kSlope);
  for (double v : y.value().storage()) EXPECT_EQ(v, 0.5);
}

TEST(PredictScores, ScalingOutputWeightsMovesAwayFromHalf) {
  Rng rng(9);
  Tape<double> t(false);
  const auto H = t.constant(testing::random_matrix(6, 4, rng));
  const auto W1 = t.constant(testing::random_matrix(4, 5, rng));
  const M W2 = testing::random_matrix(5, 1, rng);
  std::vector<std::vector<double>> dist;
  for (double s : {1.0, 2.0, 4.0}) {
    const auto y = predict_scores(H, W1, scale(t.constant(W2), s), kSlope);
    std::vector<double> d;
    for (double v : y.value().storage()) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
      d.push_back(std::abs(v - 0.5));
    }
    dist.push_back(d);
  }
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_LT(dist[0][i], dist[1][i]);
    EXPECT_LT(dist[1][i], dist[2][i]);
  }
}

TEST(Loss, BinaryCrossEntropyExamples) {
  Tape<double> t(false);
  const std::vector<double> y = {1, 0, 1};
  EXPECT_NEAR(bce_loss<double>(t.constant(M(3, 1, 0.5)), y).value()(0, 0), std::log(2.0), 1e-12);
  EXPECT_NEAR(bce_loss<double>(t.constant(M(3, 1, std::vector<double>{1, 0, 1})), y).value()(0, 0),
              0.0, 1e-6);
  const std::vector<double> y2 = {1, 0};
  EXPECT_NEAR(bce_loss<double>(t.constant(M(2, 1, std::vector<double>{0.9, 0.2})), y2)
                  .value()(0, 0),
              0.1643, 1e-4);
}

TEST(Model, TraceIsNormalizedAndScoresInOpenInterval) {
  Rng rng(10);
  const ModelConfig c = tiny_config();
  HegelModel<double> model(c, 2);
  const Hypergraph g = testing::random_hypergraph(9, 5, rng);
  ForwardTrace<double> trace;
  const auto scores = model.scores(testing::random_matrix(9, c.input_dim, rng), g, &trace);
  ASSERT_EQ(trace.layers.size(), c.layers);
  for (const auto& layer : trace.layers) {
    ASSERT_EQ(layer.size(), c.heads);
    for (const auto& head : layer) {
      for (std::size_t j = 0; j < g.edges(); ++j) {
        double s = 0;
        for (auto q = g.edge_members().offsets[j]; q < g.edge_members().offsets[j + 1]; ++q)
          s += head.alpha[q];
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
      for (std::size_t i = 0; i < g.nodes(); ++i) {
        double s = 0;
        for (auto q = g.node_edges().offsets[i]; q < g.node_edges().offsets[i + 1]; ++q)
          s += head.beta[q];
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
    }
  }
  EXPECT_EQ(trace.scores, scores);
  for (double s : scores) {
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 1.0);
  }
}

TEST(Model, PermutationEquivariance) {
  Rng rng(11);
  const ModelConfig c = tiny_config();
  HegelModel<double> model(c, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 5 + rng.below(10);
    const Hypergraph g = testing::random_hypergraph(n, 2 + rng.below(5), rng);
    const M X = testing::random_matrix(n, c.input_dim, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    M Xp(n, c.input_dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < c.input_dim; ++k) Xp(i, k) = X(perm[i], k);
    const auto y = model.scores(X, g);
    const auto yp = model.scores(Xp, g.permute_nodes(perm));
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(yp[i], y[perm[i]], 1e-12);
  }
}

TEST(Model, DroppingKeywordEdgeLeavesOtherEdgeRepsBitIdentical) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 10;
    Hypergraph full = testing::random_hypergraph(n, 6, rng);
    std::vector<std::vector<std::uint32_t>> cols;
    std::vector<EdgeType> types;
    for (std::size_t j = 0; j < full.edges(); ++j) {
      cols.emplace_back(full.members(j).begin(), full.members(j).end());
      types.push_back(full.edge_types()[j]);
    }
    cols.push_back({1, 4, 7});
    types.push_back(EdgeType::kKeyword);
    full = Hypergraph(n, cols, types);
    cols.pop_back();
    types.pop_back();
    const Hypergraph ablated(n, cols, types);

    Tape<double> t(false);
    const auto P = t.constant(testing::random_matrix(n, 4, rng));
    const auto w = t.constant(testing::random_matrix(4, 1, rng));
    const auto g_full = hga_edge_update(P, w, full, kSlope).value();
    const auto g_abl = hga_edge_update(P, w, ablated, kSlope).value();
    for (std::size_t j = 0; j < ablated.edges(); ++j) {
      for (std::size_t c = 0; c < 4; ++c) ASSERT_EQ(g_full(j, c), g_abl(j, c));
    }
  }
}

TEST(Model, EndToEndGradientMatchesFiniteDifferences) {
  ModelConfig c;
  c.input_dim = 8;
  c.width = 8;
  c.layers = 2;
  c.heads = 1;
  c.head_dim = 8;
  c.ffn_dim = 16;
  c.output_hidden = 16;
  c.dropout = 0.0;
  HegelModel<double> model(c, 5);
  Rng rng(13);
  const Hypergraph g(6, {{0, 1, 2}, {3, 4, 5}, {1, 3, 5}},
                     {EdgeType::kSection, EdgeType::kSection, EdgeType::kKeyword});
  const M X = testing::random_matrix(6, 8, rng);
  const std::vector<double> labels = {1, 0, 0, 1, 0, 1};
  auto loss = [&] {
    Tape<double> t(false);
    return bce_loss<double>(model.forward(t, X, g), labels).value()(0, 0);
  };
  model.params().zero_grad();
  Tape<double> tape;
  tape.backward(bce_loss<double>(model.forward(tape, X, g), labels));
  double worst = 0;
  for (std::size_t k = 0; k < model.params().size(); ++k) {
    auto& p = model.params()[k];
    ASSERT_FALSE(p.grad.empty()) << p.name;
    const M grad = p.grad;
    const double e = testing::max_gradient_error(p.value, grad, loss);
    EXPECT_LT(e, 1e-4) << p.name;
    worst = std::max(worst, e);
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(AttentionStats, SingleTypeAndNormalization) {
  Rng rng(14);
  const ModelConfig c = tiny_config();
  HegelModel<double> model(c, 4);
  const Hypergraph sections(6, {{0, 1, 2}, {3, 4, 5}}, {EdgeType::kSection, EdgeType::kSection});
  ForwardTrace<double> trace;
  model.scores(testing::random_matrix(6, c.input_dim, rng), sections, &trace);
  const auto s = attention_stats(trace, sections, {});
  EXPECT_DOUBLE_EQ(s.section, 1.0);
  EXPECT_EQ(s.nodes, 6u);

  const Hypergraph mixed = testing::random_hypergraph(10, 6, rng);
  model.scores(testing::random_matrix(10, c.input_dim, rng), mixed, &trace);
  const std::vector<std::size_t> subset = {1, 3};
  for (const auto& stats : {attention_stats(trace, mixed, {}), attention_stats(trace, mixed, subset)}) {
    EXPECT_NEAR(stats.section + stats.topic + stats.keyword, 1.0, 1e-9);
  }
  EXPECT_EQ(attention_stats(trace, mixed, subset).nodes, 2u);
}

TEST(ModelConfig, ValidationAndJsonRoundTrip) {
  ModelConfig c = tiny_config();
  EXPECT_NO_THROW(c.validate());
  const ModelConfig back = ModelConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  c.heads = 3;
  EXPECT_THROW(c.validate(), ConfigError);
  c = tiny_config();
  c.dropout = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(ModelConfig::from_json(nlohmann::json{{"width", 4}}), FormatError);
}

TEST(ModelConfig, DefaultParameterShapes) {
  ModelConfig c;
  c.validate();
  EXPECT_EQ(c.heads * c.head_dim, 1024u);
  HegelModel<float> model(tiny_config(), 1);
  const auto& p = model.params();
  EXPECT_EQ(p.get("layer1.head1.w_ae").value.rows(), 8u);
  EXPECT_EQ(p.get("layer0.ln1.gamma").value(0, 3), 1.0f);
  EXPECT_EQ(p.get("input.b").value(0, 0), 0.0f);
  EXPECT_EQ(p.get("output.W_p2").value.cols(), 1u);
}

}  // namespace
}  // namespace hegel

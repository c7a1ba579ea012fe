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

#include "hegel/trainer.h"

#include <algorithm>
#include <limits>

#include <gtest/gtest.h>

#include "hegel/checkpoint.h"
#include "hegel/synthetic.h"
#include "test_support.h"

namespace hegel {
namespace {

Document words_doc(const std::vector<std::size_t>& lengths) {
  std::vector<std::string> body;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    std::string s;
    for (std::size_t w = 0; w < lengths[i]; ++w) s += "w" + std::to_string(i) + " ";
    body.push_back(s);
  }
  return testing::make_document({body}, {"w0"});
}

TEST(SelectSummary, HighestScoresInDocumentOrder) {
  const Document doc = words_doc({5, 5, 5});
  const std::vector<float> scores = {0.9f, 0.1f, 0.8f};
  EXPECT_EQ(select_summary(scores, doc, {10, 10}), (std::vector<std::size_t>{0, 2}));
}

TEST(SelectSummary, EqualScoresFavorEarliest) {
  const Document doc = words_doc({3, 3, 3, 3});
  const std::vector<float> scores(4, 0.5f);
  EXPECT_EQ(select_summary(scores, doc, {6, 10}), (std::vector<std::size_t>{0, 1}));
}

TEST(SelectSummary, StopsAtFirstSentenceThatDoesNotFit) {
  const Document doc = words_doc({4, 8, 2});
  const std::vector<float> scores = {0.9f, 0.8f, 0.7f};
  // 4 + 8 > 10 stops selection even though sentence 2 would fit
  EXPECT_EQ(select_summary(scores, doc, {10, 10}), (std::vector<std::size_t>{0}));
}

TEST(SelectSummary, OversizedTopSentenceReturnedAlone) {
  const Document doc = words_doc({50, 2});
  const std::vector<float> scores = {0.9f, 0.1f};
  EXPECT_EQ(select_summary(scores, doc, {10, 10}), (std::vector<std::size_t>{0}));
}

TEST(SelectSummary, SentenceCapAndShapeCheck) {
  const Document doc = words_doc({1, 1, 1, 1, 1});
  const std::vector<float> scores = {0.1f, 0.5f, 0.4f, 0.3f, 0.2f};
  EXPECT_EQ(select_summary(scores, doc, {203, 2}), (std::vector<std::size_t>{1, 2}));
  const std::vector<float> short_scores = {0.1f};
  EXPECT_THROW(select_summary(short_scores, doc, {}), ShapeError);
}

TEST(SelectSummary, DefaultBudgetIsAverageArxivSummaryLength) {
  EXPECT_EQ(SelectionOptions{}.budget_words, 203u);
}

TEST(LeadSummary, LeadingSentencesUnderBudget) {
  const Document doc = words_doc({4, 4, 4, 4});
  EXPECT_EQ(lead_summary(doc, {9, 10}), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(lead_summary(words_doc({30}), {9, 10}), (std::vector<std::size_t>{0}));
}

class TrainerFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SyntheticOptions so;
    so.documents = 10;
    so.seed = 21;
    so.min_sections = 2;
    so.max_sections = 3;
    so.min_section_sentences = 6;
    so.max_section_sentences = 9;
    so.salient_sentences = 3;
    so.lead_gap = 4;
    GraphBuildOptions go;
    go.lda_sweeps = 30;
    auto* all = new std::vector<Sample>();
    for (const auto& sd : synthetic_corpus(so)) {
      all->push_back(testing::make_sample(validate(sd.raw), 32, go));
    }
    samples_ = all;
  }
  static void TearDownTestSuite() {
    delete samples_;
    samples_ = nullptr;
  }
  std::span<const Sample> train_set() const { return {samples_->data(), 7}; }
  std::span<const Sample> val_set() const { return {samples_->data() + 7, 3}; }

  static TrainConfig small_config() {
    TrainConfig c;
    c.model.input_dim = 32;
    c.model.width = 16;
    c.model.layers = 1;
    c.model.heads = 2;
    c.model.head_dim = 8;
    c.model.ffn_dim = 32;
    c.model.output_hidden = 32;
    c.model.dropout = 0.1;
    c.adam.lr = 1e-3;
    c.epochs = 4;
    c.patience = 2;
    c.threads = 2;
    return c;
  }

  static std::vector<Sample>* samples_;
};
std::vector<Sample>* TrainerFixture::samples_ = nullptr;

TEST_F(TrainerFixture, ZeroPatienceRunsExactlyOneEpoch) {
  TrainConfig c = small_config();
  c.patience = 0;
  EXPECT_EQ(train(train_set(), val_set(), c).history.size(), 1u);
}

TEST_F(TrainerFixture, SameSeedGivesBitwiseIdenticalCheckpoint) {
  const TrainConfig c = small_config();
  const auto a = train(train_set(), val_set(), c);
  const auto b = train(train_set(), val_set(), c);
  EXPECT_EQ(serialize_checkpoint(a.best), serialize_checkpoint(b.best));
  TrainConfig other = c;
  other.seed = 99;
  EXPECT_NE(serialize_checkpoint(train(train_set(), val_set(), other).best),
            serialize_checkpoint(a.best));
}

TEST_F(TrainerFixture, BestCheckpointHoldsBestValidationScore) {
  TrainConfig c = small_config();
  c.epochs = 5;
  c.patience = 5;
  std::size_t callbacks = 0;
  c.on_epoch = [&](const EpochLog&) { ++callbacks; };
  const auto r = train(train_set(), val_set(), c);
  EXPECT_EQ(callbacks, r.history.size());
  double best = -1;
  std::size_t best_epoch = 0;
  for (const auto& log : r.history) {
    EXPECT_EQ(log.improved, log.val_rouge1_f > best);
    if (log.val_rouge1_f > best) {
      best = log.val_rouge1_f;
      best_epoch = log.epoch;
    }
  }
  EXPECT_EQ(r.best.val_rouge1_f, best);
  EXPECT_EQ(r.best.epoch, best_epoch);
  const auto restored = restore_model<float>(r.best);
  EXPECT_EQ(validate(restored, val_set(), c.selection), best);
}

TEST_F(TrainerFixture, EarlyStoppingAfterPatienceStaleEpochs) {
  TrainConfig c = small_config();
  c.epochs = 12;
  c.patience = 1;
  c.adam.lr = 1e-30;  // updates vanish in float: no epoch after the first improves
  const auto r = train(train_set(), val_set(), c);
  EXPECT_EQ(r.history.size(), 2u);
  EXPECT_TRUE(r.history[0].improved);
  EXPECT_FALSE(r.history[1].improved);
}

TEST_F(TrainerFixture, NonFiniteInputRaisesNumericError) {
  std::vector<Sample> bad(train_set().begin(), train_set().begin() + 1);
  bad[0].inputs(0, 0) = std::numeric_limits<float>::quiet_NaN();
  EXPECT_THROW(train(bad, val_set(), small_config()), NumericError);
}

TEST_F(TrainerFixture, RejectsEmptySetsAndBadConfig) {
  const TrainConfig c = small_config();
  EXPECT_THROW(train({}, val_set(), c), ConfigError);
  EXPECT_THROW(train(train_set(), {}, c), ConfigError);
  TrainConfig zero = c;
  zero.epochs = 0;
  EXPECT_THROW(zero.validate(), ConfigError);
  TrainConfig wide = c;
  wide.model.input_dim = 64;
  EXPECT_THROW(train(train_set(), val_set(), wide), ShapeError);
}

TEST_F(TrainerFixture, ValidationIsOrderInvariantAndRejectsEmpty) {
  const HegelModel<float> model(small_config().model, 3);
  std::vector<Sample> reversed(val_set().rbegin(), val_set().rend());
  EXPECT_DOUBLE_EQ(validate(model, val_set(), {}), validate(model, reversed, {}));
  EXPECT_THROW(validate(model, std::span<const Sample>{}, {}), ConfigError);
}

TEST(Validate, VerbatimSelectionScoresOne) {
  const Document doc = testing::make_document({{"the abstract sentence itself"}},
                                              {"The abstract sentence itself."});
  const Sample s = testing::make_sample(doc, 32);
  TrainConfig c;
  c.model.input_dim = 32;
  c.model.width = 8;
  c.model.heads = 1;
  c.model.head_dim = 8;
  const HegelModel<float> model(c.model, 1);
  const std::vector<Sample> set = {s};
  EXPECT_DOUBLE_EQ(validate(model, set, {}), 1.0);
}

class CheckpointFormat : public ::testing::Test {
 protected:
  Checkpoint sample() {
    ModelConfig mc;
    mc.input_dim = 6;
    mc.width = 4;
    mc.heads = 2;
    mc.head_dim = 2;
    mc.ffn_dim = 8;
    mc.output_hidden = 8;
    const HegelModel<double> model(mc, 7);
    Checkpoint ck;
    ck.config = mc;
    snapshot_params(model.params(), ck.params);
    ck.epoch = 3;
    ck.val_rouge1_f = 0.4321;
    ck.metadata = {{"note", "x"}};
    return ck;
  }
};

TEST_F(CheckpointFormat, RoundTripPreservesEverything) {
  const Checkpoint ck = sample();
  const std::string bytes = serialize_checkpoint(ck);
  EXPECT_EQ(bytes.substr(0, 7), "HGCKPT1");
  const Checkpoint back = parse_checkpoint(bytes);
  EXPECT_EQ(back.config.to_json(), ck.config.to_json());
  EXPECT_EQ(back.epoch, 3u);
  EXPECT_EQ(back.val_rouge1_f, 0.4321);
  EXPECT_EQ(back.metadata, ck.metadata);
  ASSERT_EQ(back.params.size(), ck.params.size());
  for (std::size_t i = 0; i < ck.params.size(); ++i) {
    EXPECT_EQ(back.params[i].name, ck.params[i].name);
    EXPECT_EQ(back.params[i].value, ck.params[i].value);
  }
  EXPECT_EQ(serialize_checkpoint(back), bytes);

  testing::TempDir dir("ckpt");
  write_checkpoint(dir.file("m.ckpt"), ck);
  EXPECT_EQ(serialize_checkpoint(read_checkpoint(dir.file("m.ckpt"))), bytes);
  EXPECT_FALSE(std::filesystem::exists(dir.file("m.ckpt.tmp")));
}

TEST_F(CheckpointFormat, RestoredModelScoresMatch) {
  const Checkpoint ck = sample();
  const auto model = restore_model<float>(ck);
  Rng rng(1);
  const Hypergraph g = testing::random_hypergraph(5, 3, rng);
  Matrix<float> x(5, 6);
  for (auto& v : x.storage()) v = static_cast<float>(rng.uniform(-1, 1));
  EXPECT_EQ(model.scores(x, g), restore_model<float>(parse_checkpoint(serialize_checkpoint(ck)))
                                    .scores(x, g));
}

TEST_F(CheckpointFormat, CorruptionDetected) {
  const std::string bytes = serialize_checkpoint(sample());
  EXPECT_THROW(parse_checkpoint("HGCKPT9" + bytes.substr(7)), FormatError);
  EXPECT_THROW(parse_checkpoint(bytes.substr(0, bytes.size() - 4)), FormatError);
  EXPECT_THROW(parse_checkpoint(bytes + "zz"), FormatError);
  EXPECT_THROW(parse_checkpoint(bytes.substr(0, 9)), FormatError);
  EXPECT_THROW(read_checkpoint("/nonexistent/m.ckpt"), IoError);
}

}  // namespace
}  // namespace hegel

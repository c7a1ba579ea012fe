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

#include "hegel/corpus.h"

#include <fstream>

#include <gtest/gtest.h>

#include "test_support.h"

namespace hegel {
namespace {

using nlohmann::json;

json record(const std::string& id, json sections, json names, json abstract) {
  return {{"article_id", id}, {"sections", sections}, {"section_names", names},
          {"abstract_text", abstract}};
}

TEST(Validate, DropsEmptySectionAndReindexesSpans) {
  const json raw = record("a", {{"One sentence.", "Two sentence."}, {"", "  "}, {"Three."}},
                          {"intro", "empty", "end"}, {"<S> summary . </S>"});
  ValidationReport report;
  const Document doc = validate(raw, {}, &report);
  ASSERT_EQ(doc.sections.size(), 2u);
  EXPECT_EQ(doc.sections[0].name, "intro");
  EXPECT_EQ(doc.sections[1].name, "end");
  EXPECT_EQ(doc.sections[1].begin, 2u);
  EXPECT_EQ(doc.sections[1].end, 3u);
  EXPECT_EQ(report.dropped_sections, 1u);
  EXPECT_EQ(report.dropped_sentences, 2u);
  EXPECT_EQ(doc.abstract, (std::vector<std::string>{"summary ."}));
}

TEST(Validate, AllEmptySectionsRejected) {
  const json raw = record("b", {{""}, {"..."}}, {"x", "y"}, {"abstract"});
  EXPECT_THROW(validate(raw), DocumentRejected);
}

TEST(Validate, TenSentencesInTwoSectionsTile) {
  json s1 = json::array(), s2 = json::array();
  for (int i = 0; i < 6; ++i) s1.push_back("first part sentence " + std::to_string(i));
  for (int i = 0; i < 4; ++i) s2.push_back("second part sentence " + std::to_string(i));
  const Document doc = validate(record("c", {s1, s2}, {"a", "b"}, {"abs"}));
  EXPECT_EQ(doc.n_sentences(), 10u);
  EXPECT_EQ(doc.sections[0].begin, 0u);
  EXPECT_EQ(doc.sections[0].end, 6u);
  EXPECT_EQ(doc.sections[1].begin, 6u);
  EXPECT_EQ(doc.sections[1].end, 10u);
  EXPECT_NO_THROW(check_invariants(doc));
  EXPECT_EQ(doc.section_index(), (std::vector<std::size_t>{0, 0, 0, 0, 0, 0, 1, 1, 1, 1}));
  EXPECT_EQ(doc.position_in_section(),
            (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 0, 1, 2, 3}));
}

TEST(Validate, IdempotentOnValidatedDocument) {
  const Document doc = validate(record("d", {{"Alpha beta.", "", "Gamma."}, {"Delta!"}},
                                       {"s0", "s1"}, {"<S> alpha </S>"}));
  EXPECT_EQ(validate(doc), doc);
  EXPECT_EQ(validate(to_json(doc)), doc);
}

TEST(Validate, TruncatesAtSentenceCap) {
  json s = json::array();
  for (int i = 0; i < 20; ++i) s.push_back("sentence number " + std::to_string(i));
  ValidationReport report;
  const Document doc = validate(record("e", {s}, {"body"}, {"x"}), {.max_sentences = 7}, &report);
  EXPECT_EQ(doc.n_sentences(), 7u);
  EXPECT_EQ(doc.sentences.back(), "sentence number 6");
  EXPECT_EQ(report.truncated_sentences, 13u);
}

TEST(Validate, StructuralErrorsAreParseErrors) {
  EXPECT_THROW(validate(json::array()), ParseError);
  EXPECT_THROW(validate(json{{"article_id", "x"}}), ParseError);
  EXPECT_THROW(validate(record("x", {{1, 2}}, {"a"}, {"y"})), ParseError);
  EXPECT_THROW(validate(record("x", {"flat"}, {"a"}, {"y"})), ParseError);
}

TEST(LoadJsonl, EmptyFileGivesNoDocuments) {
  testing::TempDir dir("corpus");
  std::ofstream(dir.file("empty.jsonl")).flush();
  const LoadResult r = load_jsonl(dir.file("empty.jsonl"));
  EXPECT_TRUE(r.documents.empty());
  EXPECT_TRUE(r.errors.empty());
}

TEST(LoadJsonl, MalformedLineSkippedAndReported) {
  testing::TempDir dir("corpus");
  const std::string path = dir.file("two.jsonl");
  {
    std::ofstream out(path);
    out << record("ok", {{"A sentence."}}, {"s"}, {"abs"}).dump() << "\n";
    out << "{not json\n";
  }
  const LoadResult r = load_jsonl(path);
  ASSERT_EQ(r.documents.size(), 1u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 2u);
  LoadOptions strict;
  strict.strict = true;
  try {
    load_jsonl(path, strict);
    FAIL() << "strict mode accepted a malformed line";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadJsonl, LimitAndEmptyDocumentsCounted) {
  testing::TempDir dir("corpus");
  const std::string path = dir.file("many.jsonl");
  {
    std::ofstream out(path);
    out << record("empty", {{""}}, {"s"}, {"abs"}).dump() << "\n\n";
    for (int i = 0; i < 5; ++i) {
      out << record("d" + std::to_string(i), {{"Some words here."}}, {"s"}, {"abs"}).dump()
          << "\n";
    }
  }
  const LoadResult all = load_jsonl(path);
  EXPECT_EQ(all.documents.size(), 5u);
  EXPECT_EQ(all.skipped_empty, 1u);
  LoadOptions limited;
  limited.limit = 2;
  const LoadResult two = load_jsonl(path, limited);
  ASSERT_EQ(two.documents.size(), 2u);
  EXPECT_EQ(two.documents[1].id, "d1");
}

TEST(LoadJsonl, MissingFileIsIoError) {
  EXPECT_THROW(load_jsonl("/nonexistent/corpus.jsonl"), IoError);
}

}  // namespace
}  // namespace hegel

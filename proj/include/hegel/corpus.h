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

#ifndef HEGEL_CORPUS_H_
#define HEGEL_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hegel/errors.h"
#include "hegel/text.h"
#include "json.hpp"

namespace hegel {

// A section covers the half-open range [begin, end) of flattened sentence
// indices.
struct Section {
  std::string name;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Section&) const = default;
};

// A validated long document. Sentences are flattened in reading order; the
// sections partition 0..n-1 into non-empty contiguous spans.
struct Document {
  std::string id;
  std::vector<Section> sections;
  std::vector<std::string> sentences;
  std::vector<TokenList> tokens;  // tokenize(sentences[i])
  std::vector<std::string> abstract;

  std::size_t n_sentences() const { return sentences.size(); }
  // Section index of each sentence.
  std::vector<std::size_t> section_index() const;
  // Position of each sentence within its section.
  std::vector<std::size_t> position_in_section() const;
  TokenList abstract_tokens() const;
  std::size_t word_count() const;

  bool operator==(const Document&) const = default;
};

// Raised by validate() when nothing usable is left in a record.
class DocumentRejected : public Error {
 public:
  using Error::Error;
};

struct ValidateOptions {
  std::size_t max_sentences = 600;
};

// Counts of material removed by validate().
struct ValidationReport {
  std::size_t dropped_sentences = 0;
  std::size_t dropped_sections = 0;
  std::size_t truncated_sentences = 0;
};

// Converts a parsed JSON record (dataset layout: article_id, sections,
// section_names, abstract_text) into a Document. Throws ParseError when the
// record is structurally wrong and DocumentRejected when no sentence is left
// after cleaning. Documents longer than max_sentences are truncated.
Document validate(const nlohmann::json& raw, const ValidateOptions& options = {},
                  ValidationReport* report = nullptr);

// Re-checks a Document and drops empty sentences/sections. Identity on an
// already-valid document.
Document validate(const Document& doc, const ValidateOptions& options = {},
                  ValidationReport* report = nullptr);

// Throws ShapeError if any Document invariant is violated.
void check_invariants(const Document& doc);

nlohmann::json to_json(const Document& doc);

struct LoadOptions {
  std::optional<std::size_t> limit;
  bool strict = false;  // fail fast on the first bad line
  ValidateOptions validate;
};

struct LineError {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<Document> documents;
  std::vector<LineError> errors;  // malformed lines (skip mode)
  std::size_t skipped_empty = 0;  // records with no usable sentence
  std::size_t lines_read = 0;
  ValidationReport dropped;
};

// Reads a JSONL corpus. Blank lines are ignored. `limit` bounds the number of
// returned documents.
LoadResult load_jsonl(const std::string& path, const LoadOptions& options = {});

}  // namespace hegel

#endif  // HEGEL_CORPUS_H_

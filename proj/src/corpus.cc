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
#include <utility>

namespace hegel {
namespace {

// The dataset release wraps abstract sentences in <S> ... </S>.
std::string strip_sentence_tags(std::string s) {
  for (std::string_view tag : {"<S>", "</S>"}) {
    for (auto pos = s.find(tag); pos != std::string::npos; pos = s.find(tag)) {
      s.erase(pos, tag.size());
    }
  }
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

struct RawSection {
  std::string name;
  std::vector<std::string> sentences;
};

Document assemble(std::string id, std::vector<RawSection> raw_sections,
                  std::vector<std::string> raw_abstract,
                  const ValidateOptions& options, ValidationReport* report) {
  ValidationReport local;
  Document doc;
  doc.id = std::move(id);
  for (auto& section : raw_sections) {
    Section span{std::move(section.name), doc.sentences.size(), 0};
    for (auto& sentence : section.sentences) {
      TokenList tokens = tokenize(sentence);
      if (tokens.empty()) {
        ++local.dropped_sentences;
        continue;
      }
      if (doc.sentences.size() >= options.max_sentences) {
        ++local.truncated_sentences;
        continue;
      }
      doc.sentences.push_back(std::move(sentence));
      doc.tokens.push_back(std::move(tokens));
    }
    span.end = doc.sentences.size();
    if (span.size() == 0) {
      ++local.dropped_sections;
      continue;
    }
    doc.sections.push_back(std::move(span));
  }
  for (auto& sentence : raw_abstract) {
    std::string clean = strip_sentence_tags(std::move(sentence));
    if (count_tokens(clean) > 0) doc.abstract.push_back(std::move(clean));
  }
  if (report) {
    report->dropped_sentences += local.dropped_sentences;
    report->dropped_sections += local.dropped_sections;
    report->truncated_sentences += local.truncated_sentences;
  }
  if (doc.sentences.empty()) {
    throw DocumentRejected("document '" + doc.id +
                           "' has no sentences after cleaning");
  }
  return doc;
}

std::vector<std::string> string_array(const nlohmann::json& value,
                                      const char* field) {
  if (!value.is_array()) {
    throw ParseError(std::string("field '") + field + "' is not an array", 0);
  }
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw ParseError(std::string("field '") + field +
                           "' contains a non-string entry",
                       0);
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<std::size_t> Document::section_index() const {
  std::vector<std::size_t> out(n_sentences());
  for (std::size_t s = 0; s < sections.size(); ++s) {
    for (std::size_t i = sections[s].begin; i < sections[s].end; ++i) out[i] = s;
  }
  return out;
}

std::vector<std::size_t> Document::position_in_section() const {
  std::vector<std::size_t> out(n_sentences());
  for (const auto& section : sections) {
    for (std::size_t i = section.begin; i < section.end; ++i) {
      out[i] = i - section.begin;
    }
  }
  return out;
}

TokenList Document::abstract_tokens() const {
  TokenList out;
  for (const auto& sentence : abstract) {
    for (auto& token : tokenize(sentence)) out.push_back(std::move(token));
  }
  return out;
}

std::size_t Document::word_count() const {
  std::size_t total = 0;
  for (const auto& t : tokens) total += t.size();
  return total;
}

Document validate(const nlohmann::json& raw, const ValidateOptions& options,
                  ValidationReport* report) {
  if (!raw.is_object()) throw ParseError("record is not a JSON object", 0);
  for (const char* field :
       {"article_id", "sections", "section_names", "abstract_text"}) {
    if (!raw.contains(field)) {
      throw ParseError(std::string("missing field '") + field + "'", 0);
    }
  }
  const auto& id = raw["article_id"];
  if (!id.is_string()) throw ParseError("field 'article_id' is not a string", 0);
  const auto& sections = raw["sections"];
  if (!sections.is_array()) throw ParseError("field 'sections' is not an array", 0);
  auto names = string_array(raw["section_names"], "section_names");

  std::vector<RawSection> raw_sections;
  raw_sections.reserve(sections.size());
  for (std::size_t s = 0; s < sections.size(); ++s) {
    RawSection section;
    section.name = s < names.size() ? names[s] : "section " + std::to_string(s);
    section.sentences = string_array(sections[s], "sections");
    raw_sections.push_back(std::move(section));
  }
  return assemble(id.get<std::string>(), std::move(raw_sections),
                  string_array(raw["abstract_text"], "abstract_text"), options,
                  report);
}

Document validate(const Document& doc, const ValidateOptions& options,
                  ValidationReport* report) {
  std::vector<RawSection> raw_sections;
  for (const auto& section : doc.sections) {
    RawSection raw{section.name, {}};
    for (std::size_t i = section.begin; i < section.end && i < doc.sentences.size();
         ++i) {
      raw.sentences.push_back(doc.sentences[i]);
    }
    raw_sections.push_back(std::move(raw));
  }
  Document out = assemble(doc.id, std::move(raw_sections), doc.abstract,
                          options, report);
  check_invariants(out);
  return out;
}

void check_invariants(const Document& doc) {
  const std::size_t n = doc.n_sentences();
  if (n == 0) throw ShapeError("document '" + doc.id + "' has no sentences");
  if (doc.tokens.size() != n) {
    throw ShapeError("document '" + doc.id + "' token cache out of sync");
  }
  std::size_t expected = 0;
  for (const auto& section : doc.sections) {
    if (section.begin != expected || section.end <= section.begin) {
      throw ShapeError("document '" + doc.id + "' sections do not tile 0..n");
    }
    expected = section.end;
  }
  if (expected != n) {
    throw ShapeError("document '" + doc.id + "' sections do not cover 0..n");
  }
  for (const auto& t : doc.tokens) {
    if (t.empty()) throw ShapeError("document '" + doc.id + "' has an empty sentence");
  }
}

nlohmann::json to_json(const Document& doc) {
  nlohmann::json sections = nlohmann::json::array();
  nlohmann::json names = nlohmann::json::array();
  for (const auto& section : doc.sections) {
    nlohmann::json sentences = nlohmann::json::array();
    for (std::size_t i = section.begin; i < section.end; ++i) {
      sentences.push_back(doc.sentences[i]);
    }
    sections.push_back(std::move(sentences));
    names.push_back(section.name);
  }
  return {{"article_id", doc.id},
          {"abstract_text", doc.abstract},
          {"sections", std::move(sections)},
          {"section_names", std::move(names)}};
}

LoadResult load_jsonl(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file " + path);
  LoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (options.limit && result.documents.size() >= *options.limit) break;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++result.lines_read;
    try {
      auto raw = nlohmann::json::parse(line);
      result.documents.push_back(
          validate(raw, options.validate, &result.dropped));
    } catch (const DocumentRejected&) {
      ++result.skipped_empty;
    } catch (const nlohmann::json::exception& e) {
      if (options.strict) throw ParseError(e.what(), line_no);
      result.errors.push_back({line_no, e.what()});
    } catch (const ParseError& e) {
      if (options.strict) throw ParseError(e.what(), line_no);
      result.errors.push_back({line_no, e.what()});
    }
  }
  if (in.bad()) throw IoError("read failure on " + path);
  return result;
}

}  // namespace hegel

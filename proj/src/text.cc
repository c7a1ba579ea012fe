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

#include "hegel/text.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>

#include "hegel/errors.h"

namespace hegel {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

// Sorted for binary search.
constexpr std::array<std::string_view, 153> kStopwords = {
    "a",        "about",   "above",   "after",   "again",    "against",
    "all",      "also",    "am",      "an",      "and",      "any",
    "are",      "as",      "at",      "be",      "because",  "been",
    "before",   "being",   "below",   "between", "both",     "but",
    "by",       "can",     "could",   "did",     "do",       "does",
    "doing",    "down",    "due",     "during",  "each",     "either",
    "et",       "etc",     "few",     "for",     "from",     "further",
    "had",      "has",     "have",    "having",  "he",       "her",
    "here",     "hers",    "herself", "him",     "himself",  "his",
    "how",      "however", "i",       "ie",       "if",       "in",
    "into",     "is",      "it",      "its",     "itself",   "just",
    "may",      "me",      "might",   "more",    "most",     "much",
    "must",     "my",      "myself",  "no",      "nor",      "not",
    "now",      "of",      "off",     "on",      "once",     "one",
    "only",     "or",      "other",   "our",     "ours",     "ourselves",
    "out",      "over",    "own",     "per",     "same",     "shall",
    "she",      "should",  "since",   "so",      "some",     "such",
    "than",     "that",    "the",     "their",   "theirs",   "them",
    "themselves", "then",  "there",   "therefore", "these",  "they",
    "this",     "those",   "through", "thus",    "to",       "too",
    "two",      "under",   "until",   "up",      "upon",     "us",
    "using",    "very",    "via",     "was",     "we",       "well",
    "were",     "what",    "when",    "where",   "whether",  "which",
    "while",    "who",     "whom",    "why",     "will",     "with",
    "within",   "without", "would",   "yet",     "you",      "your",
    "yours",    "yourself", "yourselves"};

}  // namespace

TokenList tokenize(std::string_view text) {
  TokenList out;
  std::string current;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    bool w = is_word_byte(c);
    if (w && !in_word) ++count;
    in_word = w;
  }
  return count;
}

bool is_stopword(std::string_view token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

const std::vector<std::string_view>& stopwords() {
  static const std::vector<std::string_view> list(kStopwords.begin(),
                                                  kStopwords.end());
  return list;
}

bool is_numeric(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t hash64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= h >> 30;
  h *= 0xBF58476D1CE4E5B9ULL;
  h ^= h >> 27;
  h *= 0x94D049BB133111EBULL;
  h ^= h >> 31;
  return h;
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::uint64_t h = 1469598103934665603ULL;
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace hegel

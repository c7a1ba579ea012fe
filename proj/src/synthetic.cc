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

#include "hegel/synthetic.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>

#include "hegel/errors.h"
#include "hegel/tensor.h"
#include "hegel/text.h"

namespace hegel {
namespace {

constexpr std::array kOnsets = {"b", "c", "d", "f", "g", "k", "l", "m", "n", "p",
                                "r", "s", "t", "v", "z", "br", "tr", "st", "pl", "gr"};
constexpr std::array kVowels = {"a", "e", "i", "o", "u", "ai", "eo", "ia"};
constexpr std::array kCodas = {"", "n", "r", "s", "x", "l", "m"};

constexpr std::array kGeneral = {
    "analysis", "data", "model", "results", "study", "method", "approach",
    "observed", "effect", "measured", "sample", "group", "treatment", "value",
    "function", "response", "rate", "level", "increase", "decrease", "change",
    "time", "system", "process", "structure", "parameter", "distribution",
    "estimate", "condition", "factor", "case", "range", "number", "order",
    "test", "set", "form", "type", "point", "state", "field", "energy",
    "signal", "region", "cells", "patients", "dose", "mass", "scale",
    "variation", "behavior", "pattern", "property", "relation", "evidence",
    "framework", "measure", "term", "limit", "phase", "error", "density",
    "frequency", "interaction", "mechanism", "outcome", "population",
    "experiment", "simulation", "observation", "quantity", "baseline"};

constexpr std::array kCues = {
    "we show that", "our results demonstrate that", "importantly",
    "we find that", "in particular", "notably", "we conclude that",
    "these findings indicate that"};

constexpr std::array kArxivSections = {
    "introduction", "related work", "preliminaries", "method", "analysis",
    "experiments", "discussion", "conclusion"};
constexpr std::array kPubmedSections = {
    "background", "introduction", "materials and methods", "patients",
    "results", "statistical analysis", "discussion", "conclusions"};

constexpr std::array kFiller = {"the", "of", "and", "in", "to", "a", "is",
                                "for", "with", "on", "by", "as", "that", "are",
                                "was", "from", "at", "this", "which", "be"};

std::string pseudo_word(Rng& rng, std::size_t syllables) {
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w += kOnsets[rng.below(kOnsets.size())];
    w += kVowels[rng.below(kVowels.size())];
  }
  w += kCodas[rng.below(kCodas.size())];
  return w;
}

// Distinct pseudo-words that are neither stopwords nor already in `taken`.
std::vector<std::string> fresh_words(Rng& rng, std::size_t count,
                                     std::set<std::string>& taken) {
  std::vector<std::string> out;
  while (out.size() < count) {
    std::string w = pseudo_word(rng, 2 + rng.below(2));
    if (w.size() < 4 || is_stopword(w) || !taken.insert(w).second) continue;
    out.push_back(std::move(w));
  }
  return out;
}

// Shared domain vocabularies; fixed across documents for a given seed.
std::vector<std::vector<std::string>> topic_pools(std::uint64_t seed) {
  Rng rng(seed ^ 0xA5A5A5A5ULL);
  std::set<std::string> taken(kGeneral.begin(), kGeneral.end());
  std::vector<std::vector<std::string>> pools;
  for (int p = 0; p < 40; ++p) pools.push_back(fresh_words(rng, 25, taken));
  return pools;
}

std::string join_sentence(const std::vector<std::string>& words) {
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) s += ' ';
    s += words[i];
  }
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s + ".";
}

void add_words(const std::string& phrase, std::vector<std::string>& out) {
  std::size_t start = 0;
  while (start <= phrase.size()) {
    const auto sp = phrase.find(' ', start);
    const auto end = sp == std::string::npos ? phrase.size() : sp;
    if (end > start) out.push_back(phrase.substr(start, end - start));
    start = end + 1;
  }
}

struct SentencePlan {
  std::vector<std::string> words;
  std::vector<std::string> content;  // non-filler words, in order
};

SentencePlan body_sentence(Rng& rng, const std::vector<std::string>& topic,
                           const std::vector<std::string>& other_topic,
                           std::size_t length) {
  SentencePlan plan;
  for (std::size_t i = 0; i < length; ++i) {
    const double u = rng.uniform();
    std::string w;
    if (u < 0.32) {
      plan.words.push_back(kFiller[rng.below(kFiller.size())]);
      continue;
    } else if (u < 0.64) {
      w = topic[rng.below(topic.size())];
    } else if (u < 0.72) {
      w = other_topic[rng.below(other_topic.size())];
    } else if (u < 0.96) {
      w = kGeneral[rng.below(kGeneral.size())];
    } else {
      w = std::to_string(1 + rng.below(99));
    }
    plan.words.push_back(w);
    plan.content.push_back(w);
  }
  return plan;
}

}  // namespace

std::vector<SyntheticDocument> synthetic_corpus(const SyntheticOptions& o) {
  if (o.min_sections == 0 || o.min_sections > o.max_sections ||
      o.min_section_sentences == 0 ||
      o.min_section_sentences > o.max_section_sentences || o.key_terms < 2) {
    throw ConfigError("synthetic_corpus: inconsistent size options");
  }
  const auto pools = topic_pools(o.seed);
  Rng rng(o.seed);
  std::vector<SyntheticDocument> docs;
  for (std::size_t d = 0; d < o.documents; ++d) {
    SyntheticDocument out;
    std::set<std::string> taken(kGeneral.begin(), kGeneral.end());
    for (const auto& p : pools) taken.insert(p.begin(), p.end());
    out.key_terms = fresh_words(rng, o.key_terms, taken);

    const std::size_t q = o.min_sections + rng.below(o.max_sections - o.min_sections + 1);
    std::vector<std::size_t> sizes(q);
    std::size_t n = 0;
    for (auto& s : sizes) {
      s = o.min_section_sentences +
          rng.below(o.max_section_sentences - o.min_section_sentences + 1);
      n += s;
    }
    // Three document topics; section s draws mostly from topic s % 3.
    std::array<std::size_t, 3> topics{};
    for (auto& t : topics) t = rng.below(pools.size());

    // Salient positions: distinct, past the lead, spread over the body.
    std::vector<std::size_t> candidates;
    for (std::size_t i = std::min(o.lead_gap, n - 1); i < n; ++i) candidates.push_back(i);
    for (std::size_t i = candidates.size(); i > 1; --i) {
      std::swap(candidates[i - 1], candidates[rng.below(i)]);
    }
    const std::size_t k = std::min(o.salient_sentences, candidates.size());
    out.salient.assign(candidates.begin(), candidates.begin() + k);
    std::sort(out.salient.begin(), out.salient.end());

    const auto& names_src = o.style == CorpusStyle::kArxiv
                                ? std::vector<std::string>(kArxivSections.begin(), kArxivSections.end())
                                : std::vector<std::string>(kPubmedSections.begin(), kPubmedSections.end());
    std::vector<std::string> names;
    for (std::size_t s = 0; s < q; ++s) {
      names.push_back(s == 0 ? names_src[0]
                             : s + 1 == q ? names_src.back()
                                          : names_src[1 + (s - 1) % (names_src.size() - 2)]);
    }

    nlohmann::json sections = nlohmann::json::array();
    std::vector<std::vector<std::string>> salient_content;
    std::size_t flat = 0, next_salient = 0;
    for (std::size_t s = 0; s < q; ++s) {
      const auto& topic = pools[topics[s % 3]];
      const auto& other = pools[topics[(s + 1) % 3]];
      nlohmann::json sentences = nlohmann::json::array();
      for (std::size_t j = 0; j < sizes[s]; ++j, ++flat) {
        const std::size_t len = 12 + rng.below(12);
        SentencePlan plan = body_sentence(rng, topic, other, len);
        const bool salient = next_salient < out.salient.size() &&
                             out.salient[next_salient] == flat;
        if (salient) {
          ++next_salient;
          std::vector<std::string> words;
          add_words(kCues[rng.below(kCues.size())], words);
          const std::size_t a = rng.below(o.key_terms);
          const std::size_t b = (a + 1 + rng.below(o.key_terms - 1)) % o.key_terms;
          const std::string& ka = out.key_terms[a];
          const std::string& kb = out.key_terms[b];
          // Key terms near the front and again mid-sentence.
          words.push_back(ka);
          words.insert(words.end(), plan.words.begin(), plan.words.begin() + len / 2);
          words.push_back(kb);
          words.insert(words.end(), plan.words.begin() + len / 2, plan.words.end());
          plan.content.insert(plan.content.begin(), ka);
          plan.content.push_back(kb);
          plan.words = std::move(words);
          salient_content.push_back(plan.content);
        } else if (flat >= o.lead_gap && rng.uniform() < o.distractor_rate) {
          // Distractor: one key term without a cue phrase.
          plan.words.insert(plan.words.begin() + static_cast<long>(rng.below(len)),
                            out.key_terms[rng.below(o.key_terms)]);
        }
        sentences.push_back(join_sentence(plan.words));
      }
      sections.push_back(sentences);
    }

    // Abstract: one paraphrase per salient sentence, most content retained.
    nlohmann::json abstract = nlohmann::json::array();
    for (const auto& content : salient_content) {
      std::vector<std::string> words;
      for (std::size_t i = 0; i < content.size(); ++i) {
        const bool is_key = std::find(out.key_terms.begin(), out.key_terms.end(),
                                      content[i]) != out.key_terms.end();
        if (!is_key && rng.uniform() < 0.2) continue;
        words.push_back(content[i]);
        if (i + 1 < content.size() && rng.uniform() < 0.3) {
          words.push_back(kFiller[rng.below(kFiller.size())]);
        }
      }
      abstract.push_back("<S> " + join_sentence(words) + " </S>");
    }

    const char* prefix = o.style == CorpusStyle::kArxiv ? "arxiv-syn-" : "pubmed-syn-";
    out.raw = {{"article_id", prefix + std::to_string(o.seed) + "-" + std::to_string(d)},
               {"sections", sections},
               {"section_names", names},
               {"abstract_text", abstract}};
    docs.push_back(std::move(out));
  }
  return docs;
}

std::vector<SyntheticDocument> planted_keyword_corpus(std::size_t documents,
                                                      std::uint64_t seed) {
  const auto pools = topic_pools(seed);
  Rng rng(seed);
  std::vector<SyntheticDocument> docs;
  for (std::size_t d = 0; d < documents; ++d) {
    SyntheticDocument out;
    std::set<std::string> taken(kGeneral.begin(), kGeneral.end());
    for (const auto& p : pools) taken.insert(p.begin(), p.end());
    out.key_terms = fresh_words(rng, 1, taken);
    const std::size_t a = rng.below(8);
    std::size_t b = rng.below(7);
    if (b >= a) ++b;
    out.salient = {std::min(a, b), std::max(a, b)};
    const auto& topic = pools[rng.below(pools.size())];
    const auto& other = pools[rng.below(pools.size())];
    nlohmann::json sentences = nlohmann::json::array();
    nlohmann::json abstract = nlohmann::json::array();
    for (std::size_t i = 0; i < 8; ++i) {
      SentencePlan plan = body_sentence(rng, topic, other, 10 + rng.below(6));
      if (i == a || i == b) {
        plan.words.insert(plan.words.begin() + 1, out.key_terms[0]);
        plan.words.push_back(out.key_terms[0]);
      }
      const std::string text = join_sentence(plan.words);
      sentences.push_back(text);
      if (i == a || i == b) abstract.push_back(text);
    }
    out.raw = {{"article_id", "planted-" + std::to_string(seed) + "-" + std::to_string(d)},
               {"sections", nlohmann::json::array({sentences})},
               {"section_names", {"body"}},
               {"abstract_text", abstract}};
    docs.push_back(std::move(out));
  }
  return docs;
}

TwoTopicCorpus two_topic_corpus(std::size_t sentences, std::size_t words_per_sentence,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::string> taken;
  const auto vocab_a = fresh_words(rng, 30, taken);
  const auto vocab_b = fresh_words(rng, 30, taken);
  TwoTopicCorpus corpus;
  for (std::size_t i = 0; i < sentences; ++i) {
    const std::size_t t = rng.below(2);
    const auto& vocab = t == 0 ? vocab_a : vocab_b;
    std::vector<std::string> s;
    for (std::size_t w = 0; w < words_per_sentence; ++w) {
      s.push_back(vocab[rng.below(vocab.size())]);
    }
    corpus.sentences.push_back(std::move(s));
    corpus.truth.push_back(t);
  }
  return corpus;
}

void write_jsonl(const std::string& path, const std::vector<SyntheticDocument>& docs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& d : docs) out << d.raw.dump() << '\n';
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace hegel

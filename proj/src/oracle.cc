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

#include "hegel/oracle.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include "hegel/rouge.h"

namespace hegel {
namespace {

// Objective values closer than this are the same rational up to rounding.
constexpr double kTieTolerance = 1e-12;

using NgramCounts = std::vector<std::pair<std::uint64_t, int>>;

class Vocabulary {
 public:
  std::uint64_t id(const Token& token) {
    auto [it, inserted] = ids_.try_emplace(token, ids_.size());
    return it->second;
  }

 private:
  std::unordered_map<Token, std::uint64_t> ids_;
};

// Unigram and bigram counts of one sentence. Bigram keys carry the top bit
// so they never collide with unigram ids.
struct SentenceGrams {
  NgramCounts unigrams;
  NgramCounts bigrams;
  double unigram_total = 0;
  double bigram_total = 0;
};

SentenceGrams count_grams(const TokenList& tokens, Vocabulary& vocab) {
  std::vector<std::uint64_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab.id(t));
  std::unordered_map<std::uint64_t, int> uni, bi;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ++uni[ids[i]];
    if (i + 1 < ids.size()) ++bi[(1ULL << 63) | (ids[i] << 31) | ids[i + 1]];
  }
  SentenceGrams g;
  g.unigrams.assign(uni.begin(), uni.end());
  g.bigrams.assign(bi.begin(), bi.end());
  std::sort(g.unigrams.begin(), g.unigrams.end());
  std::sort(g.bigrams.begin(), g.bigrams.end());
  g.unigram_total = static_cast<double>(ids.size());
  g.bigram_total = ids.size() > 1 ? static_cast<double>(ids.size() - 1) : 0.0;
  return g;
}

// Running clipped-overlap state for one n-gram order.
struct OverlapState {
  std::unordered_map<std::uint64_t, int> reference;
  std::unordered_map<std::uint64_t, int> selected;
  double reference_total = 0;
  double candidate_total = 0;
  double overlap = 0;

  double overlap_with(const NgramCounts& grams) const {
    double gain = 0;
    for (const auto& [key, count] : grams) {
      auto ref = reference.find(key);
      if (ref == reference.end()) continue;
      auto sel = selected.find(key);
      int have = sel == selected.end() ? 0 : sel->second;
      gain += std::min(have + count, ref->second) - std::min(have, ref->second);
    }
    return overlap + gain;
  }

  void add(const NgramCounts& grams, double total) {
    overlap = overlap_with(grams);
    for (const auto& [key, count] : grams) selected[key] += count;
    candidate_total += total;
  }
};

double mean_f(double overlap1, double cand1, double ref1, double overlap2,
              double cand2, double ref2) {
  return 0.5 * (make_prf(overlap1, cand1, ref1).f1 +
                make_prf(overlap2, cand2, ref2).f1);
}

}  // namespace

double oracle_objective(std::span<const TokenList> selected,
                        std::span<const TokenList> reference) {
  Vocabulary vocab;
  OverlapState uni, bi;
  for (const auto& sentence : reference) {
    auto g = count_grams(sentence, vocab);
    for (const auto& [k, c] : g.unigrams) uni.reference[k] += c;
    for (const auto& [k, c] : g.bigrams) bi.reference[k] += c;
    uni.reference_total += g.unigram_total;
    bi.reference_total += g.bigram_total;
  }
  for (const auto& sentence : selected) {
    auto g = count_grams(sentence, vocab);
    uni.add(g.unigrams, g.unigram_total);
    bi.add(g.bigrams, g.bigram_total);
  }
  return mean_f(uni.overlap, uni.candidate_total, uni.reference_total,
                bi.overlap, bi.candidate_total, bi.reference_total);
}

LabelVector greedy_oracle(const Document& doc, const OracleOptions& options) {
  const std::size_t n = doc.n_sentences();
  LabelVector out;
  out.labels.assign(n, 0);

  Vocabulary vocab;
  OverlapState uni, bi;
  for (const auto& sentence : doc.abstract) {
    auto g = count_grams(tokenize(sentence), vocab);
    for (const auto& [k, c] : g.unigrams) uni.reference[k] += c;
    for (const auto& [k, c] : g.bigrams) bi.reference[k] += c;
    uni.reference_total += g.unigram_total;
    bi.reference_total += g.bigram_total;
  }
  if (uni.reference_total == 0) {
    out.empty_abstract = true;
    return out;
  }

  std::vector<SentenceGrams> grams;
  grams.reserve(n);
  for (const auto& tokens : doc.tokens) grams.push_back(count_grams(tokens, vocab));

  double current = 0.0;
  while (out.selected_order.size() < options.max_sentences) {
    std::size_t best = n;
    double best_score = current;
    for (std::size_t i = 0; i < n; ++i) {
      if (out.labels[i]) continue;
      double score =
          mean_f(uni.overlap_with(grams[i].unigrams),
                 uni.candidate_total + grams[i].unigram_total,
                 uni.reference_total, bi.overlap_with(grams[i].bigrams),
                 bi.candidate_total + grams[i].bigram_total, bi.reference_total);
      if (best == n ? score > current + options.epsilon : score > best_score + kTieTolerance) {
        best = i;
        best_score = score;
      }
    }
    if (best == n) break;
    out.labels[best] = 1;
    out.selected_order.push_back(best);
    uni.add(grams[best].unigrams, grams[best].unigram_total);
    bi.add(grams[best].bigrams, grams[best].bigram_total);
    current = best_score;
    out.objective_trace.push_back(current);
  }
  return out;
}

}  // namespace hegel

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

// hegel-synth: writes deterministic synthetic corpora in the dataset JSONL
// layout, for smoke runs and tests when no real corpus is at hand.

#include <iostream>

#include "CLI11.hpp"
#include "hegel/errors.h"
#include "hegel/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"hegel-synth: synthetic arXiv/PubMed-layout corpora"};
  app.option_defaults()->always_capture_default();
  hegel::SyntheticOptions o;
  std::string out, style = "pubmed";
  std::size_t skip = 0;
  app.add_option("--out", out, "Output JSONL")->required();
  app.add_option("--style", style, "arxiv or pubmed")->check(CLI::IsMember({"arxiv", "pubmed"}));
  app.add_option("--docs", o.documents, "Number of documents");
  app.add_option("--skip", skip, "Drop this many leading documents (disjoint splits)");
  app.add_option("--seed", o.seed, "Generator seed");
  app.add_option("--min-sections", o.min_sections, "Fewest sections per document");
  app.add_option("--max-sections", o.max_sections, "Most sections per document");
  app.add_option("--min-section-sentences", o.min_section_sentences, "Fewest sentences per section");
  app.add_option("--max-section-sentences", o.max_section_sentences, "Most sentences per section");
  app.add_option("--salient", o.salient_sentences, "Sentences per document that carry the abstract content");
  CLI11_PARSE(app, argc, argv);
  o.style = style == "arxiv" ? hegel::CorpusStyle::kArxiv : hegel::CorpusStyle::kPubmed;
  try {
    o.documents += skip;
    auto docs = hegel::synthetic_corpus(o);
    docs.erase(docs.begin(), docs.begin() + static_cast<long>(skip));
    hegel::write_jsonl(out, docs);
    std::cout << "wrote " << docs.size() << " documents to " << out << "\n";
  } catch (const hegel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

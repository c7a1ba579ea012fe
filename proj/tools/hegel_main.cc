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

// hegel: command-line pipeline for hypergraph extractive summarization.
//
//   ingest -> oracle -> build-graph -> train -> summarize -> evaluate
//
// Exit status: 0 ok, 1 usage or configuration error, 2 data error,
// 3 numeric failure.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hegel/artifacts.h"
#include "hegel/checkpoint.h"
#include "hegel/corpus.h"
#include "hegel/graph_builder.h"
#include "hegel/kernels.h"
#include "hegel/oracle.h"
#include "hegel/parallel.h"
#include "hegel/rouge.h"
#include "hegel/trainer.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hegel {
namespace {

void log_line(const json& j) { std::cout << j.dump() << std::endl; }

std::vector<Document> load_documents(const std::string& path,
                                     std::optional<std::size_t> limit,
                                     bool strict, std::size_t max_sentences) {
  LoadOptions opts;
  opts.limit = limit;
  opts.strict = strict;
  opts.validate.max_sentences = max_sentences;
  LoadResult r = load_jsonl(path, opts);
  for (const auto& e : r.errors) {
    std::cerr << path << ":" << e.line << ": " << e.message << "\n";
  }
  return std::move(r.documents);
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string input, out;
  std::optional<std::size_t> limit;
  bool strict = false, cache = false;
  std::size_t max_sentences = 600;
};

int run_ingest(const IngestArgs& a) {
  RunManifest m;
  m.command = "ingest";
  m.options = {{"limit", a.limit ? json(*a.limit) : json()},
               {"strict", a.strict}, {"max_sentences", a.max_sentences}};
  m.add_input(a.input);
  m.created = utc_timestamp();
  if (a.cache && !a.out.empty() && cache_hit(a.out, m)) {
    log_line({{"event", "cache_hit"}, {"artifact", a.out}});
    return 0;
  }
  LoadOptions opts;
  opts.limit = a.limit;
  opts.strict = a.strict;
  opts.validate.max_sentences = a.max_sentences;
  LoadResult r = load_jsonl(a.input, opts);
  for (const auto& e : r.errors) {
    std::cerr << a.input << ":" << e.line << ": " << e.message << "\n";
  }
  std::size_t sentences = 0, words = 0;
  for (const auto& d : r.documents) {
    sentences += d.n_sentences();
    words += d.word_count();
  }
  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::trunc);
    if (!out) throw IoError("cannot write " + a.out);
    for (const auto& d : r.documents) out << to_json(d).dump() << '\n';
    out.close();
    write_manifest(a.out, m);
  }
  const double k = r.documents.empty() ? 1.0 : static_cast<double>(r.documents.size());
  log_line({{"event", "ingest"},
            {"documents", r.documents.size()},
            {"lines_read", r.lines_read},
            {"parse_errors", r.errors.size()},
            {"skipped_empty", r.skipped_empty},
            {"dropped_sentences", r.dropped.dropped_sentences},
            {"dropped_sections", r.dropped.dropped_sections},
            {"truncated_sentences", r.dropped.truncated_sentences},
            {"avg_sentences", sentences / k},
            {"avg_words", words / k}});
  return 0;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  std::string input, out;
  std::optional<std::size_t> limit;
  std::size_t max_selected = 30, threads = 0;
  bool cache = false;
};

int run_oracle(const OracleArgs& a) {
  RunManifest m;
  m.command = "oracle";
  m.options = {{"limit", a.limit ? json(*a.limit) : json()},
               {"max_selected", a.max_selected}};
  m.add_input(a.input);
  m.created = utc_timestamp();
  if (a.cache && cache_hit(a.out, m)) {
    log_line({{"event", "cache_hit"}, {"artifact", a.out}});
    return 0;
  }
  const auto docs = load_documents(a.input, a.limit, false, 600);
  std::vector<std::string> records(docs.size());
  std::vector<double> objective(docs.size());
  std::vector<std::size_t> picked(docs.size());
  OracleOptions opts;
  opts.max_sentences = a.max_selected;
  parallel_for(docs.size(), a.threads, [&](std::size_t i) {
    const LabelVector lv = greedy_oracle(docs[i], opts);
    records[i] = label_record(docs[i].id, lv);
    objective[i] = lv.objective_trace.empty() ? 0.0 : lv.objective_trace.back();
    picked[i] = lv.selected_order.size();
  });
  std::ofstream out(a.out, std::ios::trunc);
  if (!out) throw IoError("cannot write " + a.out);
  for (const auto& r : records) out << r << '\n';
  out.close();
  write_manifest(a.out, m);
  double obj = 0, sel = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    obj += objective[i];
    sel += static_cast<double>(picked[i]);
  }
  const double k = docs.empty() ? 1.0 : static_cast<double>(docs.size());
  log_line({{"event", "oracle"}, {"documents", docs.size()},
            {"mean_objective", obj / k}, {"mean_selected", sel / k}});
  return 0;
}

// ---- build-graph ----------------------------------------------------------

struct GraphArgs {
  std::string input, out, emb = "tfidf", keyword_vectors = "sentence";
  std::optional<std::size_t> limit;
  std::size_t emb_dim = 768, keywords = 20, topics_max = 100, sweeps = 200;
  std::size_t min_deg = 5, max_deg = 25, threads = 0;
  double lda_alpha = 0.1, lda_beta = 0.01;
  std::uint64_t seed = 13, emb_seed = 7;
  bool cache = false;
};

int run_build_graph(const GraphArgs& a) {
  RunManifest m;
  m.command = "build-graph";
  m.options = {{"limit", a.limit ? json(*a.limit) : json()},
               {"emb", a.emb == "tfidf" ? "tfidf" : "exported"},
               {"emb_dim", a.emb_dim}, {"emb_seed", a.emb_seed},
               {"keywords", a.keywords}, {"keyword_vectors", a.keyword_vectors},
               {"topics_max", a.topics_max},
               {"sweeps", a.sweeps}, {"lda_alpha", a.lda_alpha}, {"lda_beta", a.lda_beta},
               {"min_deg", a.min_deg}, {"max_deg", a.max_deg}};
  m.seed = a.seed;
  m.add_input(a.input);
  m.add_input(a.emb);
  m.created = utc_timestamp();
  fs::create_directories(a.out);
  if (a.cache && cache_hit(a.out, m)) {
    log_line({{"event", "cache_hit"}, {"artifact", a.out}});
    return 0;
  }
  const auto docs = load_documents(a.input, a.limit, false, 600);
  const EmbeddingSource emb(a.emb, a.emb_dim, a.emb_seed);
  GraphBuildOptions opts;
  opts.topics_max = a.topics_max;
  opts.lda_sweeps = a.sweeps;
  opts.lda_alpha = a.lda_alpha;
  opts.lda_beta = a.lda_beta;
  opts.keywords = a.keywords;
  if (a.keyword_vectors == "token" && !emb.is_tfidf()) {
    throw ConfigError("--keyword-vectors token needs --emb tfidf");
  }
  opts.keyword_vectors = a.keyword_vectors == "token" ? KeywordVectors::kHashedTfidf
                                                      : KeywordVectors::kSentenceRows;
  opts.fuse = {a.min_deg, a.max_deg};
  opts.seed = a.seed;
  opts.embedding_seed = a.emb_seed;
  const std::string hash = m.hash();
  std::vector<std::array<std::size_t, 3>> counts(docs.size());
  parallel_for(docs.size(), a.threads, [&](std::size_t i) {
    DocumentGraph g = build_document_graph(docs[i], emb.embed(docs[i]), opts);
    g.file.manifest = hash;
    write_graph(graph_path(a.out, docs[i].id), g.file);
    std::ofstream side(keywords_path(a.out, docs[i].id), std::ios::trunc);
    if (!side) throw IoError("cannot write " + keywords_path(a.out, docs[i].id));
    side << keywords_sidecar_json(g) << '\n';
    for (auto t : g.file.graph.edge_types()) ++counts[i][static_cast<int>(t)];
  });
  write_manifest(a.out, m);
  std::array<double, 3> total{};
  for (const auto& c : counts) {
    for (int t = 0; t < 3; ++t) total[t] += static_cast<double>(c[t]);
  }
  const double k = docs.empty() ? 1.0 : static_cast<double>(docs.size());
  log_line({{"event", "build-graph"}, {"documents", docs.size()},
            {"mean_section_edges", total[0] / k}, {"mean_topic_edges", total[1] / k},
            {"mean_keyword_edges", total[2] / k}, {"manifest", hash}});
  return 0;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::string train, val, graphs, emb = "tfidf", labels, out;
  std::optional<std::size_t> limit, val_limit;
  std::size_t emb_dim = 768;
  std::uint64_t emb_seed = 7;
  TrainConfig config;
  bool cache = false;
};

int run_train(TrainArgs a) {
  a.config.model.input_dim = a.emb_dim;
  if (!fs::is_directory(a.graphs)) {
    throw IoError("graph directory " + a.graphs + " not found (run `hegel build-graph` first)");
  }
  if (!fs::exists(a.labels)) {
    throw IoError("labels file " + a.labels + " not found (run `hegel oracle` first)");
  }
  RunManifest m;
  m.command = "train";
  m.options = a.config.to_json();
  m.options["emb"] = a.emb == "tfidf" ? "tfidf" : "exported";
  m.options["emb_dim"] = a.emb_dim;
  m.options["emb_seed"] = a.emb_seed;
  m.options["limit"] = a.limit ? json(*a.limit) : json();
  m.options["val_limit"] = a.val_limit ? json(*a.val_limit) : json();
  m.seed = a.config.seed;
  m.add_input(a.train);
  m.add_input(a.val);
  m.add_input(a.labels);
  m.add_input(a.graphs);
  m.add_input(a.emb);
  m.created = utc_timestamp();
  if (a.cache && cache_hit(a.out, m)) {
    log_line({{"event", "cache_hit"}, {"artifact", a.out}});
    return 0;
  }
  a.config.validate();
  const auto train_docs = load_documents(a.train, a.limit, false, 600);
  const auto val_docs = load_documents(a.val, a.val_limit, false, 600);
  const auto labels = read_labels(a.labels);
  const EmbeddingSource emb(a.emb, a.emb_dim, a.emb_seed);
  const auto train_set = assemble_samples(train_docs, a.graphs, emb,
                                          a.config.model.positional, &labels,
                                          a.config.threads);
  const auto val_set = assemble_samples(val_docs, a.graphs, emb,
                                        a.config.model.positional, nullptr,
                                        a.config.threads);
  log_line({{"event", "train_start"}, {"train_docs", train_set.size()},
            {"val_docs", val_set.size()}, {"isa", kernels::active_isa_name()},
            {"lead_val_rouge1_f", lead_rouge(val_set, a.config.selection).r1.f1}});
  a.config.on_epoch = [](const EpochLog& e) {
    log_line({{"event", "epoch"}, {"epoch", e.epoch}, {"loss", e.train_loss},
              {"val_rouge1_f", e.val_rouge1_f}, {"improved", e.improved},
              {"seconds", e.seconds}});
  };
  TrainResult result = train(train_set, val_set, a.config);
  result.best.metadata["embeddings"] = {{"source", a.emb}, {"dim", a.emb_dim},
                                        {"seed", a.emb_seed}};
  result.best.metadata["manifest"] = m.hash();
  write_checkpoint(a.out, result.best);
  write_manifest(a.out, m);
  log_line({{"event", "train_done"}, {"best_epoch", result.best.epoch},
            {"best_val_rouge1_f", result.best.val_rouge1_f},
            {"epochs_run", result.history.size()}, {"checkpoint", a.out}});
  return 0;
}

// ---- summarize ------------------------------------------------------------

struct SummarizeArgs {
  std::string input, checkpoint, graphs, emb, out, method = "hegel", doc;
  std::optional<std::size_t> limit;
  std::size_t budget_words = 203, max_sents = 10, threads = 0;
  bool annotate = false;
};

EmbeddingSource embedding_source_for(const Checkpoint& ck, const std::string& override_spec) {
  const json e = ck.metadata.value("embeddings", json::object());
  const std::string spec = override_spec.empty() ? e.value("source", "tfidf") : override_spec;
  return EmbeddingSource(spec, ck.config.input_dim, e.value("seed", std::uint64_t{7}));
}

// Section, topic and keyword edges touching sentence i, as readable tags.
std::string annotate_sentence(const Document& doc, const GraphFile& gf, std::size_t i) {
  std::ostringstream tags;
  tags << "[section: " << doc.sections[doc.section_index()[i]].name << "]";
  std::vector<std::string> topics, keywords;
  for (auto e : gf.graph.incident(i)) {
    const std::string& label = e < gf.edge_labels.size() ? gf.edge_labels[e] : "";
    if (gf.graph.edge_types()[e] == EdgeType::kTopic) topics.push_back(label.substr(6));
    if (gf.graph.edge_types()[e] == EdgeType::kKeyword) keywords.push_back(label.substr(8));
  }
  if (!topics.empty()) {
    tags << " [topic:";
    for (const auto& t : topics) tags << " " << t;
    tags << "]";
  }
  if (!keywords.empty()) {
    tags << " [keywords:";
    for (std::size_t k = 0; k < keywords.size(); ++k) tags << (k ? ", " : " ") << keywords[k];
    tags << "]";
  }
  return tags.str();
}

int run_summarize(const SummarizeArgs& a) {
  if (a.method != "hegel" && a.method != "lead" && a.method != "oracle") {
    throw ConfigError("--method must be hegel, lead or oracle");
  }
  auto docs = load_documents(a.input, a.limit, false, 600);
  if (!a.doc.empty()) {
    std::erase_if(docs, [&](const Document& d) { return d.id != a.doc; });
    if (docs.empty()) throw IoError("document '" + a.doc + "' not found in " + a.input);
  }
  const SelectionOptions sel{a.budget_words, a.max_sents};
  std::vector<std::vector<std::size_t>> picks(docs.size());
  if (a.method == "hegel") {
    if (a.checkpoint.empty()) throw ConfigError("--checkpoint is required for --method hegel");
    if (a.graphs.empty()) throw ConfigError("--graphs is required for --method hegel");
    const Checkpoint ck = read_checkpoint(a.checkpoint);
    const HegelModel<float> model = restore_model<float>(ck);
    const EmbeddingSource emb = embedding_source_for(ck, a.emb);
    const auto samples = assemble_samples(docs, a.graphs, emb, ck.config.positional,
                                          nullptr, a.threads);
    parallel_for(samples.size(), a.threads, [&](std::size_t i) {
      picks[i] = select_summary(model.scores(samples[i].inputs, samples[i].graph),
                                samples[i].doc, sel);
    });
  } else if (a.method == "lead") {
    for (std::size_t i = 0; i < docs.size(); ++i) picks[i] = lead_summary(docs[i], sel);
  } else {
    parallel_for(docs.size(), a.threads, [&](std::size_t i) {
      const auto lv = greedy_oracle(docs[i]);
      std::vector<std::size_t> chosen;
      for (std::size_t s = 0; s < lv.labels.size(); ++s) {
        if (lv.labels[s]) chosen.push_back(s);
      }
      picks[i] = chosen;
    });
  }
  std::ofstream out;
  if (!a.out.empty()) {
    out.open(a.out, std::ios::trunc);
    if (!out) throw IoError("cannot write " + a.out);
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const json rec = {{"article_id", docs[i].id}, {"method", a.method},
                      {"selected", picks[i]},
                      {"summary", summary_sentences(docs[i], picks[i])}};
    if (out.is_open()) out << rec.dump() << '\n';
    if (a.annotate) {
      std::optional<GraphFile> gf;
      if (!a.graphs.empty() && fs::exists(graph_path(a.graphs, docs[i].id))) {
        gf = read_graph(graph_path(a.graphs, docs[i].id));
      }
      std::cout << "== " << docs[i].id << " ==\n";
      for (std::size_t s : picks[i]) {
        std::cout << "[" << s << "] ";
        if (gf) {
          std::cout << annotate_sentence(docs[i], *gf, s) << " ";
        } else {
          std::cout << "[section: " << docs[i].sections[docs[i].section_index()[s]].name
                    << "] ";
        }
        std::cout << docs[i].sentences[s] << "\n";
      }
    } else if (!out.is_open()) {
      std::cout << rec.dump() << "\n";
    }
  }
  return 0;
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::string input, summaries;
  bool as_json = false;
};

int run_evaluate(const EvaluateArgs& a) {
  const auto docs = load_documents(a.input, std::nullopt, false, 600);
  std::map<std::string, const Document*> by_id;
  for (const auto& d : docs) by_id[d.id] = &d;
  std::ifstream in(a.summaries);
  if (!in) throw IoError("cannot open summaries " + a.summaries + " (run `hegel summarize` first)");
  double r1 = 0, r2 = 0, rl = 0;
  std::size_t count = 0, line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(a.summaries + ": " + e.what(), line_no);
    }
    const std::string id = rec.value("article_id", "");
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw FormatError(a.summaries + ": unknown article_id '" + id + "'");
    }
    TokenList cand;
    for (const auto& s : rec.value("summary", std::vector<std::string>{})) {
      const auto t = tokenize(s);
      cand.insert(cand.end(), t.begin(), t.end());
    }
    const auto r = rouge_all(cand, it->second->abstract_tokens());
    r1 += r.r1.f1;
    r2 += r.r2.f1;
    rl += r.rl.f1;
    ++count;
  }
  if (count == 0) throw FormatError(a.summaries + " contains no summaries");
  const double k = static_cast<double>(count);
  if (a.as_json) {
    log_line({{"event", "evaluate"}, {"documents", count}, {"rouge1_f", r1 / k},
              {"rouge2_f", r2 / k}, {"rougeL_f", rl / k}});
  } else {
    std::cout << std::fixed << std::setprecision(2) << "ROUGE-1/2/L F (" << count
              << " docs): " << 100 * r1 / k << " / " << 100 * r2 / k << " / "
              << 100 * rl / k << "\n";
  }
  return 0;
}

// ---- inspect --------------------------------------------------------------

struct InspectArgs {
  std::string checkpoint, graph, input, doc, graphs, emb;
  std::size_t budget_words = 203, max_sents = 10;
};

int run_inspect(const InspectArgs& a) {
  if (!a.graph.empty()) {
    const GraphFile gf = read_graph(a.graph);
    json degrees = json::array();
    for (std::size_t j = 0; j < gf.graph.edges(); ++j) {
      degrees.push_back({{"type", edge_type_name(gf.graph.edge_types()[j])},
                         {"degree", gf.graph.degree(j)},
                         {"label", j < gf.edge_labels.size() ? gf.edge_labels[j] : ""}});
    }
    std::cout << json{{"article_id", gf.article_id}, {"n", gf.graph.nodes()},
                      {"m", gf.graph.edges()}, {"edges", degrees},
                      {"manifest", gf.manifest}}.dump(2) << "\n";
    return 0;
  }
  if (a.checkpoint.empty()) throw ConfigError("inspect needs --checkpoint or --graph");
  const Checkpoint ck = read_checkpoint(a.checkpoint);
  if (a.doc.empty()) {
    json tensors = json::array();
    for (std::size_t i = 0; i < ck.params.size(); ++i) {
      tensors.push_back({{"name", ck.params[i].name},
                         {"shape", {ck.params[i].value.rows(), ck.params[i].value.cols()}}});
    }
    std::cout << json{{"config", ck.config.to_json()}, {"epoch", ck.epoch},
                      {"val_rouge1_f", ck.val_rouge1_f}, {"metadata", ck.metadata},
                      {"scalars", ck.params.scalar_count()}, {"tensors", tensors}}.dump(2)
              << "\n";
    return 0;
  }
  if (a.input.empty() || a.graphs.empty()) {
    throw ConfigError("inspect --doc needs --input and --graphs");
  }
  auto docs = load_documents(a.input, std::nullopt, false, 600);
  std::erase_if(docs, [&](const Document& d) { return d.id != a.doc; });
  if (docs.empty()) throw IoError("document '" + a.doc + "' not found in " + a.input);
  const HegelModel<float> model = restore_model<float>(ck);
  const auto samples = assemble_samples(docs, a.graphs, embedding_source_for(ck, a.emb),
                                        ck.config.positional, nullptr, 1);
  ForwardTrace<float> trace;
  const auto scores = model.scores(samples[0].inputs, samples[0].graph, &trace);
  const auto picked = select_summary(scores, samples[0].doc, {a.budget_words, a.max_sents});
  const AttentionShares shares = attention_stats(trace, samples[0].graph, picked);
  std::cout << json{{"article_id", a.doc},
                    {"scores", scores},
                    {"selected", picked},
                    {"attention_shares", {{"section", shares.section},
                                          {"topic", shares.topic},
                                          {"keyword", shares.keyword},
                                          {"nodes", shares.nodes}}}}.dump(2)
            << "\n";
  return 0;
}

}  // namespace
}  // namespace hegel

int main(int argc, char** argv) {
  using namespace hegel;
  CLI::App app{"hegel: hypergraph transformer for extractive long-document summarization"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate a JSONL corpus and report statistics");
  c_ingest->add_option("--input", ingest.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  c_ingest->add_option("--out", ingest.out, "Write validated documents here");
  c_ingest->add_option("--limit", ingest.limit, "Read at most this many documents");
  c_ingest->add_option("--max-sentences", ingest.max_sentences, "Truncate longer documents");
  c_ingest->add_flag("--strict", ingest.strict, "Fail on the first malformed line");
  c_ingest->add_flag("--cache", ingest.cache, "Skip when inputs and options are unchanged");

  OracleArgs oracle;
  auto* c_oracle = app.add_subcommand("oracle", "Greedy ROUGE oracle labels");
  c_oracle->add_option("--input", oracle.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  c_oracle->add_option("--out,--output", oracle.out, "Labels JSONL")->required();
  c_oracle->add_option("--limit", oracle.limit, "Label at most this many documents");
  c_oracle->add_option("--max-selected", oracle.max_selected, "Oracle sentence cap");
  c_oracle->add_option("--threads", oracle.threads, "Workers (0 = HEGEL_THREADS or all cores)");
  c_oracle->add_flag("--cache", oracle.cache, "Skip when inputs and options are unchanged");

  GraphArgs graph;
  auto* c_graph = app.add_subcommand("build-graph", "Build section/topic/keyword hypergraphs");
  c_graph->add_option("--input", graph.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  c_graph->add_option("--out", graph.out, "Graph cache directory")->required();
  c_graph->add_option("--emb", graph.emb, "'tfidf' or an exported embedding directory");
  c_graph->add_option("--emb-dim", graph.emb_dim, "TF-IDF fallback width");
  c_graph->add_option("--emb-seed", graph.emb_seed, "TF-IDF token hashing seed");
  c_graph->add_option("--limit", graph.limit, "Build at most this many documents");
  c_graph->add_option("--keywords", graph.keywords, "Keywords per document");
  c_graph->add_option("--keyword-vectors", graph.keyword_vectors,
                      "Candidate vectors: 'sentence' (mean of containing sentence rows) "
                      "or 'token' (mean of hashed TF-IDF token bases)")
      ->check(CLI::IsMember({"sentence", "token"}));
  c_graph->add_option("--topics-max", graph.topics_max, "Upper bound on LDA topics per document");
  c_graph->add_option("--lda-sweeps", graph.sweeps, "Gibbs sweeps");
  c_graph->add_option("--lda-alpha", graph.lda_alpha, "Document-topic prior");
  c_graph->add_option("--lda-beta", graph.lda_beta, "Topic-word prior");
  c_graph->add_option("--min-deg", graph.min_deg, "Minimum topic/keyword edge degree");
  c_graph->add_option("--max-deg", graph.max_deg, "Maximum topic/keyword edge degree");
  c_graph->add_option("--seed", graph.seed, "LDA sampler seed");
  c_graph->add_option("--threads", graph.threads, "Workers (0 = HEGEL_THREADS or all cores)");
  c_graph->add_flag("--cache", graph.cache, "Skip when inputs and options are unchanged");

  TrainArgs tr;
  auto& tc = tr.config;
  auto* c_train = app.add_subcommand("train", "Train with validation-based early stopping");
  c_train->add_option("--train", tr.train, "Training corpus JSONL")->required()->check(CLI::ExistingFile);
  c_train->add_option("--val", tr.val, "Validation corpus JSONL")->required()->check(CLI::ExistingFile);
  c_train->add_option("--graphs", tr.graphs, "Graph cache directory covering both corpora")->required();
  c_train->add_option("--labels", tr.labels, "Oracle labels JSONL covering the training corpus")->required();
  c_train->add_option("--out", tr.out, "Checkpoint path")->required();
  c_train->add_option("--emb", tr.emb, "'tfidf' or an exported embedding directory");
  c_train->add_option("--emb-dim", tr.emb_dim, "TF-IDF fallback width");
  c_train->add_option("--emb-seed", tr.emb_seed, "TF-IDF token hashing seed");
  c_train->add_option("--limit", tr.limit, "Use at most this many training documents");
  c_train->add_option("--val-limit", tr.val_limit, "Use at most this many validation documents");
  c_train->add_option("--width", tc.model.width, "Hidden width");
  c_train->add_option("--layers", tc.model.layers, "Hypergraph attention layers");
  c_train->add_option("--heads", tc.model.heads, "Attention heads per layer");
  c_train->add_option("--head-dim", tc.model.head_dim, "Per-head width");
  c_train->add_option("--ffn", tc.model.ffn_dim, "Feed-forward inner width");
  c_train->add_option("--output-hidden", tc.model.output_hidden, "Scoring head hidden width");
  c_train->add_option("--dropout", tc.model.dropout, "Dropout rate during training");
  c_train->add_option("--gamma-section", tc.model.positional.gamma_section, "Section positional encoding scale");
  c_train->add_option("--gamma-sentence", tc.model.positional.gamma_sentence, "In-section positional encoding scale");
  c_train->add_option("--lr", tc.adam.lr, "Adam learning rate");
  c_train->add_option("--clip-norm", tc.adam.clip_norm, "0 disables clipping");
  c_train->add_option("--epochs", tc.epochs, "Maximum epochs");
  c_train->add_option("--patience", tc.patience, "Epochs without validation gain before stopping");
  c_train->add_option("--seed", tc.seed, "Initialization, shuffle and dropout seed");
  c_train->add_option("--budget-words", tc.selection.budget_words, "Summary word budget used for validation");
  c_train->add_option("--max-sents", tc.selection.max_sentences, "Summary sentence cap used for validation");
  c_train->add_option("--threads", tc.threads, "Workers (0 = HEGEL_THREADS or all cores)");
  c_train->add_flag("--cache", tr.cache, "Skip when inputs and options are unchanged");

  SummarizeArgs sum;
  auto* c_sum = app.add_subcommand("summarize", "Select summary sentences");
  c_sum->add_option("--input", sum.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  c_sum->add_option("--method", sum.method, "hegel, lead or oracle");
  c_sum->add_option("--checkpoint", sum.checkpoint, "Checkpoint for --method hegel");
  c_sum->add_option("--graphs", sum.graphs, "Graph cache directory for --method hegel");
  c_sum->add_option("--emb", sum.emb, "Override the checkpoint's embedding source");
  c_sum->add_option("--out", sum.out, "Summaries JSONL");
  c_sum->add_option("--doc", sum.doc, "Only this article_id");
  c_sum->add_option("--limit", sum.limit, "Summarize at most this many documents");
  c_sum->add_option("--budget-words", sum.budget_words, "Summary word budget");
  c_sum->add_option("--max-sents", sum.max_sents, "Summary sentence cap");
  c_sum->add_option("--threads", sum.threads, "Workers (0 = HEGEL_THREADS or all cores)");
  c_sum->add_flag("--annotate", sum.annotate, "Print sentences tagged with sections, topics, keywords");

  EvaluateArgs ev;
  auto* c_eval = app.add_subcommand("evaluate", "ROUGE-1/2/L F against abstracts");
  c_eval->add_option("--input", ev.input, "Corpus JSONL holding the reference abstracts")->required()->check(CLI::ExistingFile);
  c_eval->add_option("--summaries", ev.summaries, "Summaries JSONL")->required();
  c_eval->add_flag("--json", ev.as_json, "Print scores as JSON");

  InspectArgs ins;
  auto* c_ins = app.add_subcommand("inspect", "Describe a checkpoint, graph or per-document attention");
  c_ins->add_option("--checkpoint", ins.checkpoint, "Checkpoint file");
  c_ins->add_option("--graph", ins.graph, "Graph cache file");
  c_ins->add_option("--input", ins.input, "Corpus JSONL, with --doc");
  c_ins->add_option("--doc", ins.doc, "Per-document attention for this article_id");
  c_ins->add_option("--graphs", ins.graphs, "Graph cache directory, with --doc");
  c_ins->add_option("--emb", ins.emb, "Override the embedding source, with --doc");
  c_ins->add_option("--budget-words", ins.budget_words, "Summary word budget, with --doc");
  c_ins->add_option("--max-sents", ins.max_sents, "Summary sentence cap, with --doc");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    if (*c_ingest) return run_ingest(ingest);
    if (*c_oracle) return run_oracle(oracle);
    if (*c_graph) return run_build_graph(graph);
    if (*c_train) return run_train(tr);
    if (*c_sum) return run_summarize(sum);
    if (*c_eval) return run_evaluate(ev);
    if (*c_ins) return run_inspect(ins);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

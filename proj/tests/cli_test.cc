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

// Drives the built binaries end to end through a shell.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hegel/corpus.h"
#include "json.hpp"
#include "test_support.h"

namespace hegel {
namespace {

struct Outcome {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

Outcome run(const std::string& args, const char* binary = HEGEL_CLI_PATH) {
  const std::string cmd = std::string("'") + binary + "' " + args + " 2>&1";
  Outcome r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome synth(const std::string& args) { return run(args, HEGEL_SYNTH_PATH); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class Cli : public ::testing::Test {
 protected:
  testing::TempDir dir{"cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name())};
  std::string f(const std::string& name) const { return "'" + dir.file(name) + "'"; }
};

TEST_F(Cli, EvaluateIdenticalSummariesScoresHundred) {
  ASSERT_EQ(synth("--out " + f("c.jsonl") + " --docs 5 --seed 4").code, 0);
  std::ofstream out(dir.file("s.jsonl"));
  for (const auto& doc : load_jsonl(dir.file("c.jsonl")).documents) {
    out << nlohmann::json{{"article_id", doc.id}, {"summary", doc.abstract}}.dump() << "\n";
  }
  out.close();
  const Outcome r = run("evaluate --input " + f("c.jsonl") + " --summaries " + f("s.jsonl"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("100.00 / 100.00 / 100.00"), std::string::npos) << r.output;
}

TEST_F(Cli, BuildGraphIsByteIdenticalAcrossRuns) {
  ASSERT_EQ(synth("--out " + f("c.jsonl") + " --style arxiv --docs 6 --seed 2").code, 0);
  for (const char* out : {"g1", "g2"}) {
    const Outcome r = run("build-graph --input " + f("c.jsonl") + " --out " + f(out) +
                      " --lda-sweeps 40 --threads 3");
    ASSERT_EQ(r.code, 0) << r.output;
  }
  std::size_t graphs = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path() / "g1")) {
    if (e.path().extension() != ".graph" && e.path().extension() != ".json") continue;
    if (e.path().filename() == "run.manifest.json") continue;
    graphs += e.path().extension() == ".graph";
    EXPECT_EQ(slurp(e.path()), slurp(dir.path() / "g2" / e.path().filename()))
        << e.path().filename();
  }
  EXPECT_EQ(graphs, 6u);
}

TEST_F(Cli, CacheSkipsUnchangedRerun) {
  ASSERT_EQ(synth("--out " + f("c.jsonl") + " --docs 3").code, 0);
  const std::string cmd = "oracle --input " + f("c.jsonl") + " --out " + f("l.jsonl") + " --cache";
  ASSERT_EQ(run(cmd).code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir.file("l.jsonl.manifest.json")));
  const Outcome again = run(cmd);
  EXPECT_EQ(again.code, 0);
  EXPECT_NE(again.output.find("cache_hit"), std::string::npos) << again.output;
  const Outcome changed = run(cmd + " --max-selected 2");
  EXPECT_EQ(changed.output.find("cache_hit"), std::string::npos) << changed.output;
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("evaluate --no-such-flag").code, 1);
  EXPECT_EQ(run("").code, 1);
  ASSERT_EQ(synth("--out " + f("c.jsonl") + " --docs 2").code, 0);
  const Outcome r = run("build-graph --input " + f("c.jsonl") + " --out " + f("g") +
                    " --topics-max 0");
  EXPECT_EQ(r.code, 1) << r.output;
}

TEST_F(Cli, MissingArtifactsExitTwoWithNextStep) {
  ASSERT_EQ(synth("--out " + f("c.jsonl") + " --docs 2").code, 0);
  std::ofstream(dir.file("l.jsonl")) << "";
  const Outcome r = run("train --train " + f("c.jsonl") + " --val " + f("c.jsonl") + " --graphs " +
                    f("nope") + " --labels " + f("l.jsonl") + " --out " + f("m.ckpt"));
  EXPECT_EQ(r.code, 2) << r.output;
  EXPECT_NE(r.output.find("hegel build-graph"), std::string::npos) << r.output;
  const Outcome e = run("evaluate --input " + f("c.jsonl") + " --summaries " + f("none.jsonl"));
  EXPECT_EQ(e.code, 2) << e.output;
}

TEST_F(Cli, EndToEndPipelineOnFiftyDocuments) {
  ASSERT_EQ(synth("--out " + f("train.jsonl") + " --docs 40 --seed 8").code, 0);
  ASSERT_EQ(synth("--out " + f("val.jsonl") + " --docs 10 --skip 40 --seed 8").code, 0);
  ASSERT_EQ(run("ingest --input " + f("train.jsonl")).code, 0);
  for (const char* split : {"train", "val"}) {
    const std::string s = split;
    Outcome r = run("oracle --input " + f(s + ".jsonl") + " --out " + f(s + ".labels.jsonl"));
    ASSERT_EQ(r.code, 0) << r.output;
    r = run("build-graph --input " + f(s + ".jsonl") + " --out " + f("graphs") +
            " --emb-dim 64 --lda-sweeps 40");
    ASSERT_EQ(r.code, 0) << r.output;
  }
  Outcome r = run("train --train " + f("train.jsonl") + " --val " + f("val.jsonl") + " --graphs " +
              f("graphs") + " --labels " + f("train.labels.jsonl") + " --out " + f("m.ckpt") +
              " --emb-dim 64 --width 32 --heads 2 --head-dim 16 --ffn 64 --output-hidden 64"
              " --epochs 2 --lr 1e-3");
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(std::filesystem::exists(dir.file("m.ckpt.manifest.json")));

  r = run("summarize --input " + f("val.jsonl") + " --checkpoint " + f("m.ckpt") + " --graphs " +
          f("graphs") + " --out " + f("sum.jsonl"));
  ASSERT_EQ(r.code, 0) << r.output;
  std::ifstream sums(dir.file("sum.jsonl"));
  std::string line;
  std::size_t records = 0;
  while (std::getline(sums, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_FALSE(j.at("summary").empty());
    ++records;
  }
  EXPECT_EQ(records, 10u);

  r = run("evaluate --input " + f("val.jsonl") + " --summaries " + f("sum.jsonl") + " --json");
  ASSERT_EQ(r.code, 0) << r.output;
  const auto scores = nlohmann::json::parse(r.output.substr(r.output.find('{')));
  EXPECT_GT(scores.dump().size(), 2u);

  r = run("inspect --checkpoint " + f("m.ckpt"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("\"width\""), std::string::npos) << r.output;

  const std::string first_id = load_jsonl(dir.file("val.jsonl")).documents.at(0).id;
  r = run("inspect --checkpoint " + f("m.ckpt") + " --input " + f("val.jsonl") + " --graphs " +
          f("graphs") + " --doc '" + first_id + "'");
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("section"), std::string::npos) << r.output;

  r = run("summarize --input " + f("val.jsonl") + " --method lead --limit 2");
  EXPECT_EQ(r.code, 0) << r.output;
}

}  // namespace
}  // namespace hegel

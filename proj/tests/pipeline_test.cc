// Copyright 2026 The Threadscope Authors.
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

#include "threadscope/pipeline.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.h"
#include "threadscope/errors.h"
#include "threadscope/typescope.h"

namespace threadscope {
namespace {

using json = nlohmann::json;
using testing::ReadFile;
using testing::TempDir;
using testing::WriteFile;

std::vector<json> JsonLines(const std::string &text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

TEST(RunConfigTest, ParsesKeysAndResolvesRelativePaths) {
  const RunConfig c = ParseRunConfig(
      "# comment\n"
      "corpus = data/c.jsonl   # trailing comment\n"
      "api_db=/abs/db.jsonl\n"
      "seed = 42\n"
      "epochs = 3\n"
      "optimizer = sgd\n"
      "x = 0.3\n"
      "grid = 0, 0.5, 1\n"
      "synth.ambiguity = 3\n",
      "/base");
  EXPECT_EQ(c.corpus_path, "/base/data/c.jsonl");
  EXPECT_EQ(c.api_db_path, "/abs/db.jsonl");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.train.epochs, 3);
  EXPECT_EQ(c.train.optimizer, Optimizer::kSgd);
  EXPECT_EQ(c.fusion.x, 0.3);
  EXPECT_EQ(c.fusion.grid, (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(c.synth.ambiguity, 3);
  EXPECT_EQ(c.ModelPath(), "/base/out/model.bin");
}

TEST(RunConfigTest, RejectsBadInput) {
  EXPECT_THROW(ParseRunConfig("colour = red\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("seed\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("seed = -1\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("epochs = 0\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("x = 1.5\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("learning_rate = abc\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("grid = 0, 2\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("optimizer = rmsprop\n"), ConfigError);
}

TEST(RunConfigTest, FormatRoundTrips) {
  RunConfig c = ParseRunConfig("corpus = c.jsonl\nx = 0.7\nlearning_rate = 0.001\n"
                               "hash_seed = 123\nsynth.semantic_signal = 0.25\n",
                               "/tmp/base");
  const RunConfig back = ParseRunConfig(FormatRunConfig(c), "/elsewhere");
  EXPECT_EQ(back.corpus_path, c.corpus_path);
  EXPECT_EQ(back.fusion.x, 0.7);
  EXPECT_EQ(back.train.learning_rate, 0.001);
  EXPECT_EQ(back.hash_seed, 123u);
  EXPECT_EQ(back.synth.semantic_signal, 0.25);
  EXPECT_EQ(back.fusion.grid, c.fusion.grid);
  EXPECT_EQ(FormatRunConfig(back), FormatRunConfig(c));
}

TEST(EngineTest, RejectsInconsistentInputs) {
  HashEmbeddingProvider provider;
  Thread t;
  t.id = 1;
  t.paragraphs = {"x"};
  EXPECT_THROW(Engine({t, t}, {}, {}, provider), IngestionError);
  EXPECT_THROW(Engine({t}, {}, {{1, "a.B.c", true}}, provider), IngestionError);
  EXPECT_THROW(Engine({t}, {{"a.B.c", "", ""}}, {{2, "a.B.c", true}}, provider),
               IngestionError);
}

TEST(EngineTest, TrainingExamplesUseSameNamedNegatives) {
  HashEmbeddingProvider provider;
  Thread t;
  t.id = 1;
  t.title = "Use mock";
  t.paragraphs = {t.title, "details"};
  t.code_snippets = {"PowerMockito.mock(A.class);"};
  const std::vector<ApiMethod> db = {
      {"org.mockito.Mockito.mock", "Creates mock", ""},
      {"org.powermock.api.mockito.PowerMockito.mock", "Creates mock", ""},
      {"a.B.other", "", ""}};
  Engine engine({t}, db, {{1, db[1].fqn, true}}, provider);
  const std::vector<RelevanceEmbedding> examples = engine.TrainingExamples({1});
  // Two paragraphs times one snippet, for one positive and one negative API.
  ASSERT_EQ(examples.size(), 4u);
  std::size_t positives = 0;
  for (const RelevanceEmbedding &e : examples) {
    positives += *e.label;
    EXPECT_EQ(*e.label, e.api_fqn == db[1].fqn);
  }
  EXPECT_EQ(positives, 2u);
  EXPECT_TRUE(engine.TrainingExamples({99}).empty());
}

TEST(OutputLockTest, SecondOwnerIsRefused) {
  TempDir dir;
  {
    OutputLock first(dir / "out");
    EXPECT_THROW(OutputLock second(dir / "out"), std::runtime_error);
  }
  OutputLock again(dir / "out");
}

// Named regression fixtures shaped like three well-known failure and success
// cases for type scoping.
class CaseStudyTest : public ::testing::Test {
 protected:
  static Thread Parse(ThreadId id, const std::string &title,
                      const std::string &body) {
    return ParseThreadRecord(ThreadToRecord(id, title, {"java"}, body));
  }
};

TEST_F(CaseStudyTest, StubbingTypeAbsentFromThread) {
  // The thread uses thenReturn but never names its declaring type.
  const Thread t = Parse(1, "How to return a value from a stubbed method?",
                         "<p>This works like charm!</p>\n\n"
                         "<pre><code>when(service.get()).thenReturn(value);</code></pre>");
  const ApiMethod target{"org.mockito.stubbing.OngoingStubbing.thenReturn",
                         "Sets a return value to be returned when the method is called", ""};
  const ApiMethod other{"org.easymock.IExpectationSetters.thenReturn", "", ""};
  EXPECT_TRUE(IsPotentialThread(t, "thenReturn"));
  EXPECT_EQ(ThreadSyntacticScore(t, target, {other, target}), 0.0);
}

TEST_F(CaseStudyTest, MatcherTypePresentButIrrelevant) {
  // The declaring type appears in text and code, so type scoping accepts.
  const Thread t = Parse(2, "Is there a CharMatcher for this?",
                         "<p>The check is done with CharMatcher.</p>\n\n"
                         "<pre><code>import com.google.common.base.CharMatcher;\n"
                         "boolean ok = CharMatcher.anyOf(s).matchesAllOf(t);</code></pre>");
  const ApiMethod target{"com.google.common.base.CharMatcher.is", "", ""};
  const ApiMethod other{"org.hamcrest.CoreMatchers.is", "", ""};
  EXPECT_EQ(ThreadSyntacticScore(t, target, {other, target}), 1.0);
  EXPECT_EQ(ThreadSyntacticScore(t, other, {other, target}), 0.0);
}

TEST_F(CaseStudyTest, TwoMockingLibrariesShareASimpleName) {
  const Thread t = Parse(3, "How to mock a static method?",
                         "<p>I need to mock a final class.</p>\n\n"
                         "<pre><code>PowerMockito.mockStatic(Util.class);\n"
                         "Service s = PowerMockito.mock(Service.class);</code></pre>");
  const ApiMethod mockito{"org.mockito.Mockito.mock",
                          "Creates mock object of given class or interface", ""};
  const ApiMethod powermock{"org.powermock.api.mockito.PowerMockito.mock", "", ""};
  const std::vector<ApiMethod> db = {mockito, powermock};
  EXPECT_EQ(CandidateSet(mockito, db).size(), 2u);
  EXPECT_EQ(ThreadSyntacticScore(t, powermock, db), 1.0);
  EXPECT_EQ(ThreadSyntacticScore(t, mockito, db), 0.0);
}

class CommandTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::ostringstream sink;
    config_.output_dir = dir_ / "run";
    config_.seed = 3;
    config_.synth = {3, 12, 1, 0.8, 0.8, 0};
    CmdGenSynthetic(config_, sink);
    config_ = LoadRunConfig(dir_ / "run/run.conf");
  }

  TempDir dir_;
  RunConfig config_;
};

TEST_F(CommandTest, IngestWritesNormalizedFiles) {
  std::ostringstream out;
  const IngestSummary s = CmdIngest(config_, out);
  EXPECT_EQ(s.threads, 36u);
  EXPECT_EQ(s.apis, 6u);
  EXPECT_NE(out.str().find("36 threads ingested"), std::string::npos);
  EXPECT_EQ(JsonLines(ReadFile(dir_ / "run/threads.jsonl")).size(), 36u);
}

TEST_F(CommandTest, IngestOfTheFixtureAndEmptyFile) {
  RunConfig c;
  c.output_dir = dir_ / "ingest";
  c.corpus_path = testing::DataPath("corpus_380.jsonl");
  std::ostringstream out;
  CmdIngest(c, out);
  EXPECT_NE(out.str().find("380 threads ingested"), std::string::npos);
  WriteFile(dir_ / "empty.jsonl", "");
  c.corpus_path = dir_ / "empty.jsonl";
  out.str("");
  CmdIngest(c, out);
  EXPECT_NE(out.str().find("0 threads ingested"), std::string::npos);
}

TEST_F(CommandTest, TrainSearchTuneEval) {
  std::ostringstream out, err;
  const TrainSummary train = CmdTrain(config_, out);
  EXPECT_EQ(train.epoch_losses.size(), 6u);
  EXPECT_GT(train.positives, 0u);
  EXPECT_GT(train.negatives, 0u);
  const RunConfig tuned = LoadRunConfig(dir_ / "run/run.conf");
  EXPECT_EQ(tuned.fusion.x, train.tuning.x);
  EXPECT_TRUE(std::filesystem::exists(tuned.ModelPath()));

  const std::string target = LoadApiDb(config_.api_db_path)[0].fqn;
  out.str("");
  const std::vector<SearchHit> hits = CmdSearch(tuned, target, true, out, err);
  ASSERT_FALSE(hits.empty());
  const std::vector<json> records = JsonLines(out.str());
  ASSERT_EQ(records.size(), hits.size());
  for (std::size_t i = 1; i < records.size(); ++i) {
    EXPECT_GE(records[i - 1]["C"].get<double>(), records[i]["C"].get<double>());
  }
  for (const json &r : records) {
    EXPECT_FALSE(r["B"].is_null());
    EXPECT_EQ(r["relevant"].get<bool>(), r["C"].get<double>() > tuned.fusion.t);
  }
  EXPECT_FALSE(err.str().empty());

  out.str("");
  const TuneResult tune = CmdTune(tuned, out);
  EXPECT_EQ(tune.x, train.tuning.x);
  EXPECT_EQ(JsonLines(out.str()).size(), 12u);

  out.str("");
  const EvalSummary eval = CmdEval(tuned, out);
  const std::vector<json> report = JsonLines(ReadFile(dir_ / "run/eval_report.jsonl"));
  EXPECT_EQ(report.size(), 3 * (eval.fused.per_api.size() + 1));
  EXPECT_NE(out.str().find("syntactic only"), std::string::npos);
}

TEST_F(CommandTest, SearchWithXOneMatchesSyntacticOrdering) {
  RunConfig c = config_;
  c.fusion.x = 1.0;  // no model trained
  const std::string fqn = LoadApiDb(c.api_db_path)[0].fqn;
  std::ostringstream out, err;
  const std::vector<SearchHit> hits = CmdSearch(c, fqn, false, out, err);
  ASSERT_FALSE(hits.empty());
  std::vector<double> a;
  for (const SearchHit &h : hits) {
    EXPECT_FALSE(h.b.has_value());
    EXPECT_EQ(h.c, h.a);
    a.push_back(h.a);
  }
  EXPECT_TRUE(std::is_sorted(a.rbegin(), a.rend()));
  for (const json &r : JsonLines(out.str())) EXPECT_TRUE(r["B"].is_null());
}

TEST_F(CommandTest, SearchErrors) {
  RunConfig c = config_;
  std::ostringstream out, err;
  const std::string fqn = LoadApiDb(c.api_db_path)[0].fqn;
  // No model yet and x is not 1.
  c.fusion.x = 0.5;
  EXPECT_THROW(CmdSearch(c, fqn, false, out, err), ConfigError);
  c.fusion.x = 1.0;
  EXPECT_THROW(CmdSearch(c, "no.such.Api.call", false, out, err), ConfigError);
}

TEST_F(CommandTest, SearchWithoutPotentialThreadsIsEmpty) {
  RunConfig c = config_;
  c.fusion.x = 1.0;
  WriteFile(dir_ / "db.jsonl", ReadFile(c.api_db_path) +
                                   ApiToRecord({"z.Nowhere.neverMentioned", "", ""}) + "\n");
  c.api_db_path = dir_ / "db.jsonl";
  std::ostringstream out, err;
  EXPECT_TRUE(CmdSearch(c, "z.Nowhere.neverMentioned", false, out, err).empty());
  EXPECT_TRUE(out.str().empty());
}

TEST_F(CommandTest, SearchRanksThePervasiveThreadFirst) {
  // One thread names the target's type everywhere, another only mentions
  // the method name.
  const std::string body_full =
      "<p>Use Widget.spin to rotate.</p>\n\n"
      "<pre><code>import x.y.Widget;\nWidget w = new Widget();\nw.spin();</code></pre>";
  const std::string body_bare = "<p>How does spin work?</p>";
  WriteFile(dir_ / "c.jsonl", ThreadToRecord(1, "spin question", {}, body_bare) + "\n" +
                                  ThreadToRecord(2, "Widget spin", {}, body_full) + "\n");
  WriteFile(dir_ / "d.jsonl", ApiToRecord({"x.y.Widget.spin", "", ""}) + "\n" +
                                  ApiToRecord({"x.y.Gadget.spin", "", ""}) + "\n");
  RunConfig c;
  c.corpus_path = dir_ / "c.jsonl";
  c.api_db_path = dir_ / "d.jsonl";
  c.output_dir = dir_ / "s";
  c.fusion.x = 1.0;
  std::ostringstream out, err;
  const std::vector<SearchHit> hits = CmdSearch(c, "x.y.Widget.spin", false, out, err);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].thread_id, 2);
  EXPECT_TRUE(hits[0].relevant);
  EXPECT_FALSE(hits[1].relevant);
}

TEST_F(CommandTest, TrainRequiresLabels) {
  RunConfig c = config_;
  c.labels_path.clear();
  std::ostringstream out;
  EXPECT_THROW(CmdTrain(c, out), ConfigError);
}

TEST_F(CommandTest, UnreachableProviderFailsTraining) {
  RunConfig c = config_;
  c.provider = "tcp://127.0.0.1:1";
  std::ostringstream out;
  EXPECT_THROW(CmdTrain(c, out), ProviderError);
}

}  // namespace
}  // namespace threadscope

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

#include "threadscope/typescope.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "oracles.h"
#include "threadscope/errors.h"
#include "threadscope/random.h"

namespace threadscope {
namespace {

Thread MakeThread(std::vector<std::string> body,
                  std::vector<std::string> snippets = {},
                  std::vector<std::string> tags = {}) {
  Thread t;
  t.id = 1;
  t.title = body.empty() ? "" : body[0];
  t.paragraphs = std::move(body);
  t.code_snippets = std::move(snippets);
  t.tags = std::move(tags);
  return t;
}

ApiMention Mention(std::optional<std::string> prefix) {
  ApiMention m;
  m.thread_id = 1;
  m.prefix = std::move(prefix);
  return m;
}

TEST(ExtractMentionsTest, PrefixedMention) {
  const Thread t = MakeThread({"title", "use CharMatcher.is here"});
  const std::vector<ApiMention> m = ExtractMentions(t, "is");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].paragraph, 1u);
  EXPECT_EQ(m[0].token, 2u);
  EXPECT_EQ(m[0].prefix, "CharMatcher");
}

TEST(ExtractMentionsTest, SubstringIsNotAMention) {
  EXPECT_TRUE(ExtractMentions(MakeThread({"this works"}), "is").empty());
}

TEST(ExtractMentionsTest, BareMentionsHaveNoPrefix) {
  const Thread t =
      MakeThread({"Mocking question", "mock it, then mock (mock) again"});
  const std::vector<ApiMention> m = ExtractMentions(t, "mock");
  ASSERT_EQ(m.size(), 3u);
  for (const ApiMention &x : m) EXPECT_FALSE(x.prefix.has_value());
}

TEST(ExtractMentionsTest, DottedChainAndTitleAndCodeExcluded) {
  const Thread t = MakeThread({"org.mockito.Mockito.mock fails", "x"},
                              {"Mockito.mock(Foo.class);"}, {"mock"});
  const std::vector<ApiMention> m = ExtractMentions(t, "mock");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].paragraph, 0u);
  EXPECT_EQ(m[0].prefix, "org.mockito.Mockito");
}

TEST(ExtractPTypesTest, ImportGivesType) {
  const std::vector<PType> p =
      ExtractPTypes({"import com.google.common.base.CharMatcher;"});
  EXPECT_EQ(p, (std::vector<PType>{{"CharMatcher", PTypeOrigin::kImport}}));
}

TEST(ExtractPTypesTest, DeclaredReceiverResolves) {
  const std::vector<PType> p =
      ExtractPTypes({"OngoingStubbing s = when(x); s.thenReturn(y);"});
  const std::vector<PType> expected = {
      {"OngoingStubbing", PTypeOrigin::kVariableDeclaration},
      {"OngoingStubbing", PTypeOrigin::kVariableDeclaration}};
  EXPECT_EQ(p, expected);
}

TEST(ExtractPTypesTest, StaticReceiver) {
  EXPECT_EQ(ExtractPTypes({"Mockito.mock(Foo.class)"}),
            (std::vector<PType>{{"Mockito", PTypeOrigin::kStaticReceiver}}));
}

TEST(ExtractPTypesTest, ObjectCreationAndGenerics) {
  const std::vector<PType> p =
      ExtractPTypes({"List<String> xs = new java.util.ArrayList<>();"});
  EXPECT_NE(std::find(p.begin(), p.end(),
                      PType{"ArrayList", PTypeOrigin::kObjectCreation}),
            p.end());
  EXPECT_NE(std::find(p.begin(), p.end(),
                      PType{"List", PTypeOrigin::kVariableDeclaration}),
            p.end());
}

TEST(ExtractPTypesTest, ResolutionIsPerSnippetAndIgnoresStringsAndComments) {
  const std::vector<PType> p = ExtractPTypes(
      {"Foo f = make();", "f.run(); // Bar.baz()\nString s = \"Qux.go()\";"});
  for (const PType &x : p) {
    EXPECT_NE(x.name, "Bar");
    EXPECT_NE(x.name, "Qux");
  }
  // f is not declared in the second snippet, so only the declaration counts.
  EXPECT_EQ(std::count(p.begin(), p.end(),
                       PType{"Foo", PTypeOrigin::kVariableDeclaration}),
            1);
}

TEST(ScoreCandidateTest, AllScopesFire) {
  const ApiMethod candidate{"com.google.common.base.CharMatcher.is", "", ""};
  const std::vector<PType> ptypes = {{"CharMatcher", PTypeOrigin::kImport}};
  EXPECT_EQ(ScoreCandidate(Mention("CharMatcher"), ptypes, candidate,
                           "use CharMatcher.is here",
                           {"CharMatcher.is('x');"}),
            4);
}

TEST(ScoreCandidateTest, AbsentTypeScoresZero) {
  const ApiMethod candidate{"com.google.common.base.CharMatcher.is", "", ""};
  EXPECT_EQ(ScoreCandidate(Mention("Foo"), {{"Bar", PTypeOrigin::kImport}},
                           candidate, "is it?", {"x.is(y);"}),
            0);
}

TEST(ScoreCandidateTest, CodeTokenScopeAlone) {
  const ApiMethod candidate{"org.mockito.stubbing.OngoingStubbing.thenReturn",
                            "", ""};
  EXPECT_EQ(ScoreCandidate(Mention(std::nullopt), {}, candidate,
                           "use thenReturn",
                           {"// OngoingStubbing\nwhen(a).thenReturn(b);"}),
            1);
}

TEST(ScoreCandidateTest, PrefixMatchIsSegmentWise) {
  const ApiMethod candidate{"a.b.Matcher.is", "", ""};
  EXPECT_EQ(ScoreCandidate(Mention("CharMatcher"), {}, candidate, "", {}), 0);
  EXPECT_EQ(ScoreCandidate(Mention("x.y.Matcher"), {}, candidate, "", {}), 1);
}

TEST(ScoreCandidateTest, EachMatchingPTypeCounts) {
  const ApiMethod candidate{"a.b.Foo.run", "", ""};
  const std::vector<PType> ptypes = {{"Foo", PTypeOrigin::kImport},
                                     {"Foo", PTypeOrigin::kObjectCreation},
                                     {"Bar", PTypeOrigin::kImport}};
  EXPECT_EQ(ScoreCandidate(Mention(std::nullopt), ptypes, candidate, "", {}),
            2);
}

TEST(ScoreCandidateTest, AddingTypeToTextNeverDecreasesScore) {
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const oracle::MiniThread mt = oracle::RandomMiniThread(rng, i + 1);
    const std::vector<PType> ptypes = ExtractPTypes(mt.thread.code_snippets);
    const std::string text = ThreadText(mt.thread);
    for (const ApiMention &m : ExtractMentions(mt.thread, mt.simple_name)) {
      for (const ApiMethod &c : mt.candidates) {
        const int before =
            ScoreCandidate(m, ptypes, c, text, mt.thread.code_snippets);
        const int after =
            ScoreCandidate(m, ptypes, c, text + "\n" + SplitFqn(c.fqn).type_name,
                           mt.thread.code_snippets);
        EXPECT_GE(after, before);
      }
    }
  }
}

TEST(ScoreCandidateTest, MatchesBruteForceOracle) {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const oracle::MiniThread mt = oracle::RandomMiniThread(rng, i + 1);
    const std::vector<PType> ptypes = ExtractPTypes(mt.thread.code_snippets);
    const std::string text = ThreadText(mt.thread);
    for (const ApiMention &m : ExtractMentions(mt.thread, mt.simple_name)) {
      for (const ApiMethod &c : mt.candidates) {
        ASSERT_EQ(ScoreCandidate(m, ptypes, c, text, mt.thread.code_snippets),
                  oracle::BruteForceScore(m.prefix, ptypes, c.fqn, text,
                                          mt.thread.code_snippets));
      }
    }
  }
}

// Candidates a.X.m for each X with a thread engineered so that the raw
// scores come out as given.
TEST(ThreadSyntacticScoreTest, MinMaxNormalization) {
  const ApiMethod four{"p.Four.m", "", ""};
  const ApiMethod two{"p.Two.m", "", ""};
  const ApiMethod zero{"p.Zero.m", "", ""};
  const std::vector<ApiMethod> candidates = {four, two, zero};
  // Four: prefix, text, code token, one PType. Two: text and code token.
  const Thread t = MakeThread({"Four.m and Two", "call m"},
                              {"import q.Four; Two x;"});
  const std::vector<CandidateScore> scores = ScoreCandidates(t, four, candidates);
  ASSERT_EQ(scores.size(), 3u);
  std::vector<int> raws;
  for (const CandidateScore &s : scores) raws.push_back(s.raw);
  EXPECT_EQ(raws, (std::vector<int>{4, 2, 0}));
  EXPECT_DOUBLE_EQ(ThreadSyntacticScore(t, four, candidates), 1.0);
  EXPECT_DOUBLE_EQ(ThreadSyntacticScore(t, two, candidates), 0.5);
  EXPECT_DOUBLE_EQ(ThreadSyntacticScore(t, zero, candidates), 0.0);
}

TEST(ThreadSyntacticScoreTest, DegenerateRange) {
  const ApiMethod a{"p.A.m", "", ""};
  const ApiMethod b{"p.B.m", "", ""};
  EXPECT_DOUBLE_EQ(
      ThreadSyntacticScore(MakeThread({"call m"}), a, {a, b}), 0.0);
  EXPECT_DOUBLE_EQ(
      ThreadSyntacticScore(MakeThread({"A and B then m"}), a, {a, b}), 1.0);
  // Single candidate with evidence.
  EXPECT_DOUBLE_EQ(ThreadSyntacticScore(MakeThread({"A.m"}), a, {a}), 1.0);
}

TEST(ThreadSyntacticScoreTest, NoMentionsScoresZero) {
  const ApiMethod a{"p.A.m", "", ""};
  const ApiMethod b{"p.B.m", "", ""};
  // The name only occurs in code, so there is no mention in the text.
  EXPECT_DOUBLE_EQ(
      ThreadSyntacticScore(MakeThread({"A is great"}, {"A.m();"}), a, {a, b}),
      0.0);
}

TEST(ThreadSyntacticScoreTest, ApiMustBeACandidate) {
  const ApiMethod a{"p.A.m", "", ""};
  const ApiMethod b{"p.B.m", "", ""};
  EXPECT_THROW(ThreadSyntacticScore(MakeThread({"m"}), a, {b}), ContractError);
}

TEST(ThreadSyntacticScoreTest, RangeArgmaxAndBruteForceThreadScore) {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const oracle::MiniThread mt = oracle::RandomMiniThread(rng, i + 1);
    const std::vector<CandidateScore> scores =
        ScoreCandidates(mt.thread, mt.candidates[0], mt.candidates);
    const std::vector<PType> ptypes = ExtractPTypes(mt.thread.code_snippets);
    int best_raw = -1;
    double best_norm = -1.0;
    for (const CandidateScore &s : scores) {
      EXPECT_GE(s.normalized, 0.0);
      EXPECT_LE(s.normalized, 1.0);
      EXPECT_EQ(s.raw, s.breakdown.total());
      EXPECT_EQ(s.raw, oracle::BruteForceThreadScore(
                           mt.thread, mt.simple_name, ptypes, s.candidate.fqn));
      best_raw = std::max(best_raw, s.raw);
      best_norm = std::max(best_norm, s.normalized);
    }
    for (const CandidateScore &s : scores) {
      if (s.raw == best_raw) {
        EXPECT_EQ(s.normalized, best_norm);
      }
    }
  }
}

TEST(ScoreBreakdownRecordTest, CarriesEveryScope) {
  CandidateScore s;
  s.candidate = {"p.A.m", "", ""};
  s.breakdown = {1, 1, 0, 2};
  s.raw = 4;
  s.normalized = 1.0;
  const std::string record = ScoreBreakdownRecord(9, s);
  for (const char *key : {"\"thread_id\"", "\"mention\"", "\"text\"",
                          "\"code_tokens\"", "\"ptypes\"", "\"raw\""}) {
    EXPECT_NE(record.find(key), std::string::npos) << key << " in " << record;
  }
}

}  // namespace
}  // namespace threadscope

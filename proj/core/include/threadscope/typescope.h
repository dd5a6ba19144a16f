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

// Type scoping: scores every same-named API candidate by where its declaring
// type shows up in a thread (the mention's dotted prefix, the text, the raw
// code tokens, and the types recovered from code), then min-max normalizes
// the scores across candidates.

#ifndef THREADSCOPE_TYPESCOPE_H_
#define THREADSCOPE_TYPESCOPE_H_

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "threadscope/corpus.h"

namespace threadscope {

enum class PTypeOrigin {
  kImport,
  kObjectCreation,
  kVariableDeclaration,
  kStaticReceiver,
};

std::string_view PTypeOriginName(PTypeOrigin origin);

// A type name recovered from a code snippet.
struct PType {
  std::string name;
  PTypeOrigin origin = PTypeOrigin::kImport;

  bool operator==(const PType &) const = default;
};

// Mentions of `simple_name` in the thread's paragraphs (title included).
std::vector<ApiMention> ExtractMentions(const Thread &thread,
                                        std::string_view simple_name);

// Collects possible types from snippets:
//   import a.b.C;      every capitalized path segment     (kImport)
//   new a.b.T(...)     T                                  (kObjectCreation)
//   T v = ...          T, and T again for each later v.m( (kVariableDeclaration)
//   T.m(...)           T                                  (kStaticReceiver)
// Resolution of `v` is per snippet and in a single forward pass. Lines that
// match none of these are ignored.
std::vector<PType> ExtractPTypes(const std::vector<std::string> &code_snippets);

// Per-scope contributions to a candidate's raw score.
struct ScoreBreakdown {
  int mention = 0;      // 0 or 1
  int text = 0;         // 0 or 1
  int code_tokens = 0;  // 0 or 1
  int ptypes = 0;       // number of matching PTypes

  int total() const { return mention + text + code_tokens + ptypes; }
};

// Tokenized thread content, computed once and shared by every candidate.
struct ThreadScopeContext {
  // Title, paragraphs and tags.
  std::unordered_set<std::string> textual_tokens;
  std::unordered_set<std::string> code_tokens;
  std::vector<PType> ptypes;

  static ThreadScopeContext Build(const Thread &thread);
};

ScoreBreakdown ScoreCandidateBreakdown(const ApiMention &mention,
                                       const ApiMethod &candidate,
                                       const ThreadScopeContext &context);

// Raw type-scoping score of `candidate` for one mention. `thread_text` is
// the thread's textual content (title, paragraphs, tags) joined.
int ScoreCandidate(const ApiMention &mention, const std::vector<PType> &ptypes,
                   const ApiMethod &candidate, std::string_view thread_text,
                   const std::vector<std::string> &code_snippets);

// Textual content used for the text scope: title, paragraphs and tags.
std::string ThreadText(const Thread &thread);

struct CandidateScore {
  ApiMethod candidate;
  int raw = 0;
  double normalized = 0.0;
  ScoreBreakdown breakdown;
};

// Raw score per candidate (max over mentions) and its min-max normalization.
// With no mentions every raw score is 0. When all raw scores are equal the
// normalized value is 1 if they are positive and 0 otherwise.
std::vector<CandidateScore> ScoreCandidates(
    const Thread &thread, const ApiMethod &api,
    const std::vector<ApiMethod> &candidates);

// Normalized score of `api` among `candidates` (the syntactic score A).
double ThreadSyntacticScore(const Thread &thread, const ApiMethod &api,
                            const std::vector<ApiMethod> &candidates);

// One line-delimited record per candidate with the per-scope breakdown.
std::string ScoreBreakdownRecord(ThreadId thread_id,
                                 const CandidateScore &score);

}  // namespace threadscope

#endif  // THREADSCOPE_TYPESCOPE_H_

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

// Independent reference implementations used only by tests. None of these
// call into the code paths they check.

#ifndef THREADSCOPE_TESTS_ORACLES_H_
#define THREADSCOPE_TESTS_ORACLES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "threadscope/classifier.h"
#include "threadscope/corpus.h"
#include "threadscope/embedding.h"
#include "threadscope/fusion.h"
#include "threadscope/random.h"
#include "threadscope/typescope.h"

namespace threadscope::oracle {

// Character-at-a-time scanner with an explicit in-token state.
std::vector<std::string> ReferenceScan(const std::string &text);

// Regex-based tokens ([A-Za-z0-9_$]+).
std::vector<std::string> RegexTokens(const std::string &text);

// Dotted identifier chain directly before position `name_offset` of `text`
// (which must be preceded by '.'), found with a regular expression.
std::optional<std::string> RegexPrefix(const std::string &text,
                                       std::size_t name_offset);

// Straight transcription of the per-mention type-scoping procedure over
// raw strings.
int BruteForceScore(const std::optional<std::string> &prefix,
                    const std::vector<PType> &ptypes,
                    const std::string &candidate_fqn,
                    const std::string &thread_text,
                    const std::vector<std::string> &code_snippets);

// Max over every whole-token occurrence of the simple name in paragraphs;
// 0 when there are none.
int BruteForceThreadScore(const Thread &thread, const std::string &simple_name,
                          const std::vector<PType> &ptypes,
                          const std::string &candidate_fqn);

struct MiniThread {
  Thread thread;
  std::string simple_name;
  std::vector<ApiMethod> candidates;
};

// Random thread of at most 5 body paragraphs and 3 snippets with up to 4
// same-named candidates whose types are sprinkled through the content.
MiniThread RandomMiniThread(Rng &rng, ThreadId id);

// F1 as the harmonic mean of precision and recall in long double, with 0
// for a zero denominator.
double HarmonicF1(long tp, long fp, long fn);

// Macro F1 recomputed from scratch for weight x.
double MacroF1(const std::vector<ApiRecords> &records, double x, double t);

// Exhaustive grid evaluation with MacroF1. Returns the largest grid value
// whose F1 is within 1e-12 of the best, and that best F1. The tolerance
// only absorbs rounding differences between algebraically equal F1 forms.
std::pair<double, double> ExhaustiveBestX(const std::vector<ApiRecords> &records,
                                          const std::vector<double> &grid,
                                          double t);

// Mean binary cross-entropy of `model` over `examples`, computed with a
// dense forward pass written independently of the library.
double ReferenceMeanLoss(const MlpModel &model,
                         const std::vector<RelevanceEmbedding> &examples);

// Largest relative error between the library's analytic gradient and
// central finite differences of ReferenceMeanLoss, over every parameter of
// an h=2 model on 4 random examples. Relative error is |a - n| divided by
// max(|a|, |n|, 1e-8).
double GradientCheckMaxRelError(std::uint64_t seed);

// Two Gaussian blobs in 1536 dimensions with labels alternating by index.
std::vector<RelevanceEmbedding> GaussianBlobs(std::size_t n, std::uint64_t seed);

}  // namespace threadscope::oracle

#endif  // THREADSCOPE_TESTS_ORACLES_H_

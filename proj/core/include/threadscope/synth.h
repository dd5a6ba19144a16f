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

// Seeded synthetic corpora with controlled ground truth.
//
// Each target API gets `ambiguity` decoy methods sharing its simple name.
// Every API owns a private vocabulary. Threads alternate between ones that
// refer to the target and ones that refer to a decoy:
//
//  - a target thread names the target's type (in text and code) with
//    probability `syntactic_signal`; otherwise the type never appears;
//  - a decoy thread always names its decoy's type;
//  - each content word is drawn from the referent's vocabulary with
//    probability `semantic_signal`, else from a shared filler pool.
//
// Every thread mentions the shared simple name in its text and code.

#ifndef THREADSCOPE_SYNTH_H_
#define THREADSCOPE_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "threadscope/corpus.h"

namespace threadscope {

struct SynthSpec {
  int n_apis = 4;
  int n_threads_per_api = 20;
  int ambiguity = 1;
  double syntactic_signal = 1.0;
  double semantic_signal = 1.0;
  std::uint64_t seed = 1;
};

struct SynthCorpus {
  // Raw line-delimited records, ready to write out.
  std::vector<std::string> corpus_records;
  std::vector<std::string> api_records;
  std::vector<std::string> label_records;

  std::vector<Thread> threads;
  std::vector<ApiMethod> api_db;
  std::vector<ApiMethod> targets;
  std::vector<Label> labels;
};

// Throws ContractError for non-positive counts or probabilities outside
// [0, 1].
SynthCorpus Generate(const SynthSpec &spec);

// Writes corpus.jsonl, api_db.jsonl and labels.jsonl under `dir`.
void WriteSynthCorpus(const SynthCorpus &corpus, const std::string &dir);

}  // namespace threadscope

#endif  // THREADSCOPE_SYNTH_H_

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

// Per-API precision, recall and F1 with macro averaging, and the seeded
// train/test split.

#ifndef THREADSCOPE_EVAL_H_
#define THREADSCOPE_EVAL_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "threadscope/corpus.h"
#include "threadscope/random.h"

namespace threadscope {

struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  bool operator==(const ConfusionCounts &) const = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// A zero denominator yields 0 for the affected metric.
Metrics Prf1(const ConfusionCounts &c);

// api fqn -> thread id -> relevant.
using Judgments = std::map<std::string, std::map<ThreadId, bool>>;

struct EvalReport {
  std::map<std::string, Metrics> per_api;
  std::map<std::string, ConfusionCounts> counts;
  double avg_precision = 0.0;
  double avg_recall = 0.0;
  double avg_f1 = 0.0;
};

ConfusionCounts Count(const std::map<ThreadId, bool> &predicted,
                      const std::map<ThreadId, bool> &truth);

// Throws ContractError naming every API or thread present on only one side.
EvalReport Evaluate(const Judgments &predictions, const Judgments &truths);

// Seeded shuffle of [0, n); the first n - ceil(n / 3) indices train, the
// rest test.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> SplitIndices(
    std::size_t n, std::uint64_t seed);

template <typename T>
std::pair<std::vector<T>, std::vector<T>> SplitDataset(
    const std::vector<T> &items, std::uint64_t seed) {
  auto [train_idx, test_idx] = SplitIndices(items.size(), seed);
  std::pair<std::vector<T>, std::vector<T>> out;
  for (std::size_t i : train_idx) out.first.push_back(items[i]);
  for (std::size_t i : test_idx) out.second.push_back(items[i]);
  return out;
}

// Fixed-width table, one row per API plus an average row.
std::string FormatReportTable(const EvalReport &report,
                              const std::string &title);

// One {"variant","fqn","precision","recall","f1"} record per API, then a
// {"variant","summary":true,...} record.
std::vector<std::string> ReportRecords(const EvalReport &report,
                                       const std::string &variant);

}  // namespace threadscope

#endif  // THREADSCOPE_EVAL_H_

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

// Fusion of the syntactic score A and the semantic score B:
//
//   C = x * A + (1 - x) * B,   relevant iff C > t
//
// with x chosen on training data by grid search over macro-averaged F1.

#ifndef THREADSCOPE_FUSION_H_
#define THREADSCOPE_FUSION_H_

#include <string>
#include <utility>
#include <vector>

#include "threadscope/corpus.h"
#include "threadscope/eval.h"

namespace threadscope {

inline constexpr double kDefaultThreshold = 0.5;

// {0, 0.1, ..., 1.0}; eleven values.
std::vector<double> DefaultGrid();

struct FusionConfig {
  double x = 0.5;
  double t = kDefaultThreshold;
  std::vector<double> grid = DefaultGrid();
};

// Throws ContractError if any input lies outside [0, 1].
double JointScore(double a, double b, double x);

inline bool ClassifyThread(double c, double t) { return c > t; }

struct ScoredThread {
  ThreadId id = 0;
  double a = 0.0;
  double b = 0.0;
  bool truth = false;
};

struct ApiRecords {
  std::string fqn;
  std::vector<ScoredThread> threads;
};

// Macro-averaged F1 over APIs when classifying with weight x and threshold t.
double MacroF1(const std::vector<ApiRecords> &records, double x, double t);

struct TuneResult {
  double x = 0.0;
  double f1 = 0.0;
  // (x, macro F1) for every grid value, in grid order.
  std::vector<std::pair<double, double>> grid_f1;
};

// Returns the grid value with the highest macro F1, ties going to the larger
// x. Throws ContractError on an empty grid or no records.
TuneResult TuneWeightingFactor(const std::vector<ApiRecords> &records,
                               const std::vector<double> &grid, double t);

}  // namespace threadscope

#endif  // THREADSCOPE_FUSION_H_

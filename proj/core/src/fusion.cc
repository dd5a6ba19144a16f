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

#include "threadscope/fusion.h"

#include <algorithm>

#include "threadscope/errors.h"

namespace threadscope {
namespace {

void CheckUnit(double v, const char *name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ContractError(std::string(name) + " = " + std::to_string(v) +
                        " is outside [0, 1]");
  }
}

}  // namespace

std::vector<double> DefaultGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

double JointScore(double a, double b, double x) {
  CheckUnit(a, "A");
  CheckUnit(b, "B");
  CheckUnit(x, "x");
  const double c = x * a + (1.0 - x) * b;
  // Rounding must not push C outside the segment between A and B.
  return std::clamp(c, std::min(a, b), std::max(a, b));
}

double MacroF1(const std::vector<ApiRecords> &records, double x, double t) {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const ApiRecords &api : records) {
    ConfusionCounts c;
    for (const ScoredThread &s : api.threads) {
      const bool said = ClassifyThread(JointScore(s.a, s.b, x), t);
      if (said && s.truth) ++c.tp;
      if (said && !s.truth) ++c.fp;
      if (!said && s.truth) ++c.fn;
    }
    sum += Prf1(c).f1;
  }
  return sum / static_cast<double>(records.size());
}

TuneResult TuneWeightingFactor(const std::vector<ApiRecords> &records,
                               const std::vector<double> &grid, double t) {
  if (grid.empty()) throw ContractError("empty weighting-factor grid");
  if (records.empty()) throw ContractError("no training records to tune on");
  TuneResult result;
  bool first = true;
  for (double x : grid) {
    const double f1 = MacroF1(records, x, t);
    result.grid_f1.emplace_back(x, f1);
    if (first || f1 > result.f1 || (f1 == result.f1 && x > result.x)) {
      result.x = x;
      result.f1 = f1;
      first = false;
    }
  }
  return result;
}

}  // namespace threadscope

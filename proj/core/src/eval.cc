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

#include "threadscope/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "threadscope/errors.h"

namespace threadscope {
namespace {

double Ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Metrics Prf1(const ConfusionCounts &c) {
  Metrics m;
  m.precision = Ratio(c.tp, c.tp + c.fp);
  m.recall = Ratio(c.tp, c.tp + c.fn);
  // 2tp / (2tp + fp + fn) equals the harmonic mean of precision and recall
  // but is exactly P when P = R, which the product form is not.
  m.f1 = Ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  return m;
}

ConfusionCounts Count(const std::map<ThreadId, bool> &predicted,
                      const std::map<ThreadId, bool> &truth) {
  ConfusionCounts c;
  for (const auto &[id, relevant] : truth) {
    auto it = predicted.find(id);
    const bool said = it != predicted.end() && it->second;
    if (said && relevant) ++c.tp;
    if (said && !relevant) ++c.fp;
    if (!said && relevant) ++c.fn;
  }
  return c;
}

EvalReport Evaluate(const Judgments &predictions, const Judgments &truths) {
  std::string problems;
  auto note = [&](const std::string &s) {
    problems += problems.empty() ? s : ", " + s;
  };
  for (const auto &[fqn, unused] : truths) {
    if (predictions.count(fqn) == 0) note("no predictions for " + fqn);
  }
  for (const auto &[fqn, threads] : predictions) {
    auto truth = truths.find(fqn);
    if (truth == truths.end()) {
      note("no truth for " + fqn);
      continue;
    }
    for (const auto &[id, unused] : threads) {
      if (truth->second.count(id) == 0) {
        note(fqn + " thread " + std::to_string(id) + " has no truth");
      }
    }
    for (const auto &[id, unused] : truth->second) {
      if (threads.count(id) == 0) {
        note(fqn + " thread " + std::to_string(id) + " has no prediction");
      }
    }
  }
  if (!problems.empty()) {
    throw ContractError("prediction/truth mismatch: " + problems);
  }

  EvalReport report;
  for (const auto &[fqn, truth] : truths) {
    ConfusionCounts c = Count(predictions.at(fqn), truth);
    Metrics m = Prf1(c);
    report.counts[fqn] = c;
    report.per_api[fqn] = m;
    report.avg_precision += m.precision;
    report.avg_recall += m.recall;
    report.avg_f1 += m.f1;
  }
  if (!report.per_api.empty()) {
    const double n = static_cast<double>(report.per_api.size());
    report.avg_precision /= n;
    report.avg_recall /= n;
    report.avg_f1 /= n;
  }
  return report;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> SplitIndices(
    std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(order);
  const std::size_t test = (n + 2) / 3;
  const std::size_t train = n - test;
  return {std::vector<std::size_t>(order.begin(), order.begin() + train),
          std::vector<std::size_t>(order.begin() + train, order.end())};
}

std::string FormatReportTable(const EvalReport &report,
                              const std::string &title) {
  std::size_t width = 7;
  for (const auto &[fqn, unused] : report.per_api) {
    width = std::max(width, fqn.size());
  }
  std::string out = title + "\n";
  char line[512];
  std::snprintf(line, sizeof(line), "%-*s  %9s  %9s  %9s\n",
                static_cast<int>(width), "api", "precision", "recall", "f1");
  out += line;
  for (const auto &[fqn, m] : report.per_api) {
    std::snprintf(line, sizeof(line), "%-*s  %9.4f  %9.4f  %9.4f\n",
                  static_cast<int>(width), fqn.c_str(), m.precision, m.recall,
                  m.f1);
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-*s  %9.4f  %9.4f  %9.4f\n",
                static_cast<int>(width), "average", report.avg_precision,
                report.avg_recall, report.avg_f1);
  out += line;
  return out;
}

std::vector<std::string> ReportRecords(const EvalReport &report,
                                       const std::string &variant) {
  std::vector<std::string> records;
  for (const auto &[fqn, m] : report.per_api) {
    nlohmann::json r = {{"variant", variant},
                        {"fqn", fqn},
                        {"precision", m.precision},
                        {"recall", m.recall},
                        {"f1", m.f1}};
    records.push_back(r.dump());
  }
  nlohmann::json summary = {{"variant", variant},
                            {"summary", true},
                            {"apis", report.per_api.size()},
                            {"avg_precision", report.avg_precision},
                            {"avg_recall", report.avg_recall},
                            {"avg_f1", report.avg_f1}};
  records.push_back(summary.dump());
  return records;
}

}  // namespace threadscope

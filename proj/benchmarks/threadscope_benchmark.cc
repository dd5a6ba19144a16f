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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "threadscope/classifier.h"
#include "threadscope/embedding.h"
#include "threadscope/random.h"
#include "threadscope/synth.h"
#include "threadscope/tokenizer.h"
#include "threadscope/typescope.h"

namespace threadscope {
namespace {

std::string CodeText(std::size_t bytes) {
  std::string s;
  while (s.size() < bytes) {
    s += "OngoingStubbing<List<String>> s = when(repo.find(\"k$1\"));\n"
         "s.thenReturn(Arrays.asList(\"a\", \"b\")); CharMatcher.is('x');\n";
  }
  s.resize(bytes);
  return s;
}

void BM_TokenizeIdentifiers(benchmark::State &state) {
  const std::string text = CodeText(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(TokenizeIdentifiers(text));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TokenizeIdentifiers)->Arg(1 << 10)->Arg(1 << 16);

void BM_ScoreCandidates(benchmark::State &state) {
  const SynthCorpus corpus = Generate({1, 8, static_cast<int>(state.range(0)), 0.7, 0.7, 1});
  const ApiMethod &target = corpus.targets[0];
  const std::vector<ApiMethod> candidates = CandidateSet(target, corpus.api_db);
  const Thread &thread = corpus.threads[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreCandidates(thread, target, candidates));
  }
}
BENCHMARK(BM_ScoreCandidates)->Arg(1)->Arg(4);

void BM_HashEmbed(benchmark::State &state) {
  const PairText pair = BuildPair(CodeText(2000), CodeText(2000));
  for (auto _ : state) benchmark::DoNotOptimize(HashEmbed(pair));
}
BENCHMARK(BM_HashEmbed);

void BM_BuildPair(benchmark::State &state) {
  const std::string first = CodeText(2000), second = CodeText(2000);
  for (auto _ : state) benchmark::DoNotOptimize(BuildPair(first, second));
}
BENCHMARK(BM_BuildPair);

void BM_Predict(benchmark::State &state) {
  const MlpModel model = InitModel(static_cast<int>(state.range(0)), 1);
  Rng rng(2);
  std::vector<double> v(kRelevanceDim);
  for (double &x : v) x = rng.Normal();
  for (auto _ : state) benchmark::DoNotOptimize(Predict(model, v));
}
BENCHMARK(BM_Predict)->Arg(16)->Arg(128);

void BM_TrainOneEpoch(benchmark::State &state) {
  Rng rng(3);
  std::vector<RelevanceEmbedding> examples(256);
  for (std::size_t k = 0; k < examples.size(); ++k) {
    examples[k].vector.resize(kRelevanceDim);
    for (double &x : examples[k].vector) x = rng.Normal();
    examples[k].label = k % 2 == 0;
  }
  TrainConfig config;
  config.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(Train(examples, config));
  state.SetItemsProcessed(state.iterations() * examples.size());
}
BENCHMARK(BM_TrainOneEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace threadscope

BENCHMARK_MAIN();

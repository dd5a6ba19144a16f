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

// End-to-end commands: ingest, train, tune, search, eval and gen-synthetic,
// all driven by one flat key = value run configuration.

#ifndef THREADSCOPE_PIPELINE_H_
#define THREADSCOPE_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "threadscope/classifier.h"
#include "threadscope/corpus.h"
#include "threadscope/embedding.h"
#include "threadscope/eval.h"
#include "threadscope/fusion.h"
#include "threadscope/synth.h"
#include "threadscope/typescope.h"

namespace threadscope {

struct RunConfig {
  std::string corpus_path;
  std::string api_db_path;
  std::string labels_path;
  // "hash", "tcp://host:port" or "exec:<command>".
  std::string provider = "hash";
  std::uint64_t hash_seed = kDefaultHashSeed;
  // Drives the split, training and synthetic generation.
  std::uint64_t seed = 1;
  TrainConfig train;
  FusionConfig fusion;
  std::string output_dir = "out";
  // Defaults to <output_dir>/model.bin.
  std::string model_path;
  SynthSpec synth;

  std::string ModelPath() const;
};

// Parses `key = value` lines; '#' starts a comment. Relative paths are
// resolved against `base_dir`. Throws ConfigError on unknown keys or bad
// values.
RunConfig ParseRunConfig(const std::string &text,
                         const std::string &base_dir = ".");
RunConfig LoadRunConfig(const std::string &path);
std::string FormatRunConfig(const RunConfig &config);

std::unique_ptr<EmbeddingProvider> MakeProvider(const RunConfig &config);

// Holds a corpus in memory and memoizes pair embeddings for one run.
class Engine {
 public:
  Engine(std::vector<Thread> threads, std::vector<ApiMethod> api_db,
         std::vector<Label> labels, EmbeddingProvider &provider);

  const std::vector<Thread> &threads() const { return threads_; }
  const std::vector<ApiMethod> &api_db() const { return api_db_; }
  const std::vector<Label> &labels() const { return labels_; }

  // nullptr if the fqn is not in the database.
  const ApiMethod *FindApi(const std::string &fqn) const;
  const std::vector<ApiMethod> &Candidates(const ApiMethod &api);

  double SyntacticScore(const Thread &thread, const ApiMethod &api);
  std::vector<CandidateScore> CandidateScores(const Thread &thread,
                                              const ApiMethod &api);
  std::vector<RelevanceEmbedding> Embeddings(const Thread &thread,
                                             const ApiMethod &api);
  double SemanticScore(const MlpModel &model, const Thread &thread,
                       const ApiMethod &api);

  // Labeled embeddings for `thread_ids`: positives from the labeled
  // referents, negatives from their same-named candidates and from
  // explicit negative labels.
  std::vector<RelevanceEmbedding> TrainingExamples(
      const std::vector<ThreadId> &thread_ids);

  // Per-API (A, B, truth) over each labeled API's potential threads among
  // `thread_ids`. B is left at 0 when `model` is null.
  std::vector<ApiRecords> ScoreRecords(const std::vector<ThreadId> &thread_ids,
                                       const MlpModel *model);

  // Corpus split by the run seed.
  std::pair<std::vector<ThreadId>, std::vector<ThreadId>> Split(
      std::uint64_t seed) const;

 private:
  const std::vector<std::vector<double>> &ThreadVectors(const Thread &thread);
  const std::vector<double> &MethodVector(const ApiMethod &api);

  std::vector<Thread> threads_;
  std::vector<ApiMethod> api_db_;
  std::vector<Label> labels_;
  EmbeddingProvider &provider_;
  std::map<ThreadId, std::size_t> thread_index_;
  std::map<std::string, std::size_t> api_index_;
  std::map<std::string, std::vector<ApiMethod>> candidates_;
  std::map<ThreadId, std::vector<std::vector<double>>> thread_vectors_;
  std::map<std::string, std::vector<double>> method_vectors_;
};

// Exclusive ownership of an output directory through a lock file.
class OutputLock {
 public:
  // Creates the directory if needed. Throws std::runtime_error if locked.
  explicit OutputLock(const std::string &dir);
  ~OutputLock();
  OutputLock(const OutputLock &) = delete;
  OutputLock &operator=(const OutputLock &) = delete;

 private:
  std::string path_;
};

struct IngestSummary {
  std::size_t threads = 0;
  std::size_t apis = 0;
};

struct TrainSummary {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<double> epoch_losses;
  TuneResult tuning;
};

struct SearchHit {
  ThreadId thread_id = 0;
  std::string title;
  double a = 0.0;
  std::optional<double> b;
  double c = 0.0;
  bool relevant = false;
};

struct EvalSummary {
  EvalReport fused;
  EvalReport a_only;
  EvalReport b_only;
};

// Commands write data to `out` and diagnostics to `err`; they throw on
// failure.
IngestSummary CmdIngest(const RunConfig &config, std::ostream &out);
TrainSummary CmdTrain(const RunConfig &config, std::ostream &out);
TuneResult CmdTune(const RunConfig &config, std::ostream &out);
std::vector<SearchHit> CmdSearch(const RunConfig &config,
                                 const std::string &api_fqn, bool debug,
                                 std::ostream &out, std::ostream &err);
EvalSummary CmdEval(const RunConfig &config, std::ostream &out);
SynthCorpus CmdGenSynthetic(const RunConfig &config, std::ostream &out);

}  // namespace threadscope

#endif  // THREADSCOPE_PIPELINE_H_

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

#include "threadscope/pipeline.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "threadscope/errors.h"
#include "threadscope/external_provider.h"
#include "threadscope/typescope.h"

namespace threadscope {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string Trim(const std::string &s) {
  const char *ws = " \t\r\n";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double ParseDouble(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception &) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
}

std::uint64_t ParseU64(const std::string &key, const std::string &value) {
  std::uint64_t v = 0;
  auto [end, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" +
                      value + "'");
  }
  return v;
}

int ParsePositiveInt(const std::string &key, const std::string &value) {
  std::uint64_t v = ParseU64(key, value);
  if (v == 0 || v > 1000000000) {
    throw ConfigError("'" + key + "' must be a positive integer");
  }
  return static_cast<int>(v);
}

std::string Number(double d) { return json(d).dump(); }

std::string Absolute(const std::string &path) {
  if (path.empty()) return path;
  return fs::absolute(path).lexically_normal().string();
}

std::string Resolve(const std::string &base, const std::string &value) {
  fs::path p(value);
  if (p.is_absolute()) return p.lexically_normal().string();
  return (fs::path(base) / p).lexically_normal().string();
}

void WriteLines(const fs::path &path, const std::vector<std::string> &lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const std::string &line : lines) out << line << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void RequirePath(const std::string &path, const char *key) {
  if (path.empty()) throw ConfigError(std::string("'") + key + "' is not set");
  if (!fs::exists(path)) {
    throw ConfigError(std::string("'") + key + "' path does not exist: " +
                      path);
  }
}

struct LoadedRun {
  std::vector<Thread> threads;
  std::vector<ApiMethod> api_db;
  std::vector<Label> labels;
};

LoadedRun Load(const RunConfig &config, bool need_labels) {
  RequirePath(config.corpus_path, "corpus");
  RequirePath(config.api_db_path, "api_db");
  LoadedRun run;
  run.threads = LoadThreads(config.corpus_path);
  run.api_db = LoadApiDb(config.api_db_path);
  if (need_labels) {
    if (config.labels_path.empty()) {
      throw ConfigError("a labels file is required ('labels' is not set)");
    }
    RequirePath(config.labels_path, "labels");
    run.labels = LoadLabels(config.labels_path);
  }
  return run;
}

std::string ModelFileOrThrow(const RunConfig &config) {
  const std::string path = config.ModelPath();
  if (!fs::exists(path)) {
    throw ConfigError("no trained model at " + path + "; run 'train' first");
  }
  return path;
}

Judgments PredictionsFor(const std::vector<ApiRecords> &records, double x,
                         double t) {
  Judgments out;
  for (const ApiRecords &api : records) {
    auto &threads = out[api.fqn];
    for (const ScoredThread &s : api.threads) {
      threads[s.id] = ClassifyThread(JointScore(s.a, s.b, x), t);
    }
  }
  return out;
}

Judgments TruthsFor(const std::vector<ApiRecords> &records) {
  Judgments out;
  for (const ApiRecords &api : records) {
    auto &threads = out[api.fqn];
    for (const ScoredThread &s : api.threads) threads[s.id] = s.truth;
  }
  return out;
}

}  // namespace

std::string RunConfig::ModelPath() const {
  if (!model_path.empty()) return model_path;
  return (fs::path(output_dir) / "model.bin").string();
}

RunConfig ParseRunConfig(const std::string &text, const std::string &base_dir) {
  RunConfig c;
  c.output_dir = Resolve(base_dir, c.output_dir);
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string line = Trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) +
                        ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));

    if (key == "corpus") {
      c.corpus_path = Resolve(base_dir, value);
    } else if (key == "api_db") {
      c.api_db_path = Resolve(base_dir, value);
    } else if (key == "labels") {
      c.labels_path = Resolve(base_dir, value);
    } else if (key == "output_dir") {
      c.output_dir = Resolve(base_dir, value);
    } else if (key == "model") {
      c.model_path = Resolve(base_dir, value);
    } else if (key == "provider") {
      c.provider = value;
    } else if (key == "hash_seed") {
      c.hash_seed = ParseU64(key, value);
    } else if (key == "seed") {
      c.seed = ParseU64(key, value);
    } else if (key == "epochs") {
      c.train.epochs = ParsePositiveInt(key, value);
    } else if (key == "learning_rate") {
      c.train.learning_rate = ParseDouble(key, value);
      if (!(c.train.learning_rate > 0)) {
        throw ConfigError("'learning_rate' must be positive");
      }
    } else if (key == "batch_size") {
      c.train.batch_size = ParsePositiveInt(key, value);
    } else if (key == "hidden") {
      c.train.hidden = ParsePositiveInt(key, value);
    } else if (key == "optimizer") {
      if (value == "sgd") {
        c.train.optimizer = Optimizer::kSgd;
      } else if (value == "adam") {
        c.train.optimizer = Optimizer::kAdam;
      } else {
        throw ConfigError("'optimizer' must be sgd or adam");
      }
    } else if (key == "x") {
      c.fusion.x = ParseDouble(key, value);
    } else if (key == "t") {
      c.fusion.t = ParseDouble(key, value);
    } else if (key == "grid") {
      c.fusion.grid.clear();
      std::stringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        c.fusion.grid.push_back(ParseDouble(key, Trim(item)));
      }
      if (c.fusion.grid.empty()) throw ConfigError("'grid' is empty");
    } else if (key == "synth.apis") {
      c.synth.n_apis = ParsePositiveInt(key, value);
    } else if (key == "synth.threads_per_api") {
      c.synth.n_threads_per_api = ParsePositiveInt(key, value);
    } else if (key == "synth.ambiguity") {
      c.synth.ambiguity = ParsePositiveInt(key, value);
    } else if (key == "synth.syntactic_signal") {
      c.synth.syntactic_signal = ParseDouble(key, value);
    } else if (key == "synth.semantic_signal") {
      c.synth.semantic_signal = ParseDouble(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(number) +
                        ": unknown key '" + key + "'");
    }
  }
  for (double g : c.fusion.grid) {
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("grid values must be in [0, 1]");
  }
  if (!(c.fusion.x >= 0.0 && c.fusion.x <= 1.0)) {
    throw ConfigError("'x' must be in [0, 1]");
  }
  if (!(c.fusion.t >= 0.0 && c.fusion.t <= 1.0)) {
    throw ConfigError("'t' must be in [0, 1]");
  }
  return c;
}

RunConfig LoadRunConfig(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream text;
  text << in.rdbuf();
  fs::path base = fs::path(path).parent_path();
  return ParseRunConfig(text.str(), base.empty() ? "." : base.string());
}

std::string FormatRunConfig(const RunConfig &c) {
  std::string grid;
  for (double g : c.fusion.grid) {
    if (!grid.empty()) grid += ",";
    grid += Number(g);
  }
  std::ostringstream out;
  if (!c.corpus_path.empty()) out << "corpus = " << Absolute(c.corpus_path) << "\n";
  if (!c.api_db_path.empty()) out << "api_db = " << Absolute(c.api_db_path) << "\n";
  if (!c.labels_path.empty()) out << "labels = " << Absolute(c.labels_path) << "\n";
  out << "output_dir = " << Absolute(c.output_dir) << "\n";
  if (!c.model_path.empty()) out << "model = " << Absolute(c.model_path) << "\n";
  out << "provider = " << c.provider << "\n"
      << "hash_seed = " << c.hash_seed << "\n"
      << "seed = " << c.seed << "\n"
      << "epochs = " << c.train.epochs << "\n"
      << "learning_rate = " << Number(c.train.learning_rate) << "\n"
      << "batch_size = " << c.train.batch_size << "\n"
      << "hidden = " << c.train.hidden << "\n"
      << "optimizer = "
      << (c.train.optimizer == Optimizer::kSgd ? "sgd" : "adam") << "\n"
      << "x = " << Number(c.fusion.x) << "\n"
      << "t = " << Number(c.fusion.t) << "\n"
      << "grid = " << grid << "\n"
      << "synth.apis = " << c.synth.n_apis << "\n"
      << "synth.threads_per_api = " << c.synth.n_threads_per_api << "\n"
      << "synth.ambiguity = " << c.synth.ambiguity << "\n"
      << "synth.syntactic_signal = " << Number(c.synth.syntactic_signal) << "\n"
      << "synth.semantic_signal = " << Number(c.synth.semantic_signal) << "\n";
  return out.str();
}

std::unique_ptr<EmbeddingProvider> MakeProvider(const RunConfig &config) {
  if (config.provider == "hash") {
    return std::make_unique<HashEmbeddingProvider>(config.hash_seed);
  }
  return std::make_unique<ExternalEmbeddingProvider>(config.provider);
}

Engine::Engine(std::vector<Thread> threads, std::vector<ApiMethod> api_db,
               std::vector<Label> labels, EmbeddingProvider &provider)
    : threads_(std::move(threads)),
      api_db_(std::move(api_db)),
      labels_(std::move(labels)),
      provider_(provider) {
  for (std::size_t i = 0; i < threads_.size(); ++i) {
    if (!thread_index_.emplace(threads_[i].id, i).second) {
      throw IngestionError(0, "duplicate thread id " +
                                  std::to_string(threads_[i].id));
    }
  }
  for (std::size_t i = 0; i < api_db_.size(); ++i) {
    api_index_.emplace(api_db_[i].fqn, i);
  }
  for (const Label &label : labels_) {
    if (api_index_.count(label.api_fqn) == 0) {
      throw IngestionError(0, "label references unknown API " + label.api_fqn);
    }
    if (thread_index_.count(label.thread_id) == 0) {
      throw IngestionError(0, "label references unknown thread " +
                                  std::to_string(label.thread_id));
    }
  }
}

const ApiMethod *Engine::FindApi(const std::string &fqn) const {
  auto it = api_index_.find(fqn);
  return it == api_index_.end() ? nullptr : &api_db_[it->second];
}

const std::vector<ApiMethod> &Engine::Candidates(const ApiMethod &api) {
  auto it = candidates_.find(api.fqn);
  if (it == candidates_.end()) {
    it = candidates_.emplace(api.fqn, CandidateSet(api, api_db_)).first;
  }
  return it->second;
}

std::vector<CandidateScore> Engine::CandidateScores(const Thread &thread,
                                                    const ApiMethod &api) {
  return ScoreCandidates(thread, api, Candidates(api));
}

double Engine::SyntacticScore(const Thread &thread, const ApiMethod &api) {
  return ThreadSyntacticScore(thread, api, Candidates(api));
}

const std::vector<std::vector<double>> &Engine::ThreadVectors(
    const Thread &thread) {
  auto it = thread_vectors_.find(thread.id);
  if (it == thread_vectors_.end()) {
    it = thread_vectors_.emplace(thread.id, EmbedThreadPairs(thread, provider_))
             .first;
  }
  return it->second;
}

const std::vector<double> &Engine::MethodVector(const ApiMethod &api) {
  auto it = method_vectors_.find(api.fqn);
  if (it == method_vectors_.end()) {
    it = method_vectors_.emplace(api.fqn, EmbedMethod(api, provider_)).first;
  }
  return it->second;
}

std::vector<RelevanceEmbedding> Engine::Embeddings(const Thread &thread,
                                                   const ApiMethod &api) {
  const std::vector<double> &method = MethodVector(api);
  std::vector<RelevanceEmbedding> out;
  for (const std::vector<double> &v : ThreadVectors(thread)) {
    out.push_back(Concatenate(v, method, thread.id, api.fqn));
  }
  return out;
}

double Engine::SemanticScore(const MlpModel &model, const Thread &thread,
                             const ApiMethod &api) {
  return ThreadSemanticScore(model, Embeddings(thread, api));
}

std::vector<RelevanceEmbedding> Engine::TrainingExamples(
    const std::vector<ThreadId> &thread_ids) {
  std::map<ThreadId, std::vector<const Label *>> by_thread;
  for (const Label &label : labels_) by_thread[label.thread_id].push_back(&label);

  std::vector<RelevanceEmbedding> examples;
  for (ThreadId id : thread_ids) {
    auto labels = by_thread.find(id);
    if (labels == by_thread.end()) continue;
    const Thread &thread = threads_[thread_index_.at(id)];

    std::set<std::string> positives;
    for (const Label *l : labels->second) {
      if (l->relevant) positives.insert(l->api_fqn);
    }
    // fqn -> label, ordered for reproducibility.
    std::map<std::string, bool> pairs;
    for (const std::string &fqn : positives) {
      pairs[fqn] = true;
      for (const ApiMethod &c : Candidates(*FindApi(fqn))) {
        if (positives.count(c.fqn) == 0) pairs.emplace(c.fqn, false);
      }
    }
    for (const Label *l : labels->second) {
      if (!l->relevant) pairs.emplace(l->api_fqn, false);
    }
    for (const auto &[fqn, relevant] : pairs) {
      for (RelevanceEmbedding &e : Embeddings(thread, *FindApi(fqn))) {
        e.label = relevant;
        examples.push_back(std::move(e));
      }
    }
  }
  return examples;
}

std::vector<ApiRecords> Engine::ScoreRecords(
    const std::vector<ThreadId> &thread_ids, const MlpModel *model) {
  std::set<ThreadId> in_split(thread_ids.begin(), thread_ids.end());
  std::map<std::pair<std::string, ThreadId>, bool> truth;
  std::set<std::string> apis;
  for (const Label &label : labels_) {
    if (in_split.count(label.thread_id) == 0) continue;
    apis.insert(label.api_fqn);
    truth[{label.api_fqn, label.thread_id}] = label.relevant;
  }

  std::vector<ApiRecords> records;
  for (const std::string &fqn : apis) {
    const ApiMethod &api = *FindApi(fqn);
    const std::string simple = SplitFqn(fqn).simple_name;
    ApiRecords r{fqn, {}};
    for (const Thread &thread : threads_) {
      if (in_split.count(thread.id) == 0) continue;
      if (!IsPotentialThread(thread, simple)) continue;
      ScoredThread s;
      s.id = thread.id;
      s.a = SyntacticScore(thread, api);
      s.b = model != nullptr ? SemanticScore(*model, thread, api) : 0.0;
      auto t = truth.find({fqn, thread.id});
      s.truth = t != truth.end() && t->second;
      r.threads.push_back(s);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::pair<std::vector<ThreadId>, std::vector<ThreadId>> Engine::Split(
    std::uint64_t seed) const {
  auto [train, test] = SplitIndices(threads_.size(), seed);
  std::pair<std::vector<ThreadId>, std::vector<ThreadId>> ids;
  for (std::size_t i : train) ids.first.push_back(threads_[i].id);
  for (std::size_t i : test) ids.second.push_back(threads_[i].id);
  return ids;
}

OutputLock::OutputLock(const std::string &dir) {
  fs::create_directories(dir);
  path_ = (fs::path(dir) / ".lock").string();
  int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    std::string reason = errno == EEXIST ? "locked by another process"
                                         : std::strerror(errno);
    path_.clear();
    throw std::runtime_error("output directory " + dir + " is " + reason);
  }
  ::close(fd);
}

OutputLock::~OutputLock() {
  if (!path_.empty()) ::unlink(path_.c_str());
}

IngestSummary CmdIngest(const RunConfig &config, std::ostream &out) {
  RequirePath(config.corpus_path, "corpus");
  std::vector<Thread> threads = LoadThreads(config.corpus_path);
  std::vector<ApiMethod> apis;
  if (!config.api_db_path.empty()) {
    RequirePath(config.api_db_path, "api_db");
    apis = LoadApiDb(config.api_db_path);
  }
  OutputLock lock(config.output_dir);
  std::vector<std::string> thread_lines;
  for (const Thread &t : threads) {
    thread_lines.push_back(ThreadToNormalizedRecord(t));
  }
  std::vector<std::string> api_lines;
  for (const ApiMethod &a : apis) api_lines.push_back(ApiToRecord(a));
  WriteLines(fs::path(config.output_dir) / "threads.jsonl", thread_lines);
  WriteLines(fs::path(config.output_dir) / "apis.jsonl", api_lines);
  out << threads.size() << " threads ingested\n"
      << apis.size() << " API methods ingested\n";
  return {threads.size(), apis.size()};
}

TrainSummary CmdTrain(const RunConfig &config, std::ostream &out) {
  LoadedRun run = Load(config, /*need_labels=*/true);
  std::unique_ptr<EmbeddingProvider> provider = MakeProvider(config);
  OutputLock lock(config.output_dir);
  Engine engine(std::move(run.threads), std::move(run.api_db),
                std::move(run.labels), *provider);
  auto [train_ids, test_ids] = engine.Split(config.seed);

  std::vector<RelevanceEmbedding> examples = engine.TrainingExamples(train_ids);
  TrainSummary summary;
  for (const RelevanceEmbedding &e : examples) {
    ++(*e.label ? summary.positives : summary.negatives);
  }
  TrainConfig train = config.train;
  train.seed = config.seed;
  TrainResult trained = Train(examples, train);
  examples.clear();
  examples.shrink_to_fit();
  summary.epoch_losses = trained.epoch_losses;

  RunConfig tuned = config;
  tuned.model_path = config.ModelPath();
  SaveModel(trained.model, tuned.model_path);

  std::vector<ApiRecords> records = engine.ScoreRecords(train_ids, &trained.model);
  summary.tuning = TuneWeightingFactor(records, config.fusion.grid, config.fusion.t);
  tuned.fusion.x = summary.tuning.x;

  std::ofstream conf(fs::path(config.output_dir) / "run.conf",
                     std::ios::binary | std::ios::trunc);
  conf << FormatRunConfig(tuned);

  std::vector<std::string> log;
  for (std::size_t e = 0; e < summary.epoch_losses.size(); ++e) {
    log.push_back(json{{"epoch", e + 1}, {"loss", summary.epoch_losses[e]}}.dump());
  }
  for (const auto &[x, f1] : summary.tuning.grid_f1) {
    log.push_back(json{{"x", x}, {"train_macro_f1", f1}}.dump());
  }
  WriteLines(fs::path(config.output_dir) / "train_log.jsonl", log);

  out << "training threads: " << train_ids.size()
      << ", held-out threads: " << test_ids.size() << "\n"
      << "embeddings: " << summary.positives << " positive, "
      << summary.negatives << " negative\n";
  for (std::size_t e = 0; e < summary.epoch_losses.size(); ++e) {
    out << "epoch " << e + 1 << " loss " << Number(summary.epoch_losses[e])
        << "\n";
  }
  out << "tuned x = " << Number(summary.tuning.x) << " (train macro F1 "
      << Number(summary.tuning.f1) << ")\n"
      << "model written to " << tuned.model_path << "\n";
  return summary;
}

TuneResult CmdTune(const RunConfig &config, std::ostream &out) {
  LoadedRun run = Load(config, /*need_labels=*/true);
  MlpModel model = LoadModel(ModelFileOrThrow(config));
  std::unique_ptr<EmbeddingProvider> provider = MakeProvider(config);
  OutputLock lock(config.output_dir);
  Engine engine(std::move(run.threads), std::move(run.api_db),
                std::move(run.labels), *provider);
  auto [train_ids, unused] = engine.Split(config.seed);
  std::vector<ApiRecords> records = engine.ScoreRecords(train_ids, &model);
  TuneResult result =
      TuneWeightingFactor(records, config.fusion.grid, config.fusion.t);

  RunConfig tuned = config;
  tuned.model_path = config.ModelPath();
  tuned.fusion.x = result.x;
  std::ofstream conf(fs::path(config.output_dir) / "run.conf",
                     std::ios::binary | std::ios::trunc);
  conf << FormatRunConfig(tuned);

  for (const auto &[x, f1] : result.grid_f1) {
    out << json{{"x", x}, {"train_macro_f1", f1}}.dump() << "\n";
  }
  out << json{{"chosen_x", result.x}, {"train_macro_f1", result.f1}}.dump()
      << "\n";
  return result;
}

std::vector<SearchHit> CmdSearch(const RunConfig &config,
                                 const std::string &api_fqn, bool debug,
                                 std::ostream &out, std::ostream &err) {
  LoadedRun run = Load(config, /*need_labels=*/false);
  std::optional<MlpModel> model;
  if (fs::exists(config.ModelPath())) {
    model = LoadModel(config.ModelPath());
  } else if (config.fusion.x != 1.0) {
    ModelFileOrThrow(config);
  }
  std::unique_ptr<EmbeddingProvider> provider;
  if (model) provider = MakeProvider(config);
  HashEmbeddingProvider unused_provider;
  Engine engine(std::move(run.threads), std::move(run.api_db), {},
                provider ? *provider : unused_provider);
  const ApiMethod *api = engine.FindApi(api_fqn);
  if (api == nullptr) {
    throw ConfigError("unknown API " + api_fqn + " (not in the API database)");
  }
  const std::string simple = SplitFqn(api_fqn).simple_name;

  std::vector<SearchHit> hits;
  for (const Thread &thread : engine.threads()) {
    if (!IsPotentialThread(thread, simple)) continue;
    SearchHit hit;
    hit.thread_id = thread.id;
    hit.title = thread.title;
    hit.a = engine.SyntacticScore(thread, *api);
    if (model) hit.b = engine.SemanticScore(*model, thread, *api);
    hit.c = JointScore(hit.a, hit.b.value_or(0.0), config.fusion.x);
    hit.relevant = ClassifyThread(hit.c, config.fusion.t);
    if (debug) {
      for (const CandidateScore &s : engine.CandidateScores(thread, *api)) {
        err << ScoreBreakdownRecord(thread.id, s) << "\n";
      }
    }
    hits.push_back(std::move(hit));
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const SearchHit &l, const SearchHit &r) {
                     return l.c > r.c;
                   });
  for (const SearchHit &hit : hits) {
    json record = {{"thread_id", hit.thread_id},
                   {"title", hit.title},
                   {"A", hit.a},
                   {"B", hit.b ? json(*hit.b) : json(nullptr)},
                   {"C", hit.c},
                   {"relevant", hit.relevant}};
    out << record.dump() << "\n";
  }
  return hits;
}

EvalSummary CmdEval(const RunConfig &config, std::ostream &out) {
  LoadedRun run = Load(config, /*need_labels=*/true);
  MlpModel model = LoadModel(ModelFileOrThrow(config));
  std::unique_ptr<EmbeddingProvider> provider = MakeProvider(config);
  OutputLock lock(config.output_dir);
  Engine engine(std::move(run.threads), std::move(run.api_db),
                std::move(run.labels), *provider);
  auto [unused, test_ids] = engine.Split(config.seed);
  std::vector<ApiRecords> records = engine.ScoreRecords(test_ids, &model);
  const Judgments truths = TruthsFor(records);
  const double t = config.fusion.t;

  EvalSummary summary;
  summary.fused = Evaluate(PredictionsFor(records, config.fusion.x, t), truths);
  summary.a_only = Evaluate(PredictionsFor(records, 1.0, t), truths);
  summary.b_only = Evaluate(PredictionsFor(records, 0.0, t), truths);

  std::vector<std::string> lines;
  for (const auto &[variant, report] :
       {std::pair<std::string, const EvalReport *>{"fused", &summary.fused},
        {"a_only", &summary.a_only},
        {"b_only", &summary.b_only}}) {
    for (std::string &r : ReportRecords(*report, variant)) {
      lines.push_back(std::move(r));
    }
  }
  WriteLines(fs::path(config.output_dir) / "eval_report.jsonl", lines);

  out << FormatReportTable(summary.fused,
                           "fused (x = " + Number(config.fusion.x) + ")")
      << "\n"
      << FormatReportTable(summary.a_only, "syntactic only (x = 1)") << "\n"
      << FormatReportTable(summary.b_only, "semantic only (x = 0)");
  return summary;
}

SynthCorpus CmdGenSynthetic(const RunConfig &config, std::ostream &out) {
  OutputLock lock(config.output_dir);
  SynthSpec spec = config.synth;
  spec.seed = config.seed;
  SynthCorpus corpus = Generate(spec);
  WriteSynthCorpus(corpus, config.output_dir);

  RunConfig generated = config;
  const fs::path dir(config.output_dir);
  generated.corpus_path = (dir / "corpus.jsonl").string();
  generated.api_db_path = (dir / "api_db.jsonl").string();
  generated.labels_path = (dir / "labels.jsonl").string();
  std::ofstream conf(dir / "run.conf", std::ios::binary | std::ios::trunc);
  conf << FormatRunConfig(generated);

  out << corpus.threads.size() << " threads, " << corpus.api_db.size()
      << " API methods (" << corpus.targets.size() << " targets), "
      << corpus.labels.size() << " labels written to " << config.output_dir
      << "\n";
  return corpus;
}

}  // namespace threadscope

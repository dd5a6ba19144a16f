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

// threadscope: finds the discussion threads that refer to a given Java API
// method.

#include <signal.h>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "threadscope/pipeline.h"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> provider;
  std::optional<double> x;
  std::optional<double> t;
  std::optional<std::string> out;
};

threadscope::RunConfig ResolveConfig(const Overrides &o) {
  threadscope::RunConfig config;
  if (!o.config.empty()) config = threadscope::LoadRunConfig(o.config);
  if (o.seed) config.seed = *o.seed;
  if (o.provider) config.provider = *o.provider;
  if (o.x) config.fusion.x = *o.x;
  if (o.t) config.fusion.t = *o.t;
  if (o.out) {
    config.output_dir =
        std::filesystem::absolute(*o.out).lexically_normal().string();
  }
  return config;
}

}  // namespace

int main(int argc, char **argv) {
  ::signal(SIGPIPE, SIG_IGN);

  CLI::App app{"Find the discussion threads that refer to a Java API method"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config, "Run configuration file (key = value)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "Seed for splitting, training and generation");
  app.add_option("--provider", o.provider,
                 "Embedding provider: hash, tcp://host:port or exec:<command>");
  app.add_option("--x", o.x, "Weight of the syntactic score")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--t", o.t, "Relevance threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--out", o.out, "Output directory");

  auto *ingest = app.add_subcommand("ingest", "Parse and normalize the corpus");
  auto *train = app.add_subcommand("train", "Train the classifier and tune x");
  auto *tune = app.add_subcommand("tune", "Re-tune x with the trained model");

  auto *search = app.add_subcommand("search", "Rank threads for one API");
  std::string api_fqn;
  bool debug = false;
  search->add_option("api", api_fqn, "Fully-qualified API method")->required();
  search->add_flag("--debug-scores", debug,
                   "Emit per-scope type-scoping records on stderr");

  auto *eval = app.add_subcommand("eval", "Evaluate on the held-out split");

  auto *gen = app.add_subcommand("gen-synthetic", "Write a synthetic corpus");
  std::optional<int> apis, threads, ambiguity;
  std::optional<double> syntactic, semantic;
  gen->add_option("--apis", apis, "Number of target APIs")->check(CLI::PositiveNumber);
  gen->add_option("--threads", threads, "Threads per target API")
      ->check(CLI::PositiveNumber);
  gen->add_option("--ambiguity", ambiguity, "Decoy methods per target API")
      ->check(CLI::PositiveNumber);
  gen->add_option("--syntactic", syntactic, "Probability the type is named")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--semantic", semantic, "Vocabulary overlap rate")
      ->check(CLI::Range(0.0, 1.0));

  CLI11_PARSE(app, argc, argv);

  try {
    threadscope::RunConfig config = ResolveConfig(o);
    if (*ingest) {
      threadscope::CmdIngest(config, std::cout);
    } else if (*train) {
      threadscope::CmdTrain(config, std::cout);
    } else if (*tune) {
      threadscope::CmdTune(config, std::cout);
    } else if (*search) {
      threadscope::CmdSearch(config, api_fqn, debug, std::cout, std::cerr);
    } else if (*eval) {
      threadscope::CmdEval(config, std::cout);
    } else if (*gen) {
      if (apis) config.synth.n_apis = *apis;
      if (threads) config.synth.n_threads_per_api = *threads;
      if (ambiguity) config.synth.ambiguity = *ambiguity;
      if (syntactic) config.synth.syntactic_signal = *syntactic;
      if (semantic) config.synth.semantic_signal = *semantic;
      threadscope::CmdGenSynthetic(config, std::cout);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

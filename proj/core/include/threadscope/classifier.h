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

// The relevance classifier: a two-layer perceptron over 1536-dimensional
// relevance embeddings,
//
//   p(v) = sigmoid(w2 . relu(W1^T v + b1) + b2)
//
// trained with binary cross-entropy on class-balanced data. A thread's
// semantic score is the mean probability over its embeddings.

#ifndef THREADSCOPE_CLASSIFIER_H_
#define THREADSCOPE_CLASSIFIER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "threadscope/embedding.h"

namespace threadscope {

struct MlpModel {
  int hidden = 0;
  std::uint64_t seed = 0;
  // Row-major [kRelevanceDim][hidden].
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;

  bool operator==(const MlpModel &) const = default;
};

enum class Optimizer { kSgd, kAdam };

struct TrainConfig {
  int epochs = 6;
  double learning_rate = 1e-3;
  int batch_size = 64;
  std::uint64_t seed = 0;
  int hidden = 128;
  Optimizer optimizer = Optimizer::kAdam;
};

struct TrainResult {
  MlpModel model;
  // Mean per-example loss of each epoch, measured on the forward passes.
  std::vector<double> epoch_losses;
};

// Weights drawn from U(-1/sqrt(fan_in), 1/sqrt(fan_in)) with `seed`.
MlpModel InitModel(int hidden, std::uint64_t seed);

// Throws ContractError unless v has kRelevanceDim values.
double Predict(const MlpModel &model, std::span<const double> v);

// Binary cross-entropy with probabilities clamped to [1e-12, 1 - 1e-12].
double BinaryCrossEntropy(double p, bool label);

// Gradient of the mean loss over `examples`, laid out like the model.
struct Gradients {
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;
};

// Returns the mean loss over `examples` and fills `grad`.
double LossAndGradient(const MlpModel &model,
                       std::span<const RelevanceEmbedding> examples,
                       Gradients *grad);

// Indices into `examples` with the minority class resampled (with
// replacement) up to the majority count. All original indices are kept, in
// order, followed by the resampled ones.
std::vector<std::size_t> BalancedIndices(
    std::span<const RelevanceEmbedding> examples, std::uint64_t seed);

// Initializes a model from config.seed and runs Fit. Throws TrainingError
// when only one label is present or config is invalid, DivergenceError on
// a non-finite loss.
TrainResult Train(std::span<const RelevanceEmbedding> examples,
                  const TrainConfig &config);

// Runs config.epochs further epochs (zero allowed) on `model`.
std::vector<double> Fit(MlpModel &model,
                        std::span<const RelevanceEmbedding> examples,
                        const TrainConfig &config);

// Mean predicted probability. Throws ContractError on an empty list.
double ThreadSemanticScore(const MlpModel &model,
                           std::span<const RelevanceEmbedding> embeddings);

// Binary model format, little-endian:
//   "TSMLPMDL" | u32 version | u32 hidden | u64 seed | f64 W1, b1, W2, b2
inline constexpr std::uint32_t kModelVersion = 1;

std::string SerializeModel(const MlpModel &model);
// Throws ModelIoError on a bad magic, version or size.
MlpModel DeserializeModel(const std::string &bytes);
void SaveModel(const MlpModel &model, const std::string &path);
MlpModel LoadModel(const std::string &path);

}  // namespace threadscope

#endif  // THREADSCOPE_CLASSIFIER_H_

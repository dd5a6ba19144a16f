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

#include "threadscope/classifier.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "threadscope/errors.h"
#include "threadscope/random.h"

namespace threadscope {
namespace {

constexpr char kMagic[8] = {'T', 'S', 'M', 'L', 'P', 'M', 'D', 'L'};
constexpr double kProbabilityClamp = 1e-12;

double Sigmoid(double z) {
  double p = z >= 0 ? 1.0 / (1.0 + std::exp(-z))
                    : std::exp(z) / (1.0 + std::exp(z));
  // Keep the result strictly inside (0, 1) for extreme logits.
  return std::clamp(p, std::numeric_limits<double>::denorm_min(),
                    std::nextafter(1.0, 0.0));
}

// Forward pass keeping the hidden pre-activations.
double Forward(const MlpModel &m, std::span<const double> v,
               std::vector<double> *pre) {
  const std::size_t h = static_cast<std::size_t>(m.hidden);
  pre->assign(m.b1.begin(), m.b1.end());
  double *z = pre->data();
  for (std::size_t i = 0; i < kRelevanceDim; ++i) {
    const double x = v[i];
    if (x == 0.0) continue;
    const double *row = m.w1.data() + i * h;
    for (std::size_t j = 0; j < h; ++j) z[j] += x * row[j];
  }
  double logit = m.b2;
  for (std::size_t j = 0; j < h; ++j) {
    if (z[j] > 0.0) logit += m.w2[j] * z[j];
  }
  return logit;
}

void CheckDims(std::span<const double> v) {
  if (v.size() != kRelevanceDim) {
    throw ContractError("expected a " + std::to_string(kRelevanceDim) +
                        "-dimensional embedding, got " +
                        std::to_string(v.size()));
  }
}

bool LabelOf(const RelevanceEmbedding &e) {
  if (!e.label) {
    throw ContractError("training embedding for thread " +
                        std::to_string(e.thread_id) + " has no label");
  }
  return *e.label;
}

// Accumulates the gradient of one example's loss, scaled by `scale`, into
// `grad`. Rows of W1 are only touched for nonzero inputs; `touched` records
// which rows were written.
double Accumulate(const MlpModel &m, const RelevanceEmbedding &e, double scale,
                  std::vector<double> *pre, Gradients *grad,
                  std::vector<char> *touched,
                  std::vector<std::size_t> *touched_rows) {
  std::span<const double> v(e.vector);
  CheckDims(v);
  const bool label = LabelOf(e);
  const double p = Sigmoid(Forward(m, v, pre));
  const double loss = BinaryCrossEntropy(p, label);
  const double delta = (p - (label ? 1.0 : 0.0)) * scale;

  const std::size_t h = static_cast<std::size_t>(m.hidden);
  const double *z = pre->data();
  // Reuse `pre` for the hidden deltas after reading activations.
  std::vector<double> &hidden_delta = *pre;
  for (std::size_t j = 0; j < h; ++j) {
    const bool active = z[j] > 0.0;
    grad->w2[j] += active ? delta * z[j] : 0.0;
    hidden_delta[j] = active ? delta * m.w2[j] : 0.0;
    grad->b1[j] += hidden_delta[j];
  }
  grad->b2 += delta;
  for (std::size_t i = 0; i < kRelevanceDim; ++i) {
    const double x = v[i];
    if (x == 0.0) continue;
    if (touched != nullptr && !(*touched)[i]) {
      (*touched)[i] = 1;
      touched_rows->push_back(i);
    }
    double *row = grad->w1.data() + i * h;
    for (std::size_t j = 0; j < h; ++j) row[j] += x * hidden_delta[j];
  }
  return loss;
}

Gradients ZeroGradients(const MlpModel &m) {
  Gradients g;
  g.w1.assign(m.w1.size(), 0.0);
  g.b1.assign(m.b1.size(), 0.0);
  g.w2.assign(m.w2.size(), 0.0);
  g.b2 = 0.0;
  return g;
}

bool AllFinite(const std::vector<double> &v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

struct AdamState {
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  explicit AdamState(const MlpModel &m)
      : m(ZeroGradients(m)), v(ZeroGradients(m)) {}

  Gradients m;
  Gradients v;
  long step = 0;
};

void AdamUpdate(double lr, double c1, double c2, std::vector<double> &w,
                const std::vector<double> &g, std::vector<double> &m,
                std::vector<double> &v) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    m[k] = AdamState::kBeta1 * m[k] + (1 - AdamState::kBeta1) * g[k];
    v[k] = AdamState::kBeta2 * v[k] + (1 - AdamState::kBeta2) * g[k] * g[k];
    w[k] -= lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + AdamState::kEpsilon);
  }
}

void AppendU32(std::string *out, std::uint32_t x) {
  for (int b = 0; b < 4; ++b) out->push_back(static_cast<char>(x >> (8 * b)));
}

void AppendU64(std::string *out, std::uint64_t x) {
  for (int b = 0; b < 8; ++b) out->push_back(static_cast<char>(x >> (8 * b)));
}

void AppendDoubles(std::string *out, const double *values, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    AppendU64(out, std::bit_cast<std::uint64_t>(values[k]));
  }
}

std::uint64_t ReadU64(const std::string &in, std::size_t at, int bytes) {
  std::uint64_t x = 0;
  for (int b = 0; b < bytes; ++b) {
    x |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + b]))
         << (8 * b);
  }
  return x;
}

}  // namespace

MlpModel InitModel(int hidden, std::uint64_t seed) {
  if (hidden <= 0) throw ContractError("hidden width must be positive");
  MlpModel m;
  m.hidden = hidden;
  m.seed = seed;
  Rng rng(seed);
  const double r1 = 1.0 / std::sqrt(static_cast<double>(kRelevanceDim));
  const double r2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  m.w1.resize(kRelevanceDim * static_cast<std::size_t>(hidden));
  for (double &w : m.w1) w = rng.Uniform(-r1, r1);
  m.b1.resize(static_cast<std::size_t>(hidden));
  for (double &b : m.b1) b = rng.Uniform(-r1, r1);
  m.w2.resize(static_cast<std::size_t>(hidden));
  for (double &w : m.w2) w = rng.Uniform(-r2, r2);
  m.b2 = rng.Uniform(-r2, r2);
  return m;
}

double Predict(const MlpModel &model, std::span<const double> v) {
  CheckDims(v);
  std::vector<double> pre;
  return Sigmoid(Forward(model, v, &pre));
}

double BinaryCrossEntropy(double p, bool label) {
  double q = label ? p : 1.0 - p;
  return -std::log(std::clamp(q, kProbabilityClamp, 1.0 - kProbabilityClamp));
}

double LossAndGradient(const MlpModel &model,
                       std::span<const RelevanceEmbedding> examples,
                       Gradients *grad) {
  if (examples.empty()) throw ContractError("no examples");
  *grad = ZeroGradients(model);
  std::vector<double> pre;
  const double scale = 1.0 / static_cast<double>(examples.size());
  double loss = 0.0;
  for (const RelevanceEmbedding &e : examples) {
    loss += Accumulate(model, e, scale, &pre, grad, nullptr, nullptr);
  }
  return loss * scale;
}

std::vector<std::size_t> BalancedIndices(
    std::span<const RelevanceEmbedding> examples, std::uint64_t seed) {
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    (LabelOf(examples[i]) ? positives : negatives).push_back(i);
  }
  std::vector<std::size_t> indices(examples.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  const std::vector<std::size_t> &minority =
      positives.size() < negatives.size() ? positives : negatives;
  const std::size_t deficit =
      std::max(positives.size(), negatives.size()) - minority.size();
  if (deficit == 0 || minority.empty()) return indices;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t k = 0; k < deficit; ++k) {
    indices.push_back(minority[rng.Below(minority.size())]);
  }
  return indices;
}

TrainResult Train(std::span<const RelevanceEmbedding> examples,
                  const TrainConfig &config) {
  if (config.epochs < 1) throw TrainingError("epochs must be at least 1");
  bool has_positive = false;
  bool has_negative = false;
  for (const RelevanceEmbedding &e : examples) {
    (LabelOf(e) ? has_positive : has_negative) = true;
  }
  if (!has_positive || !has_negative) {
    throw TrainingError("training data must contain both labels");
  }
  TrainResult result;
  result.model = InitModel(config.hidden, config.seed);
  result.epoch_losses = Fit(result.model, examples, config);
  return result;
}

std::vector<double> Fit(MlpModel &model,
                        std::span<const RelevanceEmbedding> examples,
                        const TrainConfig &config) {
  if (config.epochs < 0) throw TrainingError("epochs must be non-negative");
  if (!(config.learning_rate > 0.0)) {
    throw TrainingError("learning rate must be positive");
  }
  if (config.batch_size <= 0) throw TrainingError("batch size must be positive");
  // A NaN input would otherwise look like an inactive ReLU and vanish.
  for (std::size_t k = 0; k < examples.size(); ++k) {
    CheckDims(examples[k].vector);
    if (!AllFinite(examples[k].vector)) {
      throw ContractError("training example " + std::to_string(k) +
                          " has a non-finite value");
    }
  }
  std::vector<double> losses;
  if (config.epochs == 0) return losses;

  std::vector<std::size_t> order = BalancedIndices(examples, config.seed);
  Rng rng(config.seed ^ 0x2545f4914f6cdd1dULL);
  const std::size_t h = static_cast<std::size_t>(model.hidden);
  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  const double lr = config.learning_rate;

  Gradients grad = ZeroGradients(model);
  std::vector<char> touched(kRelevanceDim, 0);
  std::vector<std::size_t> touched_rows;
  std::vector<double> pre;
  AdamState adam(model);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      const double scale = 1.0 / static_cast<double>(end - start);
      for (std::size_t k = start; k < end; ++k) {
        epoch_loss += Accumulate(model, examples[order[k]], scale, &pre,
                                 &grad, &touched, &touched_rows);
      }

      if (config.optimizer == Optimizer::kSgd) {
        for (std::size_t i : touched_rows) {
          double *w = model.w1.data() + i * h;
          double *g = grad.w1.data() + i * h;
          for (std::size_t j = 0; j < h; ++j) w[j] -= lr * g[j];
        }
        for (std::size_t j = 0; j < h; ++j) {
          model.b1[j] -= lr * grad.b1[j];
          model.w2[j] -= lr * grad.w2[j];
        }
        model.b2 -= lr * grad.b2;
      } else {
        ++adam.step;
        const double c1 = 1.0 - std::pow(AdamState::kBeta1, adam.step);
        const double c2 = 1.0 - std::pow(AdamState::kBeta2, adam.step);
        AdamUpdate(lr, c1, c2, model.w1, grad.w1, adam.m.w1, adam.v.w1);
        AdamUpdate(lr, c1, c2, model.b1, grad.b1, adam.m.b1, adam.v.b1);
        AdamUpdate(lr, c1, c2, model.w2, grad.w2, adam.m.w2, adam.v.w2);
        adam.m.b2 = AdamState::kBeta1 * adam.m.b2 +
                    (1 - AdamState::kBeta1) * grad.b2;
        adam.v.b2 = AdamState::kBeta2 * adam.v.b2 +
                    (1 - AdamState::kBeta2) * grad.b2 * grad.b2;
        model.b2 -= lr * (adam.m.b2 / c1) /
                    (std::sqrt(adam.v.b2 / c2) + AdamState::kEpsilon);
      }

      for (std::size_t i : touched_rows) {
        std::fill_n(grad.w1.data() + i * h, h, 0.0);
        touched[i] = 0;
      }
      touched_rows.clear();
      std::fill(grad.b1.begin(), grad.b1.end(), 0.0);
      std::fill(grad.w2.begin(), grad.w2.end(), 0.0);
      grad.b2 = 0.0;
    }
    epoch_loss /= static_cast<double>(order.size());
    if (!std::isfinite(epoch_loss) || !std::isfinite(model.b2) ||
        !AllFinite(model.w2) || !AllFinite(model.b1)) {
      throw DivergenceError(epoch, "non-finite loss or weights");
    }
    losses.push_back(epoch_loss);
  }
  return losses;
}

double ThreadSemanticScore(const MlpModel &model,
                           std::span<const RelevanceEmbedding> embeddings) {
  if (embeddings.empty()) {
    throw ContractError("semantic score needs at least one embedding");
  }
  double sum = 0.0;
  for (const RelevanceEmbedding &e : embeddings) sum += Predict(model, e.vector);
  return sum / static_cast<double>(embeddings.size());
}

std::string SerializeModel(const MlpModel &model) {
  std::string out(kMagic, sizeof(kMagic));
  AppendU32(&out, kModelVersion);
  AppendU32(&out, static_cast<std::uint32_t>(model.hidden));
  AppendU64(&out, model.seed);
  AppendDoubles(&out, model.w1.data(), model.w1.size());
  AppendDoubles(&out, model.b1.data(), model.b1.size());
  AppendDoubles(&out, model.w2.data(), model.w2.size());
  AppendDoubles(&out, &model.b2, 1);
  return out;
}

MlpModel DeserializeModel(const std::string &bytes) {
  constexpr std::size_t kHeader = 8 + 4 + 4 + 8;
  if (bytes.size() < kHeader) throw ModelIoError("model file is truncated");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw ModelIoError("not a model file (bad magic)");
  }
  const auto version = static_cast<std::uint32_t>(ReadU64(bytes, 8, 4));
  if (version != kModelVersion) {
    throw ModelIoError("unsupported model version " + std::to_string(version));
  }
  const auto hidden = static_cast<std::uint32_t>(ReadU64(bytes, 12, 4));
  if (hidden == 0 || hidden > (1u << 20)) {
    throw ModelIoError("invalid hidden width " + std::to_string(hidden));
  }
  const std::size_t h = hidden;
  const std::size_t count = kRelevanceDim * h + h + h + 1;
  if (bytes.size() != kHeader + 8 * count) {
    throw ModelIoError("model file has " + std::to_string(bytes.size()) +
                       " bytes, expected " +
                       std::to_string(kHeader + 8 * count));
  }
  MlpModel m;
  m.hidden = static_cast<int>(hidden);
  m.seed = ReadU64(bytes, 16, 8);
  std::size_t at = kHeader;
  auto read = [&](std::vector<double> *out, std::size_t n) {
    out->resize(n);
    for (double &x : *out) {
      x = std::bit_cast<double>(ReadU64(bytes, at, 8));
      at += 8;
    }
  };
  read(&m.w1, kRelevanceDim * h);
  read(&m.b1, h);
  read(&m.w2, h);
  std::vector<double> b2;
  read(&b2, 1);
  m.b2 = b2[0];
  if (!AllFinite(m.w1) || !AllFinite(m.b1) || !AllFinite(m.w2) ||
      !std::isfinite(m.b2)) {
    throw ModelIoError("model file contains non-finite weights");
  }
  return m;
}

void SaveModel(const MlpModel &model, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelIoError("cannot write model file " + path);
  const std::string bytes = SerializeModel(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ModelIoError("failed writing model file " + path);
}

MlpModel LoadModel(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelIoError("cannot open model file " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  try {
    return DeserializeModel(bytes);
  } catch (const ModelIoError &e) {
    throw ModelIoError(path + ": " + e.what());
  }
}

}  // namespace threadscope

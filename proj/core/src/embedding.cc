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

#include "threadscope/embedding.h"

#include <algorithm>
#include <cmath>

#include "threadscope/errors.h"
#include "threadscope/tokenizer.h"

namespace threadscope {
namespace {

// Seeded FNV-style multiplicative hash with a murmur finalizer.
std::uint64_t HashFeature(std::uint64_t seed, char side, std::string_view a,
                          std::string_view b = {}) {
  constexpr std::uint64_t kPrime = 0x100000001b3ULL;
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  auto mix_byte = [&](unsigned char c) { h = (h ^ c) * kPrime; };
  mix_byte(static_cast<unsigned char>(side));
  for (char c : a) mix_byte(static_cast<unsigned char>(c));
  if (!b.empty()) {
    mix_byte(0x1f);
    for (char c : b) mix_byte(static_cast<unsigned char>(c));
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

void AddFeature(std::vector<double> *v, std::uint64_t h) {
  (*v)[(h >> 1) % kEmbeddingDim] += (h & 1) ? -1.0 : 1.0;
}

void HashSide(std::span<const std::string> tokens, char side,
              std::uint64_t seed, std::vector<double> *v) {
  std::string_view previous;
  for (const std::string &token : tokens) {
    if (token == kPadToken) break;
    AddFeature(v, HashFeature(seed, side, token));
    if (!previous.empty()) AddFeature(v, HashFeature(seed, side, previous, token));
    previous = token;
  }
}

void AppendBudgeted(const std::vector<std::string> &tokens, std::size_t budget,
                    std::vector<std::string> *out) {
  std::size_t kept = std::min(tokens.size(), budget);
  out->insert(out->end(), tokens.begin(), tokens.begin() + kept);
  out->insert(out->end(), budget - kept, std::string(kPadToken));
}

void CheckVector(const std::vector<double> &v, const std::string &where) {
  if (v.size() != kEmbeddingDim) {
    throw ProviderError(where + ": expected " + std::to_string(kEmbeddingDim) +
                        " values, got " + std::to_string(v.size()));
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw ProviderError(where + ": non-finite value");
  }
}

}  // namespace

PairText BuildPair(std::string_view first, std::string_view second,
                   const PairTokenizer &tokenizer) {
  PairText pair{std::string(first), std::string(second), {}};
  pair.rendered.reserve(kPairLength);
  pair.rendered.emplace_back(kClsToken);
  AppendBudgeted(tokenizer(first), kFirstBudget, &pair.rendered);
  pair.rendered.emplace_back(kSepToken);
  AppendBudgeted(tokenizer(second), kSecondBudget, &pair.rendered);
  pair.rendered.emplace_back(kEosToken);
  return pair;
}

PairText BuildPair(std::string_view first, std::string_view second) {
  return BuildPair(first, second, TokenizeIdentifiers);
}

std::vector<PairText> ThreadPairs(const Thread &thread) {
  static const std::vector<std::string> kPlaceholder = {std::string()};
  const std::vector<std::string> &snippets =
      thread.code_snippets.empty() ? kPlaceholder : thread.code_snippets;
  std::vector<PairText> pairs;
  pairs.reserve(thread.paragraphs.size() * snippets.size());
  for (const std::string &paragraph : thread.paragraphs) {
    for (const std::string &snippet : snippets) {
      pairs.push_back(BuildPair(paragraph, snippet));
    }
  }
  return pairs;
}

PairText MethodPair(const ApiMethod &api) {
  return BuildPair(api.comment, api.impl_code);
}

std::vector<double> HashEmbed(const PairText &pair, std::uint64_t seed) {
  std::vector<double> v(kEmbeddingDim, 0.0);
  std::span<const std::string> rendered(pair.rendered);
  if (rendered.size() == kPairLength) {
    HashSide(rendered.subspan(1, kFirstBudget), 'a', seed, &v);
    HashSide(rendered.subspan(kSepPosition + 1, kSecondBudget), 'b', seed, &v);
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double &x : v) x /= norm;
  }
  return v;
}

std::vector<std::vector<double>> EmbeddingProvider::EmbedBatch(
    std::span<const PairText> pairs) {
  std::vector<std::vector<double>> out;
  out.reserve(pairs.size());
  for (const PairText &pair : pairs) out.push_back(Embed(pair));
  return out;
}

std::vector<std::vector<double>> EmbedThreadPairs(const Thread &thread,
                                                  EmbeddingProvider &provider) {
  const std::vector<PairText> pairs = ThreadPairs(thread);
  const std::string where = "thread " + std::to_string(thread.id);
  std::vector<std::vector<double>> vectors;
  try {
    vectors = provider.EmbedBatch(pairs);
  } catch (const ProviderError &e) {
    throw ProviderError(where + ": " + e.what());
  }
  if (vectors.size() != pairs.size()) {
    throw ProviderError(where + ": provider returned " +
                        std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(pairs.size()) + " pairs");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    CheckVector(vectors[i], where + " pair " + std::to_string(i));
  }
  return vectors;
}

std::vector<double> EmbedMethod(const ApiMethod &api,
                                EmbeddingProvider &provider) {
  std::vector<double> v;
  try {
    v = provider.Embed(MethodPair(api));
  } catch (const ProviderError &e) {
    throw ProviderError("method " + api.fqn + ": " + e.what());
  }
  CheckVector(v, "method " + api.fqn);
  return v;
}

RelevanceEmbedding Concatenate(std::span<const double> thread_vector,
                               std::span<const double> method_vector,
                               ThreadId thread_id, const std::string &api_fqn) {
  if (thread_vector.size() != kEmbeddingDim ||
      method_vector.size() != kEmbeddingDim) {
    throw ContractError("pair vectors must have 768 values");
  }
  RelevanceEmbedding e;
  e.vector.reserve(kRelevanceDim);
  e.vector.insert(e.vector.end(), thread_vector.begin(), thread_vector.end());
  e.vector.insert(e.vector.end(), method_vector.begin(), method_vector.end());
  e.thread_id = thread_id;
  e.api_fqn = api_fqn;
  return e;
}

std::vector<RelevanceEmbedding> RelevanceEmbeddings(
    const Thread &thread, const ApiMethod &api, EmbeddingProvider &provider) {
  const std::vector<double> method = EmbedMethod(api, provider);
  std::vector<RelevanceEmbedding> out;
  for (const std::vector<double> &v : EmbedThreadPairs(thread, provider)) {
    out.push_back(Concatenate(v, method, thread.id, api.fqn));
  }
  return out;
}

}  // namespace threadscope

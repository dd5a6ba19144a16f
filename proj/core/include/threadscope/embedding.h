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

// Text/code pair rendering and API relevance embeddings.
//
// Every pair is rendered to exactly 512 tokens:
//
//   <CLS> first[254] <SEP> second[255] <EOS>
//
// where each side is truncated to its budget or right-padded with <PAD>.
// A thread contributes one pair per (paragraph, snippet) combination; the
// method contributes one (comment, implementation) pair. The relevance
// embedding is the thread-pair vector followed by the method-pair vector.

#ifndef THREADSCOPE_EMBEDDING_H_
#define THREADSCOPE_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "threadscope/corpus.h"

namespace threadscope {

inline constexpr std::size_t kFirstBudget = 254;
inline constexpr std::size_t kSecondBudget = 255;
inline constexpr std::size_t kPairLength = kFirstBudget + kSecondBudget + 3;
inline constexpr std::size_t kSepPosition = 1 + kFirstBudget;
inline constexpr std::size_t kEosPosition = kPairLength - 1;
inline constexpr std::size_t kEmbeddingDim = 768;
inline constexpr std::size_t kRelevanceDim = 2 * kEmbeddingDim;

inline constexpr std::string_view kClsToken = "<CLS>";
inline constexpr std::string_view kSepToken = "<SEP>";
inline constexpr std::string_view kEosToken = "<EOS>";
inline constexpr std::string_view kPadToken = "<PAD>";

inline constexpr std::uint64_t kDefaultHashSeed = 0x6a09e667f3bcc908ULL;

using PairTokenizer = std::function<std::vector<std::string>(std::string_view)>;

struct PairText {
  std::string first;
  std::string second;
  std::vector<std::string> rendered;
};

PairText BuildPair(std::string_view first, std::string_view second,
                   const PairTokenizer &tokenizer);
PairText BuildPair(std::string_view first, std::string_view second);

// Paragraph-major cartesian product of paragraphs and snippets. A thread
// without snippets is paired with a single empty snippet.
std::vector<PairText> ThreadPairs(const Thread &thread);

PairText MethodPair(const ApiMethod &api);

// Feature-hashed embedding of a rendered pair: signed unigram and bigram
// counts per side (specials and padding excluded), L2-normalized. A pair
// with no real tokens maps to the zero vector.
std::vector<double> HashEmbed(const PairText &pair,
                              std::uint64_t seed = kDefaultHashSeed);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::vector<double> Embed(const PairText &pair) = 0;

  // Order-preserving. The default implementation calls Embed per pair.
  virtual std::vector<std::vector<double>> EmbedBatch(
      std::span<const PairText> pairs);

  // True if callers must not issue concurrent requests.
  virtual bool requires_serialization() const { return false; }

  virtual std::string name() const = 0;
};

class HashEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HashEmbeddingProvider(std::uint64_t seed = kDefaultHashSeed)
      : seed_(seed) {}

  std::vector<double> Embed(const PairText &pair) override {
    return HashEmbed(pair, seed_);
  }

  std::string name() const override { return "hash"; }

 private:
  std::uint64_t seed_;
};

struct RelevanceEmbedding {
  std::vector<double> vector;
  ThreadId thread_id = 0;
  std::string api_fqn;
  std::optional<bool> label;
};

// Embeds pairs through `provider`, checking every returned vector is
// 768 finite values. Errors name the thread and the pair index.
std::vector<std::vector<double>> EmbedThreadPairs(const Thread &thread,
                                                  EmbeddingProvider &provider);
std::vector<double> EmbedMethod(const ApiMethod &api,
                                EmbeddingProvider &provider);

RelevanceEmbedding Concatenate(std::span<const double> thread_vector,
                               std::span<const double> method_vector,
                               ThreadId thread_id, const std::string &api_fqn);

std::vector<RelevanceEmbedding> RelevanceEmbeddings(
    const Thread &thread, const ApiMethod &api, EmbeddingProvider &provider);

}  // namespace threadscope

#endif  // THREADSCOPE_EMBEDDING_H_

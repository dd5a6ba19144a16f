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

// Client for out-of-process encoders speaking line-delimited JSON.
//
//   request        {"first": s, "second": s, "max_first": 254, "max_second": 255}
//   response       {"vector": [768 numbers]}
//   batch request  {"batch": [request, ...]}
//   batch response {"vectors": [[768 numbers], ...]}
//   failure        {"error": s}
//
// Addresses are "tcp://host:port" or "exec:<shell command>"; the latter
// talks to the command's standard streams.

#ifndef THREADSCOPE_EXTERNAL_PROVIDER_H_
#define THREADSCOPE_EXTERNAL_PROVIDER_H_

#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "threadscope/embedding.h"

namespace threadscope {

// A bidirectional line-oriented transport.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void WriteLine(std::string_view line) = 0;
  // Throws ProviderError on end of stream.
  virtual std::string ReadLine() = 0;
};

// Throws ProviderError if the address is malformed or unreachable.
std::unique_ptr<LineChannel> OpenChannel(const std::string &address);

std::string EncodeEmbedRequest(const PairText &pair);
std::string EncodeBatchRequest(std::span<const PairText> pairs);

class ExternalEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit ExternalEmbeddingProvider(const std::string &address);
  ExternalEmbeddingProvider(std::unique_ptr<LineChannel> channel,
                            std::string address);

  std::vector<double> Embed(const PairText &pair) override;
  std::vector<std::vector<double>> EmbedBatch(
      std::span<const PairText> pairs) override;

  // Requests are serialized internally over one channel.
  bool requires_serialization() const override { return true; }

  std::string name() const override { return "external(" + address_ + ")"; }

 private:
  std::string Exchange(const std::string &request);

  std::mutex mutex_;
  std::unique_ptr<LineChannel> channel_;
  std::string address_;
};

}  // namespace threadscope

#endif  // THREADSCOPE_EXTERNAL_PROVIDER_H_

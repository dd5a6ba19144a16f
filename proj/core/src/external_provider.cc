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

#include "threadscope/external_provider.h"

#include <fcntl.h>
#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "json.hpp"
#include "threadscope/errors.h"

namespace threadscope {
namespace {

using json = nlohmann::json;

std::string ErrnoMessage(const std::string &what) {
  return what + ": " + std::strerror(errno);
}

// Buffered line reader/writer over a pair of file descriptors.
class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd) : read_fd_(read_fd), write_fd_(write_fd) {}

  void WriteLine(std::string_view line) override {
    std::string data(line);
    data.push_back('\n');
    std::size_t sent = 0;
    while (sent < data.size()) {
      ssize_t n = Write(data.data() + sent, data.size() - sent);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProviderError(ErrnoMessage("write to encoder failed"));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  std::string ReadLine() override {
    while (true) {
      std::size_t eol = buffer_.find('\n');
      if (eol != std::string::npos) {
        std::string line = buffer_.substr(0, eol);
        buffer_.erase(0, eol + 1);
        return line;
      }
      char chunk[65536];
      ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProviderError(ErrnoMessage("read from encoder failed"));
      }
      if (n == 0) throw ProviderError("encoder closed the connection");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 protected:
  virtual ssize_t Write(const char *data, std::size_t size) {
    return ::write(write_fd_, data, size);
  }

  int read_fd_;
  int write_fd_;
  std::string buffer_;
};

class TcpChannel : public FdChannel {
 public:
  explicit TcpChannel(int fd) : FdChannel(fd, fd) {}
  ~TcpChannel() override { ::close(read_fd_); }

 protected:
  ssize_t Write(const char *data, std::size_t size) override {
    return ::send(write_fd_, data, size, MSG_NOSIGNAL);
  }
};

class ExecChannel : public FdChannel {
 public:
  ExecChannel(int read_fd, int write_fd, pid_t pid)
      : FdChannel(read_fd, write_fd), pid_(pid) {}

  ~ExecChannel() override {
    ::close(write_fd_);
    ::close(read_fd_);
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }

 private:
  pid_t pid_;
};

std::unique_ptr<LineChannel> OpenTcp(const std::string &endpoint) {
  std::size_t colon = endpoint.rfind(':');
  if (colon == std::string::npos || colon == 0 ||
      colon + 1 == endpoint.size()) {
    throw ProviderError("malformed tcp address '" + endpoint +
                        "', expected host:port");
  }
  std::string host = endpoint.substr(0, colon);
  std::string port = endpoint.substr(colon + 1);

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo *result = nullptr;
  int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &result);
  if (rc != 0) {
    throw ProviderError("cannot resolve " + endpoint + ": " +
                        ::gai_strerror(rc));
  }
  int fd = -1;
  std::string last_error = "no addresses";
  for (addrinfo *ai = result; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_error = std::strerror(errno);
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    last_error = std::strerror(errno);
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(result);
  if (fd < 0) {
    throw ProviderError("cannot connect to encoder at " + endpoint + ": " +
                        last_error);
  }
  return std::make_unique<TcpChannel>(fd);
}

std::unique_ptr<LineChannel> OpenExec(const std::string &command) {
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw ProviderError(ErrnoMessage("pipe"));
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw ProviderError(ErrnoMessage("pipe"));
  }
  pid_t pid = ::fork();
  if (pid < 0) throw ProviderError(ErrnoMessage("fork"));
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  // A child that exits early must surface as a ProviderError, not SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);
  return std::make_unique<ExecChannel>(from_child[0], to_child[1], pid);
}

json RequestObject(const PairText &pair) {
  return {{"first", pair.first},
          {"second", pair.second},
          {"max_first", kFirstBudget},
          {"max_second", kSecondBudget}};
}

json ParseResponse(const std::string &line) {
  json response;
  try {
    response = json::parse(line);
  } catch (const json::parse_error &e) {
    throw ProviderError(std::string("malformed encoder response: ") + e.what());
  }
  if (!response.is_object()) {
    throw ProviderError("malformed encoder response: not an object");
  }
  if (auto err = response.find("error"); err != response.end()) {
    throw ProviderError("encoder error: " + err->dump());
  }
  return response;
}

std::vector<double> ToVector(const json &value) {
  if (!value.is_array()) throw ProviderError("encoder vector is not an array");
  std::vector<double> v;
  v.reserve(value.size());
  for (const json &x : value) {
    if (!x.is_number()) throw ProviderError("encoder vector has a non-number");
    v.push_back(x.get<double>());
  }
  return v;
}

}  // namespace

std::unique_ptr<LineChannel> OpenChannel(const std::string &address) {
  constexpr std::string_view kTcp = "tcp://";
  constexpr std::string_view kExec = "exec:";
  if (address.rfind(kTcp, 0) == 0) return OpenTcp(address.substr(kTcp.size()));
  if (address.rfind(kExec, 0) == 0) {
    return OpenExec(address.substr(kExec.size()));
  }
  throw ProviderError("unsupported encoder address '" + address +
                      "', expected tcp://host:port or exec:<command>");
}

std::string EncodeEmbedRequest(const PairText &pair) {
  return RequestObject(pair).dump();
}

std::string EncodeBatchRequest(std::span<const PairText> pairs) {
  json batch = json::array();
  for (const PairText &pair : pairs) batch.push_back(RequestObject(pair));
  return json{{"batch", std::move(batch)}}.dump();
}

ExternalEmbeddingProvider::ExternalEmbeddingProvider(const std::string &address)
    : channel_(OpenChannel(address)), address_(address) {}

ExternalEmbeddingProvider::ExternalEmbeddingProvider(
    std::unique_ptr<LineChannel> channel, std::string address)
    : channel_(std::move(channel)), address_(std::move(address)) {}

std::string ExternalEmbeddingProvider::Exchange(const std::string &request) {
  std::lock_guard<std::mutex> lock(mutex_);
  channel_->WriteLine(request);
  return channel_->ReadLine();
}

std::vector<double> ExternalEmbeddingProvider::Embed(const PairText &pair) {
  json response = ParseResponse(Exchange(EncodeEmbedRequest(pair)));
  auto vector = response.find("vector");
  if (vector == response.end()) {
    throw ProviderError("encoder response has no 'vector'");
  }
  return ToVector(*vector);
}

std::vector<std::vector<double>> ExternalEmbeddingProvider::EmbedBatch(
    std::span<const PairText> pairs) {
  if (pairs.empty()) return {};
  json response = ParseResponse(Exchange(EncodeBatchRequest(pairs)));
  auto vectors = response.find("vectors");
  if (vectors == response.end() || !vectors->is_array()) {
    throw ProviderError("encoder batch response has no 'vectors' array");
  }
  std::vector<std::vector<double>> out;
  out.reserve(vectors->size());
  for (const json &v : *vectors) out.push_back(ToVector(v));
  return out;
}

}  // namespace threadscope

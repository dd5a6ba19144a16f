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

#ifndef THREADSCOPE_ERRORS_H_
#define THREADSCOPE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace threadscope {

// Violated precondition on an operation's input (wrong dimension, value out
// of range, mismatched keys).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A fully-qualified method name with fewer than three segments or with a
// segment that is not a Java identifier.
class MalformedFqnError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A corpus, API database or labels record that could not be read. The line
// number is 1-based; 0 means the error is not tied to a line.
class IngestionError : public std::runtime_error {
 public:
  IngestionError(std::size_t line, const std::string &message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " +
                                           message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergenceError : public TrainingError {
 public:
  DivergenceError(int epoch, const std::string &message)
      : TrainingError("epoch " + std::to_string(epoch) + ": " + message),
        epoch_(epoch) {}

  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

class ModelIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure reported by an embedding provider, or failure to reach one.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace threadscope

#endif  // THREADSCOPE_ERRORS_H_

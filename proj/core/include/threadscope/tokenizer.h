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

// Identifier scanner shared by type scoping and pair budgeting. A token is a
// maximal run of [A-Za-z0-9_$]; every other byte separates tokens.

#ifndef THREADSCOPE_TOKENIZER_H_
#define THREADSCOPE_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace threadscope {

struct TokenSpan {
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const TokenSpan &) const = default;
};

inline bool IsIdentifierChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '$';
}

// Byte ranges of all tokens in `text`, in order.
std::vector<TokenSpan> TokenSpans(std::string_view text);

// Tokens as views into `text`. The views are only valid while `text` is.
std::vector<std::string_view> TokenViews(std::string_view text);

std::vector<std::string> TokenizeIdentifiers(std::string_view text);

}  // namespace threadscope

#endif  // THREADSCOPE_TOKENIZER_H_

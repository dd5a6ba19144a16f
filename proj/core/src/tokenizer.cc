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

#include "threadscope/tokenizer.h"

namespace threadscope {

std::vector<TokenSpan> TokenSpans(std::string_view text) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsIdentifierChar(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && IsIdentifierChar(text[i])) ++i;
    spans.push_back({start, i - start});
  }
  return spans;
}

std::vector<std::string_view> TokenViews(std::string_view text) {
  std::vector<std::string_view> views;
  for (const TokenSpan &span : TokenSpans(text)) {
    views.push_back(text.substr(span.offset, span.length));
  }
  return views;
}

std::vector<std::string> TokenizeIdentifiers(std::string_view text) {
  std::vector<std::string> tokens;
  for (std::string_view view : TokenViews(text)) tokens.emplace_back(view);
  return tokens;
}

}  // namespace threadscope

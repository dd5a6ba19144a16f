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

#include "threadscope/typescope.h"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "json.hpp"
#include "threadscope/errors.h"
#include "threadscope/tokenizer.h"

namespace threadscope {
namespace {

bool IsTypeName(std::string_view name) {
  return IsJavaIdentifier(name) &&
         ((name[0] >= 'A' && name[0] <= 'Z') || name[0] == '_');
}

// Coarse Java lexer: identifiers and single punctuation characters. String
// and character literals and comments are dropped.
struct CodeToken {
  std::string_view text;
  bool identifier = false;
};

std::vector<CodeToken> LexCode(std::string_view code) {
  std::vector<CodeToken> tokens;
  std::size_t i = 0;
  const std::size_t n = code.size();
  while (i < n) {
    char c = code[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < n && code[i + 1] == '/') {
      while (i < n && code[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < n && code[i + 1] == '*') {
      std::size_t end = code.find("*/", i + 2);
      i = end == std::string_view::npos ? n : end + 2;
    } else if (c == '"' || c == '\'') {
      ++i;
      while (i < n && code[i] != c && code[i] != '\n') {
        if (code[i] == '\\') ++i;
        ++i;
      }
      ++i;
    } else if (IsIdentifierChar(c)) {
      std::size_t start = i;
      while (i < n && IsIdentifierChar(code[i])) ++i;
      tokens.push_back({code.substr(start, i - start), true});
    } else {
      tokens.push_back({code.substr(i, 1), false});
      ++i;
    }
  }
  return tokens;
}

bool Is(const std::vector<CodeToken> &t, std::size_t i, std::string_view s) {
  return i < t.size() && t[i].text == s;
}

bool IsIdent(const std::vector<CodeToken> &t, std::size_t i) {
  return i < t.size() && t[i].identifier && IsJavaIdentifier(t[i].text);
}

// Parses a dotted name starting at `i`. Returns the index one past its end
// and stores the last segment.
std::size_t ParseQualifiedName(const std::vector<CodeToken> &t, std::size_t i,
                               std::string_view *last) {
  if (!IsIdent(t, i)) return i;
  *last = t[i].text;
  std::size_t j = i + 1;
  while (Is(t, j, ".") && IsIdent(t, j + 1)) {
    *last = t[j + 1].text;
    j += 2;
  }
  return j;
}

// Skips a balanced <...> type-argument list at `i`, if any. Returns the
// index past it, or npos when `<` does not open a plausible type list.
std::size_t SkipTypeArguments(const std::vector<CodeToken> &t, std::size_t i) {
  if (!Is(t, i, "<")) return i;
  int depth = 0;
  for (std::size_t j = i; j < t.size(); ++j) {
    std::string_view s = t[j].text;
    if (s == "<") {
      ++depth;
    } else if (s == ">") {
      if (--depth == 0) return j + 1;
    } else if (!t[j].identifier && s != "." && s != "," && s != "?" &&
               s != "[" && s != "]" && s != "&") {
      return std::string_view::npos;
    }
  }
  return std::string_view::npos;
}

void ExtractFromSnippet(std::string_view code, std::vector<PType> *out) {
  const std::vector<CodeToken> t = LexCode(code);
  std::unordered_map<std::string_view, std::string_view> declared;

  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i].identifier) continue;
    const bool after_dot = i > 0 && Is(t, i - 1, ".");

    if (t[i].text == "import" && !after_dot) {
      std::size_t j = i + 1;
      if (Is(t, j, "static")) ++j;
      std::vector<std::string_view> segments;
      while (IsIdent(t, j)) {
        segments.push_back(t[j].text);
        if (Is(t, j + 1, ".") && (IsIdent(t, j + 2) || Is(t, j + 2, "*"))) {
          j += 2;
        } else {
          ++j;
          break;
        }
      }
      if (Is(t, j, "*")) ++j;
      if (!Is(t, j, ";") || segments.empty()) continue;
      for (std::string_view segment : segments) {
        if (IsTypeName(segment)) {
          out->push_back({std::string(segment), PTypeOrigin::kImport});
        }
      }
      i = j;
      continue;
    }

    if (t[i].text == "new" && !after_dot) {
      std::string_view last;
      std::size_t j = ParseQualifiedName(t, i + 1, &last);
      if (j != i + 1 && IsTypeName(last) &&
          (Is(t, j, "(") || Is(t, j, "<") || Is(t, j, "["))) {
        out->push_back({std::string(last), PTypeOrigin::kObjectCreation});
      }
      continue;
    }

    if (after_dot) continue;

    // Receiver of a call: v.m( with v declared earlier, or T.m( for a
    // capitalized T.
    if (Is(t, i + 1, ".") && IsIdent(t, i + 2) && Is(t, i + 3, "(")) {
      auto decl = declared.find(t[i].text);
      if (decl != declared.end()) {
        out->push_back(
            {std::string(decl->second), PTypeOrigin::kVariableDeclaration});
        continue;
      }
    }

    // T v = ...
    std::string_view type;
    std::size_t j = ParseQualifiedName(t, i, &type);
    std::size_t k = SkipTypeArguments(t, j);
    if (k != std::string_view::npos && IsTypeName(type)) {
      while (Is(t, k, "[") && Is(t, k + 1, "]")) k += 2;
      if (IsIdent(t, k) && Is(t, k + 1, "=") && !Is(t, k + 2, "=")) {
        out->push_back({std::string(type), PTypeOrigin::kVariableDeclaration});
        declared[t[k].text] = type;
        i = k;
        continue;
      }
    }
  }

  // Static receivers, including the last segment of a qualified receiver.
  for (std::size_t i = 0; i + 3 < t.size(); ++i) {
    if (!t[i].identifier || !IsTypeName(t[i].text)) continue;
    if (declared.count(t[i].text) != 0) continue;
    if (Is(t, i + 1, ".") && IsIdent(t, i + 2) && Is(t, i + 3, "(")) {
      std::size_t start = i;
      while (start >= 2 && Is(t, start - 1, ".") && IsIdent(t, start - 2)) {
        start -= 2;
      }
      // new a.B.C( is an object creation, not a call on B.
      if (start > 0 && Is(t, start - 1, "new")) continue;
      out->push_back({std::string(t[i].text), PTypeOrigin::kStaticReceiver});
    }
  }
}

bool PrefixEndsWithType(const std::optional<std::string> &prefix,
                        std::string_view type) {
  if (!prefix) return false;
  std::string_view p = *prefix;
  std::size_t dot = p.rfind('.');
  std::string_view last = dot == std::string_view::npos ? p : p.substr(dot + 1);
  return last == type;
}

}  // namespace

std::string_view PTypeOriginName(PTypeOrigin origin) {
  switch (origin) {
    case PTypeOrigin::kImport:
      return "import";
    case PTypeOrigin::kObjectCreation:
      return "object-creation";
    case PTypeOrigin::kVariableDeclaration:
      return "variable-declaration";
    case PTypeOrigin::kStaticReceiver:
      return "static-receiver";
  }
  return "unknown";
}

std::vector<ApiMention> ExtractMentions(const Thread &thread,
                                        std::string_view simple_name) {
  std::vector<ApiMention> mentions;
  for (std::size_t p = 0; p < thread.paragraphs.size(); ++p) {
    std::string_view text = thread.paragraphs[p];
    std::vector<TokenSpan> spans = TokenSpans(text);
    for (std::size_t k = 0; k < spans.size(); ++k) {
      const TokenSpan &span = spans[k];
      if (text.substr(span.offset, span.length) != simple_name) continue;
      ApiMention mention;
      mention.thread_id = thread.id;
      mention.paragraph = p;
      mention.token = k;

      // Walk back over ".ident" pairs directly adjacent to the name.
      std::size_t chain_start = span.offset;
      std::size_t cursor = span.offset;
      while (cursor >= 2 && text[cursor - 1] == '.' &&
             IsIdentifierChar(text[cursor - 2])) {
        std::size_t ident_end = cursor - 1;
        std::size_t ident_start = ident_end;
        while (ident_start > 0 && IsIdentifierChar(text[ident_start - 1])) {
          --ident_start;
        }
        if (!IsJavaIdentifier(
                text.substr(ident_start, ident_end - ident_start))) {
          break;
        }
        chain_start = ident_start;
        cursor = ident_start;
      }
      if (chain_start < span.offset) {
        mention.prefix =
            std::string(text.substr(chain_start, span.offset - 1 - chain_start));
      }
      mention.surface = std::string(
          text.substr(chain_start, span.offset + span.length - chain_start));
      mentions.push_back(std::move(mention));
    }
  }
  return mentions;
}

std::vector<PType> ExtractPTypes(
    const std::vector<std::string> &code_snippets) {
  std::vector<PType> ptypes;
  for (const std::string &snippet : code_snippets) {
    ExtractFromSnippet(snippet, &ptypes);
  }
  return ptypes;
}

ThreadScopeContext ThreadScopeContext::Build(const Thread &thread) {
  ThreadScopeContext context;
  for (const std::string &p : thread.paragraphs) {
    for (std::string_view token : TokenViews(p)) {
      context.textual_tokens.emplace(token);
    }
  }
  for (const std::string &tag : thread.tags) {
    for (std::string_view token : TokenViews(tag)) {
      context.textual_tokens.emplace(token);
    }
  }
  for (const std::string &c : thread.code_snippets) {
    for (std::string_view token : TokenViews(c)) {
      context.code_tokens.emplace(token);
    }
  }
  context.ptypes = ExtractPTypes(thread.code_snippets);
  return context;
}

ScoreBreakdown ScoreCandidateBreakdown(const ApiMention &mention,
                                       const ApiMethod &candidate,
                                       const ThreadScopeContext &context) {
  const std::string type = SplitFqn(candidate.fqn).type_name;
  ScoreBreakdown score;
  if (PrefixEndsWithType(mention.prefix, type)) score.mention = 1;
  if (context.textual_tokens.count(type) != 0) score.text = 1;
  if (context.code_tokens.count(type) != 0) score.code_tokens = 1;
  for (const PType &ptype : context.ptypes) {
    if (ptype.name == type) ++score.ptypes;
  }
  return score;
}

int ScoreCandidate(const ApiMention &mention, const std::vector<PType> &ptypes,
                   const ApiMethod &candidate, std::string_view thread_text,
                   const std::vector<std::string> &code_snippets) {
  ThreadScopeContext context;
  for (std::string_view token : TokenViews(thread_text)) {
    context.textual_tokens.emplace(token);
  }
  for (const std::string &c : code_snippets) {
    for (std::string_view token : TokenViews(c)) {
      context.code_tokens.emplace(token);
    }
  }
  context.ptypes = ptypes;
  return ScoreCandidateBreakdown(mention, candidate, context).total();
}

std::string ThreadText(const Thread &thread) {
  std::string text;
  for (const std::string &p : thread.paragraphs) {
    text += p;
    text += '\n';
  }
  for (const std::string &tag : thread.tags) {
    text += tag;
    text += '\n';
  }
  return text;
}

std::vector<CandidateScore> ScoreCandidates(
    const Thread &thread, const ApiMethod &api,
    const std::vector<ApiMethod> &candidates) {
  const std::string simple = SplitFqn(api.fqn).simple_name;
  const std::vector<ApiMention> mentions = ExtractMentions(thread, simple);
  std::vector<CandidateScore> scores;
  scores.reserve(candidates.size());
  if (mentions.empty()) {
    for (const ApiMethod &candidate : candidates) {
      scores.push_back({candidate, 0, 0.0, {}});
    }
    return scores;
  }

  const ThreadScopeContext context = ThreadScopeContext::Build(thread);
  for (const ApiMethod &candidate : candidates) {
    CandidateScore best{candidate, -1, 0.0, {}};
    for (const ApiMention &mention : mentions) {
      ScoreBreakdown b = ScoreCandidateBreakdown(mention, candidate, context);
      if (b.total() > best.raw) {
        best.raw = b.total();
        best.breakdown = b;
      }
    }
    scores.push_back(std::move(best));
  }

  auto [lo, hi] = std::minmax_element(
      scores.begin(), scores.end(),
      [](const CandidateScore &a, const CandidateScore &b) {
        return a.raw < b.raw;
      });
  const int min_raw = lo->raw;
  const int max_raw = hi->raw;
  for (CandidateScore &s : scores) {
    if (max_raw == min_raw) {
      s.normalized = max_raw > 0 ? 1.0 : 0.0;
    } else {
      s.normalized = static_cast<double>(s.raw - min_raw) /
                     static_cast<double>(max_raw - min_raw);
    }
  }
  return scores;
}

double ThreadSyntacticScore(const Thread &thread, const ApiMethod &api,
                            const std::vector<ApiMethod> &candidates) {
  for (const CandidateScore &s : ScoreCandidates(thread, api, candidates)) {
    if (s.candidate.fqn == api.fqn) return s.normalized;
  }
  throw ContractError("API " + api.fqn + " is not among its candidates");
}

std::string ScoreBreakdownRecord(ThreadId thread_id,
                                 const CandidateScore &score) {
  nlohmann::json record = {{"thread_id", thread_id},
                           {"candidate", score.candidate.fqn},
                           {"mention", score.breakdown.mention},
                           {"text", score.breakdown.text},
                           {"code_tokens", score.breakdown.code_tokens},
                           {"ptypes", score.breakdown.ptypes},
                           {"raw", score.raw},
                           {"normalized", score.normalized}};
  return record.dump();
}

}  // namespace threadscope

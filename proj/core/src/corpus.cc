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

#include "threadscope/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>

#include "json.hpp"
#include "threadscope/errors.h"
#include "threadscope/tokenizer.h"

namespace threadscope {
namespace {

using json = nlohmann::json;

constexpr std::string_view kCodeOpen = "<pre><code>";
constexpr std::string_view kCodeClose = "</code></pre>";

std::string DecodeEntities(std::string_view text) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''},
      {"&apos;", '\''}, {"&amp;", '&'}};
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '&') {
      bool matched = false;
      for (const auto &[entity, c] : kEntities) {
        if (text.substr(i, entity.size()) == entity) {
          out.push_back(c);
          i += entity.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// Removes <...> tags whose name starts with a letter, '/' or '!'. A '<' that
// does not open such a tag is kept as text.
std::string StripTags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<' && i + 1 < text.size()) {
      char next = text[i + 1];
      bool opens_tag = next == '/' || next == '!' ||
                       (next >= 'a' && next <= 'z') ||
                       (next >= 'A' && next <= 'Z');
      std::size_t close = text.find('>', i);
      if (opens_tag && close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const char *ws = " \t\r\n\f\v";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

void AppendParagraphs(std::string_view html_text,
                      std::vector<std::string> *paragraphs) {
  std::string text = DecodeEntities(StripTags(html_text));
  std::string current;
  auto flush = [&]() {
    std::string_view trimmed = Trim(current);
    if (!trimmed.empty()) paragraphs->emplace_back(trimmed);
    current.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    if (Trim(line).empty()) {
      flush();
    } else {
      if (!current.empty()) current.push_back('\n');
      current.append(line);
    }
    pos = eol + 1;
  }
  flush();
}

json ParseObject(std::string_view record, std::size_t line) {
  json obj;
  try {
    obj = json::parse(record);
  } catch (const json::parse_error &e) {
    throw IngestionError(line, std::string("invalid record: ") + e.what());
  }
  if (!obj.is_object()) throw IngestionError(line, "record is not an object");
  return obj;
}

std::string RequireString(const json &obj, const char *key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw IngestionError(line, std::string("missing field '") + key + "'");
  }
  if (!it->is_string()) {
    throw IngestionError(line, std::string("field '") + key +
                                   "' is not a string");
  }
  return it->get<std::string>();
}

std::string OptionalString(const json &obj, const char *key,
                           std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw IngestionError(line, std::string("field '") + key +
                                   "' is not a string");
  }
  return it->get<std::string>();
}

template <typename Record, typename Parse>
std::vector<Record> ReadLines(std::istream &in, Parse parse) {
  std::vector<Record> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    records.push_back(parse(line, number));
  }
  return records;
}

bool ContainsToken(std::string_view text, std::string_view token) {
  for (std::string_view t : TokenViews(text)) {
    if (t == token) return true;
  }
  return false;
}

}  // namespace

bool IsJavaIdentifier(std::string_view s) {
  if (s.empty()) return false;
  if (s[0] >= '0' && s[0] <= '9') return false;
  return std::all_of(s.begin(), s.end(), IsIdentifierChar);
}

FqnParts SplitFqn(std::string_view fqn) {
  std::vector<std::string_view> segments;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = fqn.find('.', start);
    std::string_view segment = fqn.substr(
        start, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - start);
    if (!IsJavaIdentifier(segment)) {
      throw MalformedFqnError("malformed fqn '" + std::string(fqn) +
                              "': bad segment '" + std::string(segment) +
                              "'");
    }
    segments.push_back(segment);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (segments.size() < 3) {
    throw MalformedFqnError("malformed fqn '" + std::string(fqn) +
                            "': expected at least 3 segments");
  }
  return {std::string(segments.back()),
          std::string(segments[segments.size() - 2])};
}

Thread ParseThreadRecord(std::string_view record, std::size_t line) {
  json obj = ParseObject(record, line);
  Thread thread;

  auto id = obj.find("id");
  if (id == obj.end()) throw IngestionError(line, "missing field 'id'");
  if (!id->is_number_integer() || id->get<std::int64_t>() <= 0) {
    throw IngestionError(line, "field 'id' is not a positive integer");
  }
  thread.id = id->get<std::int64_t>();
  thread.title = RequireString(obj, "title", line);

  if (auto tags = obj.find("tags"); tags != obj.end() && !tags->is_null()) {
    if (!tags->is_array()) throw IngestionError(line, "'tags' is not an array");
    for (const json &tag : *tags) {
      if (!tag.is_string()) throw IngestionError(line, "non-string tag");
      thread.tags.push_back(tag.get<std::string>());
    }
  }

  std::string body = OptionalString(obj, "body_html", line);
  thread.paragraphs.push_back(thread.title);
  std::size_t pos = 0;
  while (true) {
    std::size_t open = body.find(kCodeOpen, pos);
    std::size_t stray_close = body.find(kCodeClose, pos);
    if (stray_close != std::string::npos &&
        (open == std::string::npos || stray_close < open)) {
      throw IngestionError(line, "malformed markup: unmatched </code></pre>");
    }
    if (open == std::string::npos) {
      AppendParagraphs(std::string_view(body).substr(pos), &thread.paragraphs);
      break;
    }
    AppendParagraphs(std::string_view(body).substr(pos, open - pos),
                     &thread.paragraphs);
    std::size_t code_start = open + kCodeOpen.size();
    std::size_t close = body.find(kCodeClose, code_start);
    if (close == std::string::npos) {
      throw IngestionError(line, "malformed markup: unterminated <pre><code>");
    }
    std::string_view code =
        std::string_view(body).substr(code_start, close - code_start);
    if (code.find(kCodeOpen) != std::string_view::npos) {
      throw IngestionError(line, "malformed markup: nested <pre><code>");
    }
    thread.code_snippets.push_back(DecodeEntities(code));
    pos = close + kCodeClose.size();
  }
  return thread;
}

ApiMethod ParseApiRecord(std::string_view record, std::size_t line) {
  json obj = ParseObject(record, line);
  ApiMethod api;
  api.fqn = RequireString(obj, "fqn", line);
  try {
    SplitFqn(api.fqn);
  } catch (const MalformedFqnError &e) {
    throw IngestionError(line, e.what());
  }
  api.comment = OptionalString(obj, "comment", line);
  api.impl_code = OptionalString(obj, "impl_code", line);
  return api;
}

std::vector<Thread> ReadThreads(std::istream &in) {
  return ReadLines<Thread>(in, ParseThreadRecord);
}

std::vector<ApiMethod> ReadApiDb(std::istream &in) {
  return ReadLines<ApiMethod>(in, ParseApiRecord);
}

std::vector<Thread> LoadThreads(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(0, "cannot open corpus file " + path);
  return ReadThreads(in);
}

std::vector<ApiMethod> LoadApiDb(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(0, "cannot open API database " + path);
  return ReadApiDb(in);
}

Label ParseLabelRecord(std::string_view record, std::size_t line) {
  json obj = ParseObject(record, line);
  Label label;
  auto id = obj.find("thread_id");
  if (id == obj.end() || !id->is_number_integer()) {
    throw IngestionError(line, "missing or non-integer 'thread_id'");
  }
  label.thread_id = id->get<std::int64_t>();
  label.api_fqn = RequireString(obj, "api_fqn", line);
  auto relevant = obj.find("relevant");
  if (relevant == obj.end() || !relevant->is_boolean()) {
    throw IngestionError(line, "missing or non-boolean 'relevant'");
  }
  label.relevant = relevant->get<bool>();
  return label;
}

std::vector<Label> ReadLabels(std::istream &in) {
  return ReadLines<Label>(in, ParseLabelRecord);
}

std::vector<Label> LoadLabels(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(0, "cannot open labels file " + path);
  return ReadLabels(in);
}

std::string LabelToRecord(const Label &label) {
  json obj = {{"thread_id", label.thread_id},
              {"api_fqn", label.api_fqn},
              {"relevant", label.relevant}};
  return obj.dump();
}

std::string ThreadToRecord(ThreadId id, const std::string &title,
                           const std::vector<std::string> &tags,
                           const std::string &body_html) {
  json obj = {{"id", id},
              {"title", title},
              {"tags", tags},
              {"body_html", body_html}};
  return obj.dump();
}

std::string ThreadToNormalizedRecord(const Thread &thread) {
  json obj = {{"id", thread.id},
              {"title", thread.title},
              {"tags", thread.tags},
              {"paragraphs", thread.paragraphs},
              {"code_snippets", thread.code_snippets}};
  return obj.dump();
}

std::string ApiToRecord(const ApiMethod &api) {
  json obj = {{"fqn", api.fqn},
              {"comment", api.comment},
              {"impl_code", api.impl_code}};
  return obj.dump();
}

bool IsPotentialThread(const Thread &thread, std::string_view simple_name) {
  // paragraphs[0] is the title.
  for (const std::string &p : thread.paragraphs) {
    if (ContainsToken(p, simple_name)) return true;
  }
  for (const std::string &c : thread.code_snippets) {
    if (ContainsToken(c, simple_name)) return true;
  }
  return false;
}

std::vector<Thread> FindPotentialThreads(const ApiMethod &api,
                                         const std::vector<Thread> &corpus) {
  const std::string simple = SplitFqn(api.fqn).simple_name;
  std::vector<Thread> result;
  for (const Thread &thread : corpus) {
    if (IsPotentialThread(thread, simple)) result.push_back(thread);
  }
  return result;
}

std::vector<ApiMethod> CandidateSet(const ApiMethod &api,
                                    const std::vector<ApiMethod> &api_db) {
  const std::string simple = SplitFqn(api.fqn).simple_name;
  std::vector<ApiMethod> result;
  bool has_query = false;
  for (const ApiMethod &m : api_db) {
    if (SplitFqn(m.fqn).simple_name != simple) continue;
    if (m.fqn == api.fqn) {
      if (has_query) continue;
      has_query = true;
    }
    result.push_back(m);
  }
  if (!has_query) result.push_back(api);
  std::stable_sort(result.begin(), result.end(),
                   [](const ApiMethod &a, const ApiMethod &b) {
                     return a.fqn < b.fqn;
                   });
  return result;
}

}  // namespace threadscope

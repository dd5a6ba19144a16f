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

// Discussion threads, API methods and the lookups that connect them: which
// threads could mention a method, and which methods compete for a mention.

#ifndef THREADSCOPE_CORPUS_H_
#define THREADSCOPE_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace threadscope {

using ThreadId = std::int64_t;

struct Thread {
  ThreadId id = 0;
  std::string title;
  std::vector<std::string> tags;
  // paragraphs[0] is always the title.
  std::vector<std::string> paragraphs;
  std::vector<std::string> code_snippets;

  bool operator==(const Thread &) const = default;
};

struct ApiMethod {
  std::string fqn;
  std::string comment;
  std::string impl_code;

  bool operator==(const ApiMethod &) const = default;
};

struct ApiMention {
  ThreadId thread_id = 0;
  std::size_t paragraph = 0;
  // Index of the simple-name token within the paragraph's token list.
  std::size_t token = 0;
  std::optional<std::string> prefix;
  std::string surface;

  bool operator==(const ApiMention &) const = default;
};

struct FqnParts {
  std::string simple_name;
  std::string type_name;
};

bool IsJavaIdentifier(std::string_view s);

// Throws MalformedFqnError for fewer than three segments or a segment that is
// not an identifier.
FqnParts SplitFqn(std::string_view fqn);

// Splits a body into code snippets (contents of <pre><code> blocks, in
// order) and paragraphs (the remaining text, tag-stripped, split on blank
// lines). `line` is only used to label errors.
Thread ParseThreadRecord(std::string_view record, std::size_t line = 0);
ApiMethod ParseApiRecord(std::string_view record, std::size_t line = 0);

// Line-delimited readers. Blank lines are skipped; errors carry the 1-based
// line number.
std::vector<Thread> ReadThreads(std::istream &in);
std::vector<ApiMethod> ReadApiDb(std::istream &in);
std::vector<Thread> LoadThreads(const std::string &path);
std::vector<ApiMethod> LoadApiDb(const std::string &path);

// Ground truth: whether a thread refers to an API method.
struct Label {
  ThreadId thread_id = 0;
  std::string api_fqn;
  bool relevant = false;

  bool operator==(const Label &) const = default;
};

// {"thread_id": int, "api_fqn": string, "relevant": bool} per line.
Label ParseLabelRecord(std::string_view record, std::size_t line = 0);
std::vector<Label> ReadLabels(std::istream &in);
std::vector<Label> LoadLabels(const std::string &path);
std::string LabelToRecord(const Label &label);

// Normalized form written by the ingest command.
std::string ThreadToNormalizedRecord(const Thread &thread);
std::string ApiToRecord(const ApiMethod &api);
// Raw corpus record with the body as HTML.
std::string ThreadToRecord(ThreadId id, const std::string &title,
                           const std::vector<std::string> &tags,
                           const std::string &body_html);

// True if `simple_name` is a whole identifier token of the title, a
// paragraph or a code snippet.
bool IsPotentialThread(const Thread &thread, std::string_view simple_name);

std::vector<Thread> FindPotentialThreads(const ApiMethod &api,
                                         const std::vector<Thread> &corpus);

// Methods sharing `api`'s simple name, sorted by fqn, always including `api`.
std::vector<ApiMethod> CandidateSet(const ApiMethod &api,
                                    const std::vector<ApiMethod> &api_db);

}  // namespace threadscope

#endif  // THREADSCOPE_CORPUS_H_

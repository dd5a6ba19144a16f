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

#include "threadscope/synth.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "threadscope/errors.h"
#include "threadscope/random.h"

namespace threadscope {
namespace {

constexpr const char *kSyllables[] = {
    "ba", "ko", "ri", "zu", "me", "la", "to", "ni", "su", "fe", "go", "pa",
    "vi", "du", "ke", "mo", "ra", "ti", "no", "xe", "ja", "lu", "we", "ci"};

constexpr const char *kFiller[] = {
    "the",   "this",  "when",   "value",   "works",   "how",    "why",
    "use",   "code",  "data",   "return",  "object",  "string", "null",
    "example", "question", "problem", "trying", "get",  "need",   "issue",
    "after", "before", "using", "with",    "from",    "into",   "here",
    "there", "what",  "some",   "want",    "like",    "charm",  "thanks",
    "still", "wrong", "again",  "right",   "simple"};

constexpr const char *kTypeSuffixes[] = {"Matcher", "Builder", "Stubbing",
                                         "Factory", "Helper",  "Manager",
                                         "Service", "Reader"};

constexpr int kVocabularySize = 10;

class Namer {
 public:
  explicit Namer(Rng *rng) : rng_(rng) {
    for (const char *w : kFiller) used_.insert(w);
  }

  std::string Word(int syllables = 3) {
    while (true) {
      std::string w;
      for (int i = 0; i < syllables; ++i) {
        w += kSyllables[rng_->Below(std::size(kSyllables))];
      }
      if (used_.insert(w).second) return w;
    }
  }

  static std::string Capitalize(std::string w) {
    w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }

  std::string TypeName() {
    return Capitalize(Word(2)) +
           kTypeSuffixes[rng_->Below(std::size(kTypeSuffixes))];
  }

  std::string MethodName() { return Word(2) + Capitalize(Word(2)); }

 private:
  Rng *rng_;
  std::set<std::string> used_;
};

struct SynthApi {
  ApiMethod method;
  std::string type;
  std::string package;
  std::vector<std::string> vocabulary;
};

std::string Pick(Rng &rng, const std::vector<std::string> &words) {
  return words[rng.Below(words.size())];
}

std::string HtmlEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

SynthApi MakeApi(Namer &namer, Rng &rng, const std::string &simple_name) {
  SynthApi api;
  api.package = "com." + namer.Word(2) + "." + namer.Word(2);
  api.type = namer.TypeName();
  for (int k = 0; k < kVocabularySize; ++k) {
    api.vocabulary.push_back(namer.Word());
  }
  api.method.fqn = api.package + "." + api.type + "." + simple_name;

  std::string comment;
  for (int k = 0; k < 10; ++k) {
    if (k > 0) comment += ' ';
    comment += Pick(rng, api.vocabulary);
  }
  comment[0] = static_cast<char>(comment[0] - 'a' + 'A');
  api.method.comment = comment + ".";

  const auto &v = api.vocabulary;
  api.method.impl_code = Pick(rng, v) + " " + Pick(rng, v) + " = " +
                         Pick(rng, v) + "." + Pick(rng, v) + "(" +
                         Pick(rng, v) + ");\nreturn " + Pick(rng, v) + "." +
                         Pick(rng, v) + "();";
  return api;
}

class WordSource {
 public:
  WordSource(Rng *rng, const std::vector<std::string> *vocabulary,
             double semantic_signal)
      : rng_(rng), vocabulary_(vocabulary), signal_(semantic_signal) {}

  std::string Next() {
    if (rng_->Bernoulli(signal_)) return Pick(*rng_, *vocabulary_);
    return kFiller[rng_->Below(std::size(kFiller))];
  }

  std::string Words(int n) {
    std::string out;
    for (int k = 0; k < n; ++k) {
      if (k > 0) out += ' ';
      out += Next();
    }
    return out;
  }

 private:
  Rng *rng_;
  const std::vector<std::string> *vocabulary_;
  double signal_;
};

struct ThreadDraft {
  std::string title;
  std::vector<std::string> paragraphs;
  std::vector<std::string> snippets;
};

ThreadDraft DraftThread(Rng &rng, const SynthApi &referent,
                        const std::string &simple_name, bool type_present,
                        double semantic_signal) {
  WordSource words(&rng, &referent.vocabulary, semantic_signal);
  ThreadDraft d;
  d.title = words.Words(6);

  const bool prefixed = type_present && rng.Bernoulli(0.5);
  const std::string mention =
      prefixed ? referent.type + "." + simple_name : simple_name;
  d.paragraphs.push_back(words.Words(5) + " " + mention + " " +
                         words.Words(5));
  std::string second = words.Words(8);
  if (type_present && !prefixed) second += " with " + referent.type;
  d.paragraphs.push_back(second + " " + words.Words(3));

  std::string call;
  const std::string arg = words.Next();
  if (type_present) {
    switch (rng.Below(3)) {
      case 0:
        call = referent.type + " obj = new " + referent.type + "();\nobj." +
               simple_name + "(" + arg + ");";
        break;
      case 1:
        call = referent.type + "." + simple_name + "(" + arg + ");";
        break;
      default:
        call = "import " + referent.package + "." + referent.type +
               ";\n\nholder." + simple_name + "(" + arg + ");";
        break;
    }
  } else {
    call = words.Next() + "()." + simple_name + "(" + arg + ");";
  }
  d.snippets.push_back(call + "\nint " + words.Next() + " = " + words.Next() +
                       "." + words.Next() + "();");
  if (rng.Bernoulli(0.5)) {
    d.snippets.push_back(words.Next() + "." + words.Next() + "(" +
                         words.Next() + ", " + words.Next() + ");");
  }
  return d;
}

std::string RenderBody(const ThreadDraft &d) {
  std::string body = "<p>" + d.paragraphs[0] + "</p>\n\n<pre><code>" +
                     HtmlEscape(d.snippets[0]) + "</code></pre>\n\n<p>" +
                     d.paragraphs[1] + "</p>";
  for (std::size_t k = 1; k < d.snippets.size(); ++k) {
    body += "\n\n<pre><code>" + HtmlEscape(d.snippets[k]) + "</code></pre>";
  }
  return body;
}

void CheckProbability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ContractError(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

SynthCorpus Generate(const SynthSpec &spec) {
  if (spec.n_apis <= 0 || spec.n_threads_per_api <= 0 || spec.ambiguity <= 0) {
    throw ContractError("synthetic corpus counts must be positive");
  }
  CheckProbability(spec.syntactic_signal, "syntactic_signal");
  CheckProbability(spec.semantic_signal, "semantic_signal");

  Rng rng(spec.seed);
  Namer namer(&rng);
  SynthCorpus out;
  ThreadId next_id = 1;

  for (int i = 0; i < spec.n_apis; ++i) {
    const std::string simple_name = namer.MethodName();
    std::vector<SynthApi> family;
    family.push_back(MakeApi(namer, rng, simple_name));
    for (int j = 0; j < spec.ambiguity; ++j) {
      family.push_back(MakeApi(namer, rng, simple_name));
    }
    out.targets.push_back(family[0].method);
    for (const SynthApi &api : family) {
      out.api_db.push_back(api.method);
      out.api_records.push_back(ApiToRecord(api.method));
    }

    for (int k = 0; k < spec.n_threads_per_api; ++k) {
      const bool about_target = k % 2 == 0;
      const SynthApi &referent =
          about_target ? family[0] : family[1 + (k / 2) % spec.ambiguity];
      const bool type_present =
          about_target ? rng.Bernoulli(spec.syntactic_signal) : true;
      ThreadDraft d = DraftThread(rng, referent, simple_name, type_present,
                                  spec.semantic_signal);
      const ThreadId id = next_id++;
      const std::vector<std::string> tags = {"java", "unit-testing"};
      std::string record = ThreadToRecord(id, d.title, tags, RenderBody(d));
      out.threads.push_back(ParseThreadRecord(record));
      out.corpus_records.push_back(std::move(record));
      for (const SynthApi &api : family) {
        Label label{id, api.method.fqn, &api == &referent};
        out.labels.push_back(label);
        out.label_records.push_back(LabelToRecord(label));
      }
    }
  }
  return out;
}

void WriteSynthCorpus(const SynthCorpus &corpus, const std::string &dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string &name,
                   const std::vector<std::string> &lines) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const std::string &line : lines) out << line << '\n';
  };
  write("corpus.jsonl", corpus.corpus_records);
  write("api_db.jsonl", corpus.api_records);
  write("labels.jsonl", corpus.label_records);
}

}  // namespace threadscope

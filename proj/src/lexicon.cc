// Copyright 2026 The ScriptWriter Authors.
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

#include "scriptwriter/lexicon.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "scriptwriter/error.h"

namespace scriptwriter {
namespace {

constexpr char kStage[] = "lexicon";

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Yields (key, value) for every non-comment line; value defaults to key.
std::vector<std::pair<std::string, std::string>> ReadPairs(const std::filesystem::path &file,
                                                           bool required) {
  std::vector<std::pair<std::string, std::string>> out;
  std::ifstream in(file);
  if (!in) {
    if (required) {
      throw Error(ErrorKind::kIo, kStage, "cannot read word list " + file.string());
    }
    return out;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    std::string rest;
    std::getline(fields, rest);
    rest = Trim(rest);
    for (char &c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.emplace_back(key, rest.empty() ? key : rest);
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> ReadWordMap(const std::filesystem::path &file, bool required) {
  std::map<std::string, std::string> out;
  for (auto &[k, v] : ReadPairs(file, required)) out[k] = v;
  return out;
}

std::set<std::string> ReadWordSet(const std::filesystem::path &file, bool required) {
  std::set<std::string> out;
  for (auto &[k, v] : ReadPairs(file, required)) out.insert(k);
  return out;
}

std::string ReadFile(const std::filesystem::path &file, std::string_view stage) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, std::string(stage), "cannot read " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Lexicon Lexicon::Load(const std::filesystem::path &dir) {
  Lexicon lex;
  lex.stop_words = ReadWordSet(dir / "stopwords.txt");
  lex.determiners = ReadWordSet(dir / "determiners.txt");
  lex.verb_lemmas = ReadWordMap(dir / "verbs.txt");
  lex.be_forms = ReadWordSet(dir / "be.txt");
  lex.noun_lemmas = ReadWordMap(dir / "nouns.txt", /*required=*/false);
  lex.prepositions = ReadWordMap(dir / "prepositions.txt");
  lex.pronouns = ReadWordMap(dir / "pronouns.txt");
  lex.genders = ReadWordMap(dir / "genders.txt");
  lex.adjectives = ReadWordMap(dir / "adjectives.txt");
  lex.conjunctions = ReadWordSet(dir / "conjunctions.txt", /*required=*/false);
  for (const auto &be : lex.be_forms) lex.verb_lemmas.emplace(be, "be");
  return lex;
}

bool Lexicon::IsClosedClass(const std::string &w) const {
  return determiners.count(w) || prepositions.count(w) || pronouns.count(w) ||
         be_forms.count(w) || conjunctions.count(w);
}

std::string Lexicon::Lemma(const std::string &w) const {
  if (auto it = verb_lemmas.find(w); it != verb_lemmas.end()) return it->second;
  if (auto it = noun_lemmas.find(w); it != noun_lemmas.end()) return it->second;
  return w;
}

std::string Lexicon::GenderOf(const std::string &noun) const {
  auto it = genders.find(noun);
  return it == genders.end() ? "inanimate" : it->second;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    while (!current.empty() && (current.back() == '-' || current.back() == '\'')) {
      current.pop_back();
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if ((c == '-' || c == '\'') && !current.empty()) {
      current.push_back(static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?') {
      if (!Tokenize(current).empty()) out.push_back(Trim(current));
      current.clear();
    } else {
      current.push_back(c == '\n' || c == '\r' || c == '\t' ? ' ' : c);
    }
  }
  if (!Tokenize(current).empty()) out.push_back(Trim(current));
  return out;
}

}  // namespace scriptwriter

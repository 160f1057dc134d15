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

#ifndef SCRIPTWRITER_LEXICON_H_
#define SCRIPTWRITER_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace scriptwriter {

// Closed-class word lists and lemma tables, loaded from plain-text files in a
// lexicon directory. Every file is "word" or "word<whitespace>value" per line;
// '#' starts a comment.
struct Lexicon {
  std::set<std::string> stop_words;
  std::set<std::string> determiners;
  std::map<std::string, std::string> verb_lemmas;  // surface form -> lemma
  std::set<std::string> be_forms;
  std::map<std::string, std::string> noun_lemmas;  // plural -> singular
  std::map<std::string, std::string> prepositions;  // word -> role (location, ...)
  std::map<std::string, std::string> pronouns;      // word -> gender marker
  std::map<std::string, std::string> genders;       // noun -> gender marker
  std::map<std::string, std::string> adjectives;    // adjective -> attribute type
  std::set<std::string> conjunctions;

  static Lexicon Load(const std::filesystem::path &dir);

  bool IsVerb(const std::string &w) const { return verb_lemmas.count(w) > 0; }
  bool IsBe(const std::string &w) const { return be_forms.count(w) > 0; }
  bool IsClosedClass(const std::string &w) const;
  std::string Lemma(const std::string &w) const;
  // Gender marker of a noun; unlisted nouns are inanimate.
  std::string GenderOf(const std::string &noun) const;
};

// Lowercased word tokens; punctuation other than intra-word '-' and '\'' is
// dropped.
std::vector<std::string> Tokenize(std::string_view text);

// Splits on '.', '!' and '?'; empty sentences are dropped.
std::vector<std::string> SplitSentences(std::string_view text);

// Reads "key value" word-list files. Missing optional files yield empty maps.
std::map<std::string, std::string> ReadWordMap(const std::filesystem::path &file,
                                               bool required = true);
std::set<std::string> ReadWordSet(const std::filesystem::path &file, bool required = true);

std::string ReadFile(const std::filesystem::path &file, std::string_view stage);

}  // namespace scriptwriter

#endif  // SCRIPTWRITER_LEXICON_H_

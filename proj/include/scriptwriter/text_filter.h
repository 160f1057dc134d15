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

#ifndef SCRIPTWRITER_TEXT_FILTER_H_
#define SCRIPTWRITER_TEXT_FILTER_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scriptwriter/lexicon.h"
#include "scriptwriter/ontology.h"

namespace scriptwriter::text {

using ontology::Term;

inline constexpr char kUnknownActor[] = "UNKNOWN";
// Action of copular and existential sentences; a state, not a concept.
inline constexpr char kCopula[] = "be";

struct Attribute {
  Term term;         // what the attribute describes
  Term value;        // fuzzy attribute word, e.g. "blue", "fast"
  std::string type;  // attribute type from the lexicon, e.g. "color"
  friend bool operator==(const Attribute &, const Attribute &) = default;
};

// Active actor / action / passive actor frame of one clause.
struct UniversalStructure {
  std::optional<Term> active_actor;   // nullopt: UNKNOWN (passive voice, existential)
  Term action;
  std::optional<Term> passive_actor;  // nullopt: NONE
  std::vector<Attribute> attributes;
  std::optional<Term> location;
  // Surface pronoun (or "" for an omitted subject) -> resolved referent.
  std::vector<std::pair<std::string, Term>> resolutions;

  // Every concrete term: actors, action (unless copular), location and
  // attribute values.
  std::set<Term> Terms() const;

  friend bool operator==(const UniversalStructure &a, const UniversalStructure &b) {
    return a.active_actor == b.active_actor && a.action == b.action &&
           a.passive_actor == b.passive_actor && a.attributes == b.attributes &&
           a.location == b.location;
  }
};

std::string ToString(const UniversalStructure &s);

struct ParseOptions {
  // Number of prior clauses a pronoun may reach back to.
  std::size_t context_horizon = 2;
};

// Rule cascade over the lexicon. `context` holds earlier clauses, oldest
// first. Throws kUnparseableSentence (carrying the raw text) when no verb is
// found.
UniversalStructure ParseSentence(const std::string &text,
                                 std::span<const UniversalStructure> context,
                                 const Lexicon &lexicon, const ParseOptions &options = {});

struct ParsedClause {
  std::size_t sentence_index = 0;
  std::string text;
  std::vector<std::string> tokens;
  UniversalStructure structure;
};

struct ParseFailure {
  std::size_t sentence_index = 0;
  std::string text;
  std::string message;
};

struct ParsedText {
  std::vector<ParsedClause> clauses;
  std::vector<ParseFailure> failures;
};

// Splits `text` into sentences and conjoined clauses ("takes the ball and
// kicks it") and parses them in order, each clause seeing the earlier ones
// as context. Unparseable sentences are reported, not thrown.
ParsedText ParseText(const std::string &text, const Lexicon &lexicon,
                     const ParseOptions &options = {});

// Clause token lists of one sentence.
std::vector<std::vector<std::string>> SplitClauses(const std::vector<std::string> &tokens,
                                                   const Lexicon &lexicon);

struct MentalSpace {
  std::size_t sentence_index = 0;
  UniversalStructure structure;
  std::set<Term> anchored;
  std::set<Term> expanded;
  ontology::OntologyGraph subgraph;
};

struct SpaceOptions {
  std::set<std::string> relations;  // labels expansion may follow
  int depth = 1;
  std::vector<ontology::RewriteRule> rules;
};

// Anchors the structure's terms in the ontology and expands around them.
// Throws kVocabularyGap listing every term missing from the graph.
MentalSpace BuildMentalSpace(const UniversalStructure &structure, std::size_t sentence_index,
                             const ontology::OntologyGraph &graph, const SpaceOptions &options);

}  // namespace scriptwriter::text

#endif  // SCRIPTWRITER_TEXT_FILTER_H_

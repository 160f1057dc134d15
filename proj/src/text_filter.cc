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

#include "scriptwriter/text_filter.h"

#include <algorithm>

#include "scriptwriter/error.h"

namespace scriptwriter::text {
namespace {

constexpr char kStage[] = "text";

struct NounPhrase {
  Term head;
  std::vector<std::string> adjectives;
  std::string preposition;  // empty when the phrase is not governed by one
  std::string pronoun;      // surface pronoun, empty for a noun
};

struct Region {
  std::vector<NounPhrase> phrases;
  std::vector<std::string> loose_adjectives;
  bool existential = false;
};

bool IsNounLike(const std::string &w, const Lexicon &lex) {
  return !lex.stop_words.count(w) && !lex.IsClosedClass(w) && !lex.adjectives.count(w) &&
         !lex.IsVerb(w) && w != "there";
}

// Pronouns directly followed by a noun or adjective are possessive
// determiners ("her hand").
bool IsDeterminerUse(const std::vector<std::string> &tokens, std::size_t i, const Lexicon &lex) {
  if (i + 1 >= tokens.size()) return false;
  const auto &next = tokens[i + 1];
  return lex.adjectives.count(next) > 0 || IsNounLike(next, lex);
}

Region ChunkRegion(const std::vector<std::string> &tokens, std::size_t begin, std::size_t end,
                   const Lexicon &lex) {
  Region region;
  std::string prep;
  std::vector<std::string> adjectives;
  for (std::size_t i = begin; i < end; ++i) {
    const auto &w = tokens[i];
    if (w == "there" && region.phrases.empty()) {
      region.existential = true;
    } else if (lex.determiners.count(w)) {
      continue;
    } else if (lex.prepositions.count(w)) {
      prep = w;
    } else if (lex.pronouns.count(w)) {
      if (IsDeterminerUse(tokens, i, lex) && i + 1 < end) continue;
      region.phrases.push_back({"", {}, prep, w});
      prep.clear();
    } else if (lex.adjectives.count(w)) {
      adjectives.push_back(w);
    } else if (IsNounLike(w, lex)) {
      // Noun compounds keep the last noun as head.
      const Term head = lex.Lemma(w);
      if (i + 1 < end && IsNounLike(tokens[i + 1], lex)) continue;
      region.phrases.push_back({head, std::move(adjectives), prep, ""});
      adjectives.clear();
      prep.clear();
    }
  }
  region.loose_adjectives = std::move(adjectives);
  return region;
}

std::optional<Term> Resolve(const std::string &pronoun,
                            std::span<const UniversalStructure> context, const Lexicon &lex,
                            const ParseOptions &options, bool actors_only_active) {
  const std::string marker = pronoun.empty() ? "any" : lex.pronouns.at(pronoun);
  const std::size_t horizon = std::min(options.context_horizon, context.size());
  for (std::size_t back = 0; back < horizon; ++back) {
    const auto &s = context[context.size() - 1 - back];
    std::vector<Term> candidates;
    if (s.active_actor) candidates.push_back(*s.active_actor);
    if (s.passive_actor && !actors_only_active) candidates.push_back(*s.passive_actor);
    for (const auto &c : candidates) {
      if (marker == "any" || lex.GenderOf(c) == marker) return c;
    }
  }
  return std::nullopt;
}

std::vector<Attribute> AttributesOf(const Term &term, const std::vector<std::string> &adjectives,
                                    const Lexicon &lex) {
  std::vector<Attribute> out;
  for (const auto &a : adjectives) out.push_back({term, a, lex.adjectives.at(a)});
  return out;
}

UniversalStructure ParseTokens(const std::vector<std::string> &tokens, const std::string &raw,
                               std::span<const UniversalStructure> context, const Lexicon &lex,
                               const ParseOptions &options) {
  std::optional<std::size_t> verb;
  std::optional<std::size_t> copula;
  std::size_t subject_end = 0;
  bool passive = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto &w = tokens[i];
    if (lex.IsBe(w)) {
      if (i + 1 < tokens.size() && lex.IsVerb(tokens[i + 1]) && !lex.IsBe(tokens[i + 1])) {
        passive = true;
        verb = i + 1;
        subject_end = i;
        break;
      }
      if (!copula) copula = i;
      continue;
    }
    if (!lex.IsVerb(w)) continue;
    // A verb form right after a determiner or adjective is used as a noun.
    if (i > 0 && (lex.determiners.count(tokens[i - 1]) || lex.adjectives.count(tokens[i - 1]))) {
      continue;
    }
    verb = i;
    subject_end = i;
    break;
  }
  if (!verb && copula) {
    verb = copula;
    subject_end = *copula;
  }
  if (!verb) {
    throw Error(ErrorKind::kUnparseableSentence, kStage, "no verb found in sentence: \"" + raw + "\"");
  }

  UniversalStructure s;
  s.action = lex.Lemma(tokens[*verb]);
  Region subject = ChunkRegion(tokens, 0, subject_end, lex);
  Region object = ChunkRegion(tokens, *verb + 1, tokens.size(), lex);

  std::optional<NounPhrase> subject_np;
  if (!subject.phrases.empty()) subject_np = subject.phrases.back();

  auto head_of = [&](const NounPhrase &np) -> std::optional<Term> {
    if (np.pronoun.empty()) return np.head;
    auto ref = Resolve(np.pronoun, context, lex, options, false);
    if (ref) s.resolutions.emplace_back(np.pronoun, *ref);
    return ref;
  };

  std::optional<Term> surface_subject;
  if (subject_np) {
    surface_subject = head_of(*subject_np);
    if (surface_subject) {
      auto attrs = AttributesOf(*surface_subject, subject_np->adjectives, lex);
      s.attributes.insert(s.attributes.end(), attrs.begin(), attrs.end());
    }
  } else if (!subject.existential) {
    // Omitted subject of a conjoined clause: reuse the latest active actor.
    if (auto ref = Resolve("", context, lex, options, true)) {
      surface_subject = ref;
      s.resolutions.emplace_back("", *ref);
    }
  }

  for (const auto &np : object.phrases) {
    auto head = head_of(np);
    if (!head) continue;
    const auto role_it = lex.prepositions.find(np.preposition);
    const std::string role = role_it == lex.prepositions.end() ? "" : role_it->second;
    bool used = false;
    if (role == "location" && !s.location) {
      s.location = head;
      used = true;
    } else if (role == "agent" && passive && !s.active_actor) {
      s.active_actor = head;
      used = true;
    } else if (role != "location" && role != "agent" && !s.passive_actor) {
      s.passive_actor = head;
      used = true;
    }
    if (used) {
      auto attrs = AttributesOf(*head, np.adjectives, lex);
      s.attributes.insert(s.attributes.end(), attrs.begin(), attrs.end());
    }
  }

  if (passive) {
    s.passive_actor = surface_subject;
  } else if (subject.existential) {
    s.active_actor.reset();
  } else {
    s.active_actor = surface_subject;
  }

  // Predicate adjectives describe the subject of a copula, otherwise the action.
  const Term loose_target =
      s.action == "be" && surface_subject ? *surface_subject : s.action;
  for (const auto &a : object.loose_adjectives) {
    s.attributes.push_back({loose_target, a, lex.adjectives.at(a)});
  }
  return s;
}

}  // namespace

std::set<Term> UniversalStructure::Terms() const {
  std::set<Term> out;
  if (action != kCopula) out.insert(action);
  if (active_actor) out.insert(*active_actor);
  if (passive_actor) out.insert(*passive_actor);
  if (location) out.insert(*location);
  for (const auto &a : attributes) {
    out.insert(a.term);
    out.insert(a.value);
  }
  return out;
}

std::string ToString(const UniversalStructure &s) {
  std::string out = "(" + s.active_actor.value_or(kUnknownActor) + ", " + s.action + ", " +
                    s.passive_actor.value_or("NONE") + ", [";
  for (std::size_t i = 0; i < s.attributes.size(); ++i) {
    out += (i ? ", (" : "(") + s.attributes[i].term + ", " + s.attributes[i].value + ")";
  }
  out += "], location=" + s.location.value_or("NONE") + ")";
  return out;
}

UniversalStructure ParseSentence(const std::string &text,
                                 std::span<const UniversalStructure> context,
                                 const Lexicon &lexicon, const ParseOptions &options) {
  const auto tokens = Tokenize(text);
  if (tokens.empty()) {
    throw Error(ErrorKind::kUnparseableSentence, kStage, "empty sentence: \"" + text + "\"");
  }
  return ParseTokens(tokens, text, context, lexicon, options);
}

std::vector<std::vector<std::string>> SplitClauses(const std::vector<std::string> &tokens,
                                                   const Lexicon &lexicon) {
  std::vector<std::vector<std::string>> clauses;
  std::vector<std::string> current;
  bool seen_verb = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto &w = tokens[i];
    const bool next_is_verb = i + 1 < tokens.size() && lexicon.IsVerb(tokens[i + 1]);
    if (lexicon.conjunctions.count(w) && seen_verb && next_is_verb) {
      clauses.push_back(std::move(current));
      current.clear();
      seen_verb = false;
      continue;
    }
    if (lexicon.IsVerb(w)) seen_verb = true;
    current.push_back(w);
  }
  if (!current.empty()) clauses.push_back(std::move(current));
  return clauses;
}

ParsedText ParseText(const std::string &text, const Lexicon &lexicon,
                     const ParseOptions &options) {
  ParsedText out;
  std::vector<UniversalStructure> context;
  const auto sentences = SplitSentences(text);
  for (std::size_t index = 0; index < sentences.size(); ++index) {
    const auto tokens = Tokenize(sentences[index]);
    const auto clauses = SplitClauses(tokens, lexicon);
    std::vector<ParsedClause> parsed;
    try {
      auto local = context;
      for (const auto &clause : clauses) {
        auto s = ParseTokens(clause, sentences[index], local, lexicon, options);
        local.push_back(s);
        parsed.push_back({index, sentences[index], clause, std::move(s)});
      }
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kUnparseableSentence) throw;
      out.failures.push_back({index, sentences[index], e.what()});
      continue;
    }
    for (auto &p : parsed) {
      context.push_back(p.structure);
      out.clauses.push_back(std::move(p));
    }
  }
  return out;
}

MentalSpace BuildMentalSpace(const UniversalStructure &structure, std::size_t sentence_index,
                             const ontology::OntologyGraph &graph, const SpaceOptions &options) {
  const auto terms = structure.Terms();
  std::string missing;
  for (const auto &t : terms) {
    if (!graph.HasNode(t)) missing += (missing.empty() ? "" : ", ") + t;
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kVocabularyGap, kStage,
                "terms missing from the ontology: " + missing + " (in " + ToString(structure) +
                    ")");
  }
  auto expansion = ontology::Expand(graph, terms, options.relations, options.depth, options.rules);
  MentalSpace space;
  space.sentence_index = sentence_index;
  space.structure = structure;
  space.anchored = std::move(expansion.anchored);
  space.expanded = std::move(expansion.expanded);
  space.subgraph = std::move(expansion.subgraph);
  return space;
}

}  // namespace scriptwriter::text

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

#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.h"
#include "scriptwriter/error.h"
#include "scriptwriter/ontology.h"
#include "scriptwriter/text_filter.h"

namespace scriptwriter::text {
namespace {

using testing::DemoLexicon;

UniversalStructure Parse(const std::string &s, std::span<const UniversalStructure> ctx = {}) {
  return ParseSentence(s, ctx, DemoLexicon());
}

TEST_CASE("gold parses") {
  std::ifstream in(testing::TestDataDir() / "gold_parses.json");
  const auto gold = nlohmann::json::parse(in);
  for (const auto &item : gold) {
    const auto text = item["text"].get<std::string>();
    const auto parsed = ParseText(text, DemoLexicon());
    CAPTURE(text);
    CHECK(parsed.failures.empty());
    REQUIRE(parsed.clauses.size() == item["clauses"].size());
    for (std::size_t i = 0; i < parsed.clauses.size(); ++i) {
      CHECK(ToString(parsed.clauses[i].structure) == item["clauses"][i].get<std::string>());
    }
  }
}

TEST_CASE("demo sentence one") {
  const auto s = Parse("A woman walks on the beach.");
  CHECK(s.active_actor == "woman");
  CHECK(s.action == "walk");
  CHECK_FALSE(s.passive_actor.has_value());
  CHECK(s.location == "beach");
  CHECK(s.Terms() == std::set<std::string>{"woman", "walk", "beach"});
}

TEST_CASE("passive voice without an agent has an UNKNOWN actor") {
  const auto s = Parse("The blue ball was left on the beach.");
  CHECK_FALSE(s.active_actor.has_value());
  CHECK(s.action == "leave");
  CHECK(s.passive_actor == "ball");
  REQUIRE(s.attributes.size() == 1);
  CHECK(s.attributes[0].term == "ball");
  CHECK(s.attributes[0].value == "blue");
  CHECK(s.attributes[0].type == "color");
  CHECK(ToString(s).find("UNKNOWN") != std::string::npos);
}

TEST_CASE("pronouns resolve through recent context by gender") {
  const std::vector<UniversalStructure> ctx{Parse("A woman walks on the beach."),
                                            Parse("The blue ball was left on the beach.")};
  const auto she = Parse("She kicks the ball.", ctx);
  CHECK(she.active_actor == "woman");
  REQUIRE(she.resolutions.size() == 1);
  CHECK(she.resolutions[0] == std::pair<std::string, std::string>{"she", "woman"});
  const auto it = Parse("The woman takes it.", ctx);
  CHECK(it.passive_actor == "ball");

  // A pronoun with no compatible antecedent within the horizon is dropped.
  const auto he = Parse("He kicks the ball.", ctx);
  CHECK_FALSE(he.active_actor.has_value());

  const std::vector<UniversalStructure> far{Parse("A man walks."), Parse("The dog runs."),
                                            Parse("The sun shines.")};
  CHECK_FALSE(Parse("He sits on the sand.", far).active_actor.has_value());
  const std::vector<UniversalStructure> near{Parse("A man walks."), Parse("The dog runs.")};
  CHECK(ParseSentence("He sits on the sand.", near, DemoLexicon(), {2}).active_actor == "man");
}

TEST_CASE("unparseable input") {
  auto kind = [](const std::string &s) {
    try {
      Parse(s);
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::kParse;
  };
  CHECK(kind("") == ErrorKind::kUnparseableSentence);
  CHECK(kind("The quiet beach") == ErrorKind::kUnparseableSentence);

  const auto parsed = ParseText("A woman walks. The quiet beach. She sits.", DemoLexicon());
  CHECK(parsed.clauses.size() == 2);
  REQUIRE(parsed.failures.size() == 1);
  CHECK(parsed.failures[0].sentence_index == 1);
  CHECK(parsed.clauses[1].structure.active_actor == "woman");
}

TEST_CASE("clauses split only at a conjunction followed by a verb") {
  const auto lex = DemoLexicon();
  CHECK(SplitClauses(Tokenize("she takes the ball and kicks it"), lex).size() == 2);
  CHECK(SplitClauses(Tokenize("the woman and the man walk"), lex).size() == 1);
  CHECK(SplitClauses(Tokenize("the sky and the ocean are blue"), lex).size() == 1);
}

TEST_CASE("mental spaces") {
  const auto graph = ontology::BuildFromCorpus(
      ontology::LoadCorpusDir(testing::DataDir() / "demo" / "corpus"), DemoLexicon(),
      ontology::LoadRelationLexicon(testing::DataDir() / "demo" / "relations.tsv"));
  const auto s = Parse("The blue ball was left on the beach.");
  const auto space = BuildMentalSpace(s, 1, graph, {{"is-a", "near"}, 1, {}});
  CHECK(space.sentence_index == 1);
  CHECK(space.anchored == std::set<std::string>{"ball", "beach", "blue", "leave"});
  CHECK(space.expanded.count("color") == 1);
  CHECK(space.expanded.count("ocean") == 1);
  for (const auto &t : space.anchored) CHECK(space.subgraph.HasNode(t));

  const auto gap = Parse("The unicorn flies over the rainbow.");
  try {
    BuildMentalSpace(gap, 0, graph, {});
    FAIL("expected a vocabulary gap");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kVocabularyGap);
    CHECK(std::string(e.what()).find("rainbow, unicorn") != std::string::npos);
  }
}

}  // namespace
}  // namespace scriptwriter::text

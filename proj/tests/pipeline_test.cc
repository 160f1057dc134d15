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

#include <chrono>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.h"
#include "scriptwriter/error.h"
#include "scriptwriter/pipeline.h"

namespace scriptwriter {
namespace {

using testing::DataDir;

const char kDemo[] =
    "A woman walks on the beach. The blue ball was left on the beach. A woman takes this ball.";

PipelineConfig Demo() { return PipelineConfig::Load(DataDir() / "demo" / "demo.conf"); }

Error ErrorOf(const PipelineConfig &config, const std::string &text) {
  try {
    RunPipeline(config, config.corpus, text);
  } catch (const Error &e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorKind::kParse, "", "");
}

TEST_CASE("config parsing") {
  const auto c = Demo();
  CHECK(c.dim == 512);
  CHECK(c.seed == 42);
  CHECK(c.expand_relations == std::set<std::string>{"is-a"});
  CHECK(c.lexicon_dir == (DataDir() / "lexicon").lexically_normal());
  CHECK(c.ontology == DataDir() / "demo" / "demo.graph");

  const auto d = PipelineConfig::Parse("# only comments\n\n", "/base");
  CHECK(d.threshold == 0.05);
  CHECK(d.max_path == 3);
  CHECK(d.lambda == 0.5);
  CHECK(d.base_decay == 10.0);

  auto kind_and_message = [](const std::string &text) {
    try {
      PipelineConfig::Parse(text, "/");
    } catch (const Error &e) {
      return std::string(ErrorKindName(e.kind())) + " " + e.what();
    }
    return std::string("ok");
  };
  CHECK(kind_and_message("dim = 64\ncolour = blue\n").find("line 2: unknown key 'colour'") != std::string::npos);
  CHECK(kind_and_message("seed = abc\n").find("bad value") != std::string::npos);
  CHECK(kind_and_message("lambda = 0.5x\n").find("bad value") != std::string::npos);
  CHECK(kind_and_message("lambda = 2\n").find("out of range") != std::string::npos);
  CHECK(kind_and_message("match_threshold = 1\n").find("out of range") != std::string::npos);
  CHECK(kind_and_message("dim\n").find("expected 'key = value'") != std::string::npos);
  CHECK(kind_and_message("max_path = 0\n").rfind("config", 0) == 0);
}

TEST_CASE("environment overrides") {
  auto c = Demo();
  setenv("SCRIPTWRITER_SEED", "7", 1);
  setenv("SCRIPTWRITER_ONTOLOGY", "/tmp/other.graph", 1);
  c.ApplyEnvironment();
  CHECK(c.seed == 7);
  CHECK(c.ontology == "/tmp/other.graph");
  setenv("SCRIPTWRITER_SEED", "x", 1);
  CHECK_THROWS_AS(c.ApplyEnvironment(), Error);
  unsetenv("SCRIPTWRITER_SEED");
  unsetenv("SCRIPTWRITER_ONTOLOGY");
}

TEST_CASE("demo run") {
  const auto config = Demo();
  const auto start = std::chrono::steady_clock::now();
  const auto result = RunPipeline(config, config.corpus, kDemo);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  CHECK(elapsed.count() < 10.0);

  for (const char *t : {"woman", "walk", "beach", "ball", "take", "leave", "blue"}) {
    CHECK(result.blend.provenance.at(t) == blending::Provenance::kAnchored);
  }
  for (const char *t : {"clothing", "ocean", "sky"}) {
    CHECK(result.blend.provenance.at(t) == blending::Provenance::kConfabulated);
  }
  CHECK(result.diagnostics.generic.shared == std::set<std::string>{"ball", "beach", "woman"});
  CHECK(result.spaces.size() == 3);
  CHECK(result.spaces[1].expanded.count("color") == 1);
  REQUIRE(result.script.scenes.size() == 3);
  CHECK(result.script.scenes[0].action == "walk");
  CHECK(result.script.scenes[1].action == "leave");
  CHECK(result.script.scenes[2].action == "take");

  std::vector<std::string> stages;
  for (const auto &t : result.diagnostics.timings) stages.push_back(t.stage);
  CHECK(stages == std::vector<std::string>{"load", "parse", "mental-space", "memory", "blend",
                                           "renormalize", "scenario"});
  CHECK(result.diagnostics.parses.size() == 3);

  // Holographic check of the renormalised blend recovers each edge's target.
  bool saw_wear = false;
  for (const auto &h : result.diagnostics.holographic) {
    CHECK(h.decoded == h.dst);
    saw_wear = saw_wear || (h.src == "woman" && h.label == "wear" && h.dst == "clothing");
  }
  CHECK(saw_wear);

  const auto memory = memory::HolographicMemory::FromSnapshot(result.diagnostics.memory_snapshot);
  CHECK(memory.nodes().size() >= 3);

  const auto diag = nlohmann::json::parse(DiagnosticsToJson(result.diagnostics));
  CHECK(diag["parses"].size() == 3);
  CHECK(diag["generic_space"].size() == 3);
}

TEST_CASE("determinism") {
  const auto config = Demo();
  const auto data = LoadPipelineData(config, config.corpus);
  const auto a = RunPipeline(config, data, kDemo);
  const auto b = RunPipeline(config, data, kDemo);
  CHECK(scenario::ToJson(a.script) == scenario::ToJson(b.script));
  CHECK(ontology::WriteGraph(a.blend.subgraph, a.blend.Records()) ==
        ontology::WriteGraph(b.blend.subgraph, b.blend.Records()));
  CHECK(a.diagnostics.memory_snapshot == b.diagnostics.memory_snapshot);

  // Building the ontology from the corpus gives the same result as the
  // shipped graph file.
  auto from_corpus = config;
  from_corpus.ontology.clear();
  const auto c = RunPipeline(from_corpus, from_corpus.corpus, kDemo);
  CHECK(scenario::ToJson(c.script) == scenario::ToJson(a.script));
}

TEST_CASE("conjoined variant yields one scene per clause") {
  const auto config = Demo();
  const auto result = RunPipeline(
      config, config.corpus,
      "A woman walks on the beach. There was a blue ball on the beach. She takes the ball and kicks it.");
  REQUIRE(result.script.scenes.size() == 4);
  CHECK(result.script.scenes[1].action == "be");
  CHECK(result.script.scenes[3].action == "kick");
  CHECK(result.script.scenes[3].active == "woman");
  CHECK(result.script.scenes[3].passive == "ball");
}

TEST_CASE("scene count equals parseable sentence count") {
  const auto config = Demo();
  const auto result =
      RunPipeline(config, config.corpus, "A woman walks on the beach. The quiet beach. The woman takes the ball.");
  CHECK(result.script.scenes.size() == 2);
  CHECK(result.diagnostics.failures.size() == 1);
  CHECK(result.diagnostics.failures[0].sentence_index == 1);
}

TEST_CASE("stage-tagged errors") {
  const auto config = Demo();
  auto e = ErrorOf(config, "   ");
  CHECK(e.stage() == "parse");
  CHECK(e.kind() == ErrorKind::kEmptyInput);

  e = ErrorOf(config, "The quiet beach.");
  CHECK(e.stage() == "parse");
  CHECK(e.kind() == ErrorKind::kUnparseableSentence);

  e = ErrorOf(config, "The unicorn walks on the beach.");
  CHECK(e.stage() == "mental-space");
  CHECK(e.kind() == ErrorKind::kVocabularyGap);
  CHECK(std::string(e.what()).find("unicorn") != std::string::npos);

  const auto corrupt = std::filesystem::temp_directory_path() / "scriptwriter_corrupt.graph";
  {
    std::ofstream out(corrupt);
    out << "# scriptwriter graph v1\nnode\twoman\tperson\nedge\twoman\tghost\tnear\t1\n";
  }
  auto bad = config;
  bad.ontology = corrupt;
  e = ErrorOf(bad, kDemo);
  CHECK(e.stage() == "load");
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  CHECK(std::string(e.what()).find(corrupt.string()) != std::string::npos);
  std::filesystem::remove(corrupt);

  auto missing = config;
  missing.corpus = "/nonexistent/corpus";
  e = ErrorOf(missing, kDemo);
  CHECK(e.stage() == "load");
  CHECK(e.kind() == ErrorKind::kIo);
}

}  // namespace
}  // namespace scriptwriter

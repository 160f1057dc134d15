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

// Command-line front end: build-ontology, imagine, inspect-memory, export-dot.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scriptwriter/error.h"
#include "scriptwriter/memory.h"
#include "scriptwriter/ontology.h"
#include "scriptwriter/pipeline.h"

namespace sw = scriptwriter;

namespace {

constexpr int kUsageError = 2;

void WriteOutput(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) {
    throw sw::Error(sw::ErrorKind::kIo, "output", "cannot write " + path);
  }
}

sw::PipelineConfig LoadConfig(const std::string &config_path, std::optional<std::uint64_t> seed) {
  std::string path = config_path;
  if (path.empty()) {
    const char *env = std::getenv("SCRIPTWRITER_CONFIG");
    path = env != nullptr ? env : SCRIPTWRITER_DEFAULT_CONFIG;
  }
  auto config = sw::PipelineConfig::Load(path);
  config.ApplyEnvironment();
  if (seed) config.seed = *seed;
  config.Validate();
  return config;
}

std::string DescribeMemory(const sw::memory::HolographicMemory &mem) {
  std::ostringstream out;
  out << "clock " << mem.clock() << ", " << mem.nodes().size() << " concept(s)\n";
  for (const auto &[id, node] : mem.nodes()) {
    double intensity = 0.0;
    for (const auto &sig : node.signatures) {
      if (sig.recorded_at <= mem.clock()) {
        intensity = std::max(intensity, sw::memory::Intensity(sig, mem.clock()));
      }
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%-6s %-9s signatures=%zu connections=%d intensity=%.4f",
                  id.c_str(), std::string(sw::memory::LevelName(node.level)).c_str(),
                  node.signatures.size(), node.connection_count, intensity);
    out << line;
    if (!node.members.empty()) {
      out << " members=";
      bool first = true;
      for (const auto &m : node.members) {
        out << (first ? "" : ",") << m;
        first = false;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Turns short English texts into blended scene scripts.", "scriptwriter"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "Pipeline configuration file (key = value)");
  app.add_option("--seed", seed, "Override the random seed");

  auto *build = app.add_subcommand("build-ontology", "Build an ontology graph from a corpus directory");
  std::string corpus_dir, graph_out;
  build->add_option("corpus_dir", corpus_dir, "Directory of plain-text documents")->required();
  build->add_option("-o,--output", graph_out, "Graph file to write")->required();

  auto *imagine = app.add_subcommand("imagine", "Blend a text and emit a scene script");
  std::string text_file, ontology_file, script_out, imagine_corpus, blend_out, memory_out,
      diagnostics_out;
  imagine->add_option("text_file", text_file, "Input text")->required();
  imagine->add_option("--ontology", ontology_file, "Ontology graph file");
  imagine->add_option("-o,--output", script_out, "Scene script JSON to write (default stdout)");
  imagine->add_option("--corpus", imagine_corpus, "Corpus directory for dK statistics");
  imagine->add_option("--blend-out", blend_out, "Write the blended space as a graph file");
  imagine->add_option("--memory-out", memory_out, "Write the concept-memory snapshot");
  imagine->add_option("--diagnostics", diagnostics_out, "Write per-stage diagnostics JSON");

  auto *inspect = app.add_subcommand("inspect-memory", "Summarize a concept-memory snapshot");
  std::string snapshot_file;
  inspect->add_option("snapshot", snapshot_file, "Snapshot file")->required();

  auto *dot = app.add_subcommand("export-dot", "Render a graph or blend file as Graphviz DOT");
  std::string dot_input, dot_out;
  dot->add_option("graph_file", dot_input, "Graph or blend file")->required();
  dot->add_option("-o,--output", dot_out, "DOT file to write (default stdout)");

  if (argc <= 1) {
    std::cerr << app.help();
    return kUsageError;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "scriptwriter: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*build) {
      const auto config = LoadConfig(config_path, seed);
      const auto lexicon = sw::Lexicon::Load(config.lexicon_dir);
      const auto relations = sw::ontology::LoadRelationLexicon(config.relation_lexicon);
      std::map<std::string, std::string> types;
      if (!config.semantic_types.empty()) types = sw::ReadWordMap(config.semantic_types);
      const auto corpus = sw::ontology::LoadCorpusDir(corpus_dir);
      const auto graph = sw::ontology::BuildFromCorpus(corpus, lexicon, relations, types);
      WriteOutput(graph_out, sw::ontology::WriteGraph(graph));
      std::cerr << "wrote " << graph.nodes().size() << " nodes, " << graph.edge_count()
                << " edges to " << graph_out << '\n';
    } else if (*imagine) {
      auto config = LoadConfig(config_path, seed);
      if (!ontology_file.empty()) config.ontology = ontology_file;
      if (!imagine_corpus.empty()) config.corpus = imagine_corpus;
      const std::string input = sw::ReadFile(text_file, "input");
      const auto result = sw::RunPipeline(config, config.corpus, input);
      WriteOutput(script_out, sw::scenario::ToJson(result.script));
      if (!blend_out.empty()) {
        WriteOutput(blend_out, sw::ontology::WriteGraph(result.blend.subgraph, result.blend.Records()));
      }
      if (!memory_out.empty()) WriteOutput(memory_out, result.diagnostics.memory_snapshot);
      if (!diagnostics_out.empty()) {
        WriteOutput(diagnostics_out, sw::DiagnosticsToJson(result.diagnostics));
      }
    } else if (*inspect) {
      const auto mem = sw::memory::HolographicMemory::FromSnapshot(sw::ReadFile(snapshot_file, "memory"));
      std::cout << DescribeMemory(mem);
    } else if (*dot) {
      const auto file = sw::ontology::LoadGraphFile(dot_input);
      WriteOutput(dot_out, sw::ontology::ToDot(file.graph, file.terms));
    }
  } catch (const sw::Error &e) {
    std::cerr << "scriptwriter: error [" << e.stage() << "/" << sw::ErrorKindName(e.kind())
              << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "scriptwriter: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

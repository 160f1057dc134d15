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

#include "scriptwriter/pipeline.h"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "scriptwriter/error.h"

namespace scriptwriter {
namespace {

using Json = nlohmann::ordered_json;

template <typename F>
auto RunStage(const char *stage, Diagnostics &diagnostics, F &&body) {
  const auto start = std::chrono::steady_clock::now();
  auto record = [&] {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    diagnostics.timings.push_back(
        {stage, std::chrono::duration<double, std::milli>(elapsed).count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      record();
    } else {
      auto result = body();
      record();
      return result;
    }
  } catch (const Error &e) {
    throw Error(e.kind(), stage, e.what());
  }
}

std::filesystem::path Resolve(const std::filesystem::path &base, const std::string &value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

Json StructureJson(const text::UniversalStructure &s) {
  Json j;
  j["active"] = s.active_actor.value_or(text::kUnknownActor);
  j["action"] = s.action;
  j["passive"] = s.passive_actor ? Json(*s.passive_actor) : Json(nullptr);
  j["location"] = s.location ? Json(*s.location) : Json(nullptr);
  Json attrs = Json::array();
  for (const auto &a : s.attributes) attrs.push_back({a.term, a.value});
  j["attributes"] = std::move(attrs);
  return j;
}

}  // namespace

PipelineConfig PipelineConfig::Parse(const std::string &text,
                                     const std::filesystem::path &base_dir) {
  PipelineConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string &why) {
    return Error(ErrorKind::kConfig, "config", "config line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      std::size_t used = 0;
      auto whole = [&](std::size_t n) {
        if (n != value.size()) throw fail("bad value '" + value + "' for " + key);
      };
      if (key == "dim") { config.dim = std::stoull(value, &used); whole(used); }
      else if (key == "seed") { config.seed = std::stoull(value, &used); whole(used); }
      else if (key == "depth") { config.depth = std::stoi(value, &used); whole(used); }
      else if (key == "threshold") { config.threshold = std::stod(value, &used); whole(used); }
      else if (key == "base_decay") { config.base_decay = std::stod(value, &used); whole(used); }
      else if (key == "prune_threshold") { config.prune_threshold = std::stod(value, &used); whole(used); }
      else if (key == "match_threshold") { config.match_threshold = std::stod(value, &used); whole(used); }
      else if (key == "time_window") { config.time_window = std::stoll(value, &used); whole(used); }
      else if (key == "max_path") { config.max_path = std::stoi(value, &used); whole(used); }
      else if (key == "lambda") { config.lambda = std::stod(value, &used); whole(used); }
      else if (key == "context_horizon") { config.context_horizon = std::stoull(value, &used); whole(used); }
      else if (key == "expand_relations") {
        config.expand_relations.clear();
        std::istringstream labels(value);
        for (std::string l; std::getline(labels, l, ',');) {
          if (!trim(l).empty()) config.expand_relations.insert(trim(l));
        }
      }
      else if (key == "lexicon") config.lexicon_dir = Resolve(base_dir, value);
      else if (key == "ontology") config.ontology = Resolve(base_dir, value);
      else if (key == "corpus") config.corpus = Resolve(base_dir, value);
      else if (key == "relations") config.relation_lexicon = Resolve(base_dir, value);
      else if (key == "semantic_types") config.semantic_types = Resolve(base_dir, value);
      else if (key == "term_objects") config.term_objects = Resolve(base_dir, value);
      else if (key == "value_map") config.value_map = Resolve(base_dir, value);
      else if (key == "vital_map") config.vital_map = Resolve(base_dir, value);
      else if (key == "functions") config.functions = Resolve(base_dir, value);
      else if (key == "rewrite_rules") config.rewrite_rules = Resolve(base_dir, value);
      else throw fail("unknown key '" + key + "'");
    } catch (const std::logic_error &) {
      throw fail("bad value '" + value + "' for " + key);
    }
  }
  config.Validate();
  return config;
}

PipelineConfig PipelineConfig::Load(const std::filesystem::path &file) {
  return Parse(ReadFile(file, "config"), file.parent_path());
}

void PipelineConfig::ApplyEnvironment() {
  if (const char *seed_env = std::getenv("SCRIPTWRITER_SEED")) {
    try {
      seed = std::stoull(seed_env);
    } catch (const std::logic_error &) {
      throw Error(ErrorKind::kConfig, "config", "SCRIPTWRITER_SEED is not an integer");
    }
  }
  if (const char *v = std::getenv("SCRIPTWRITER_ONTOLOGY")) ontology = v;
  if (const char *v = std::getenv("SCRIPTWRITER_CORPUS")) corpus = v;
  if (const char *v = std::getenv("SCRIPTWRITER_LEXICON")) lexicon_dir = v;
}

void PipelineConfig::Validate() const {
  auto check = [](bool ok, const char *what) {
    if (!ok) throw Error(ErrorKind::kConfig, "config", std::string("out of range: ") + what);
  };
  check(dim >= 1, "dim >= 1");
  check(depth >= 0, "depth >= 0");
  check(threshold >= 0.0, "threshold >= 0");
  check(base_decay > 0.0, "base_decay > 0");
  check(prune_threshold >= 0.0, "prune_threshold >= 0");
  check(match_threshold > 0.0 && match_threshold < 1.0, "0 < match_threshold < 1");
  check(time_window >= 0, "time_window >= 0");
  check(max_path >= 1, "max_path >= 1");
  check(lambda >= 0.0 && lambda <= 1.0, "0 <= lambda <= 1");
}

PipelineData LoadPipelineData(const PipelineConfig &config,
                              const std::filesystem::path &corpus_dir) {
  Diagnostics scratch;
  return RunStage("load", scratch, [&] {
    PipelineData data;
    data.lexicon = Lexicon::Load(config.lexicon_dir);
    data.relations = ontology::LoadRelationLexicon(config.relation_lexicon);
    data.corpus = ontology::LoadCorpusDir(corpus_dir);
    std::map<std::string, std::string> types;
    if (!config.semantic_types.empty()) types = ReadWordMap(config.semantic_types);
    if (config.ontology.empty()) {
      data.graph = ontology::BuildFromCorpus(data.corpus, data.lexicon, data.relations, types);
    } else {
      data.graph = ontology::LoadGraphFile(config.ontology).graph;
    }
    data.dk = ontology::ExtractDk(data.corpus, data.lexicon, data.relations, data.graph);
    data.objects = ontology::TermObjectMap::Load(config.term_objects);
    data.values = ontology::ValueMap::Load(config.value_map);
    data.vital = blending::LoadVitalMap(config.vital_map);
    if (!config.functions.empty()) data.functions = scenario::LoadFunctions(config.functions);
    if (!config.rewrite_rules.empty()) data.rules = ontology::LoadRewriteRules(config.rewrite_rules);
    return data;
  });
}

PipelineResult RunPipeline(const PipelineConfig &config, const std::filesystem::path &corpus_dir,
                           const std::string &input_text) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  const PipelineData data = LoadPipelineData(config, corpus_dir);
  const std::chrono::duration<double, std::milli> load = std::chrono::steady_clock::now() - start;
  auto result = RunPipeline(config, data, input_text);
  result.diagnostics.timings.insert(result.diagnostics.timings.begin(), {"load", load.count()});
  return result;
}

PipelineResult RunPipeline(const PipelineConfig &config, const PipelineData &data,
                           const std::string &input_text) {
  config.Validate();
  PipelineResult result;
  Diagnostics &diag = result.diagnostics;

  const auto parsed = RunStage("parse", diag, [&] {
    if (Tokenize(input_text).empty()) {
      throw Error(ErrorKind::kEmptyInput, "parse", "input text is empty");
    }
    auto out = text::ParseText(input_text, data.lexicon, {config.context_horizon});
    if (out.clauses.empty()) {
      throw Error(ErrorKind::kUnparseableSentence, "parse",
                  "no parseable sentence in input: " + out.failures.front().message);
    }
    return out;
  });
  diag.parses = parsed.clauses;
  diag.failures = parsed.failures;

  std::vector<text::UniversalStructure> structures;
  for (const auto &c : parsed.clauses) structures.push_back(c.structure);

  result.spaces = RunStage("mental-space", diag, [&] {
    text::SpaceOptions options{config.expand_relations, config.depth, data.rules};
    std::vector<text::MentalSpace> spaces;
    for (std::size_t i = 0; i < structures.size(); ++i) {
      spaces.push_back(text::BuildMentalSpace(structures[i], i, data.graph, options));
    }
    return spaces;
  });

  diag.memory_snapshot = RunStage("memory", diag, [&] {
    memory::HolographicMemory mem({config.dim, config.seed, config.time_window,
                                   config.prune_threshold, config.match_threshold,
                                   config.base_decay, 1.0});
    std::vector<std::string> concepts;
    memory::Tick tick = 0;
    for (std::size_t i = 0; i < result.spaces.size(); ++i) {
      tick = static_cast<memory::Tick>(i);
      mem.AdvanceTo(tick);
      std::vector<memory::Activation> activations;
      for (const auto &t : result.spaces[i].anchored) activations.push_back({t, tick});
      for (const auto &id : mem.Observe(activations).affected) {
        if (std::find(concepts.begin(), concepts.end(), id) == concepts.end()) {
          concepts.push_back(id);
        }
      }
    }
    std::erase_if(concepts, [&](const std::string &id) { return !mem.IsAlive(id, tick); });
    if (concepts.size() >= 2) mem.Assemble(concepts, tick);
    mem.Prune(tick);
    return mem.Snapshot();
  });

  result.blend = RunStage("blend", diag, [&] {
    diag.generic = blending::BuildGenericSpace(result.spaces);
    blending::ConfabulationOptions options;
    options.threshold = config.threshold;
    options.walk = {config.max_path, config.lambda};
    for (const auto &s : result.spaces) options.exclude.insert(s.anchored.begin(), s.anchored.end());
    auto blend = blending::Confabulate(diag.generic, data.graph, data.dk, options);
    // Composition: every input's anchored terms are projected into the blend.
    for (const auto &s : result.spaces) {
      for (const auto &t : s.anchored) {
        blend.scores[t] = 1.0;
        blend.provenance[t] = blending::Provenance::kAnchored;
      }
    }
    blend.subgraph = data.graph.Induced(blend.Terms());
    return blend;
  });

  diag.holographic = RunStage("renormalize", diag, [&] {
    const auto compressed = blending::Renormalize(result.blend.subgraph, data.vital);
    std::vector<std::string> ids;
    for (const auto &[t, type] : data.graph.nodes()) ids.push_back(t);
    for (const auto &l : data.graph.Labels()) ids.push_back(l);
    const hrr::Codebook book(config.dim, config.seed, ids);
    std::vector<HolographicCheck> checks;
    for (const auto &e : compressed.edges()) {
      const std::vector<std::string> path{e.src, e.label, e.dst};
      const auto trace = blending::EncodeSubgraph(path, book);
      const auto probe = hrr::Convolve(book.at(e.src), book.at(e.label));
      const auto decoded = blending::DecodeProbe(trace, probe, book);
      checks.push_back({e.src, e.label, e.dst, decoded.id, decoded.similarity});
    }
    return checks;
  });

  result.script = RunStage("scenario", diag, [&] {
    return scenario::PlanScenario(result.blend, structures, data.objects, data.values,
                                  data.functions);
  });
  return result;
}

std::string DiagnosticsToJson(const Diagnostics &d) {
  Json root;
  Json timings = Json::array();
  for (const auto &t : d.timings) timings.push_back({{"stage", t.stage}, {"ms", t.milliseconds}});
  root["timings"] = std::move(timings);
  Json parses = Json::array();
  for (const auto &p : d.parses) {
    parses.push_back({{"sentence", p.sentence_index}, {"text", p.text},
                      {"structure", StructureJson(p.structure)}});
  }
  root["parses"] = std::move(parses);
  Json failures = Json::array();
  for (const auto &f : d.failures) {
    failures.push_back({{"sentence", f.sentence_index}, {"text", f.text}, {"error", f.message}});
  }
  root["failures"] = std::move(failures);
  root["generic_space"] = d.generic.shared;
  Json holo = Json::array();
  for (const auto &h : d.holographic) {
    holo.push_back({{"edge", {h.src, h.label, h.dst}}, {"decoded", h.decoded},
                    {"similarity", h.similarity}});
  }
  root["holographic_checks"] = std::move(holo);
  return root.dump(2) + "\n";
}

}  // namespace scriptwriter

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

#ifndef SCRIPTWRITER_PIPELINE_H_
#define SCRIPTWRITER_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "scriptwriter/blending.h"
#include "scriptwriter/hrr.h"
#include "scriptwriter/memory.h"
#include "scriptwriter/ontology.h"
#include "scriptwriter/scenario.h"
#include "scriptwriter/text_filter.h"

namespace scriptwriter {

// Numeric knobs and data-file locations. Loaded from "key = value" files;
// relative paths resolve against the config file's directory.
struct PipelineConfig {
  std::size_t dim = hrr::kDefaultDim;
  std::uint64_t seed = 42;
  int depth = 1;
  double threshold = 0.05;
  double base_decay = 10.0;
  double prune_threshold = 0.1;
  double match_threshold = 0.8;
  std::int64_t time_window = 5;
  int max_path = 3;
  double lambda = 0.5;
  std::size_t context_horizon = 2;
  std::set<std::string> expand_relations;

  std::filesystem::path lexicon_dir;
  std::filesystem::path ontology;        // optional; built from the corpus when empty
  std::filesystem::path corpus;
  std::filesystem::path relation_lexicon;
  std::filesystem::path semantic_types;  // optional
  std::filesystem::path term_objects;
  std::filesystem::path value_map;
  std::filesystem::path vital_map;
  std::filesystem::path functions;       // optional
  std::filesystem::path rewrite_rules;   // optional

  static PipelineConfig Parse(const std::string &text, const std::filesystem::path &base_dir);
  static PipelineConfig Load(const std::filesystem::path &file);
  // SCRIPTWRITER_SEED, SCRIPTWRITER_ONTOLOGY, SCRIPTWRITER_CORPUS and
  // SCRIPTWRITER_LEXICON override the corresponding fields.
  void ApplyEnvironment();
  // Throws kConfig for out-of-range values.
  void Validate() const;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

// Holographic round trip of one renormalised blend edge: encode
// src (*) label (*) dst, probe with src (*) label, clean up.
struct HolographicCheck {
  std::string src;
  std::string label;
  std::string dst;
  std::string decoded;
  double similarity = 0.0;
};

struct Diagnostics {
  std::vector<StageTiming> timings;
  std::vector<text::ParsedClause> parses;
  std::vector<text::ParseFailure> failures;
  blending::GenericSpace generic;
  std::vector<HolographicCheck> holographic;
  std::string memory_snapshot;
};

struct PipelineResult {
  std::vector<text::MentalSpace> spaces;
  blending::BlendedSpace blend;
  scenario::SceneScript script;
  Diagnostics diagnostics;
};

// Data files loaded once per run.
struct PipelineData {
  Lexicon lexicon;
  ontology::RelationLexicon relations;
  ontology::Corpus corpus;
  ontology::OntologyGraph graph;
  ontology::DkStatistics dk;
  ontology::TermObjectMap objects;
  ontology::ValueMap values;
  blending::VitalMap vital;
  scenario::FunctionTable functions;
  std::vector<ontology::RewriteRule> rules;
};

PipelineData LoadPipelineData(const PipelineConfig &config, const std::filesystem::path &corpus_dir);

// corpus -> ontology -> parse -> mental spaces -> blend -> script. Output is
// a pure function of (config, corpus bytes, input bytes); only timings vary.
// Errors carry the failing stage.
PipelineResult RunPipeline(const PipelineConfig &config, const std::filesystem::path &corpus_dir,
                           const std::string &input_text);
PipelineResult RunPipeline(const PipelineConfig &config, const PipelineData &data,
                           const std::string &input_text);

std::string DiagnosticsToJson(const Diagnostics &diagnostics);

}  // namespace scriptwriter

#endif  // SCRIPTWRITER_PIPELINE_H_

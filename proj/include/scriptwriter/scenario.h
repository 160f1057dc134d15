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

#ifndef SCRIPTWRITER_SCENARIO_H_
#define SCRIPTWRITER_SCENARIO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scriptwriter/blending.h"
#include "scriptwriter/ontology.h"
#include "scriptwriter/text_filter.h"

namespace scriptwriter::scenario {

using ontology::Term;

// Actor behaviour with binding pattern (b, f): bound arguments in, exactly
// one free output.
struct ActorFunction {
  Term name;
  std::vector<std::pair<std::string, std::string>> bound_args;  // (name, semantic type)
  std::pair<std::string, std::string> free_output;
  friend bool operator==(const ActorFunction &, const ActorFunction &) = default;
};

using FunctionTable = std::map<Term, ActorFunction>;

// Lines: "name<TAB>arg:type,arg:type<TAB>out:type".
FunctionTable LoadFunctions(const std::filesystem::path &file);

enum class ActorState { kActive, kPassive, kPresent };
std::string_view ActorStateName(ActorState s);

struct SceneAttribute {
  Term term;
  std::string attribute;
  std::variant<double, Term> value;
  friend bool operator==(const SceneAttribute &, const SceneAttribute &) = default;
};

struct Scene {
  std::size_t index = 0;
  Term action;
  std::optional<Term> active;  // nullopt: UNKNOWN agent
  std::optional<Term> passive;
  std::optional<Term> location;
  std::vector<SceneAttribute> attributes;
  std::vector<std::pair<Term, ActorState>> actors;
  std::vector<Term> dressing;
  std::map<Term, std::string> asset_bindings;
  std::optional<ActorFunction> function;
  friend bool operator==(const Scene &, const Scene &) = default;
};

struct SceneScript {
  std::vector<Scene> scenes;
  std::vector<Term> dressing;  // blended-only terms attached to every scene
  friend bool operator==(const SceneScript &, const SceneScript &) = default;
};

// One scene per structure, in order. Actors carry over between scenes until
// a different active actor replaces them; attributes resolve through the
// value map; every emitted term is bound to an asset. Throws kUnmappedTerm
// naming the first unbound term and kEmptyInput for an empty blend.
SceneScript PlanScenario(const blending::BlendedSpace &blend,
                         std::span<const text::UniversalStructure> structures,
                         const ontology::TermObjectMap &objects, const ontology::ValueMap &values,
                         const FunctionTable &functions = {});

std::string ToJson(const SceneScript &script);
SceneScript SceneScriptFromJson(const std::string &json);

}  // namespace scriptwriter::scenario

#endif  // SCRIPTWRITER_SCENARIO_H_

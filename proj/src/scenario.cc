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

#include "scriptwriter/scenario.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "scriptwriter/error.h"

namespace scriptwriter::scenario {
namespace {

constexpr char kStage[] = "scenario";
constexpr char kSchema[] = "scriptwriter.scene-script/1";

using Json = nlohmann::ordered_json;

std::pair<std::string, std::string> ParseArg(const std::string &text, const std::string &where) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(ErrorKind::kParse, kStage, where + ": expected 'name:type', got '" + text + "'");
  }
  return {text.substr(0, colon), text.substr(colon + 1)};
}

Json OptionalTerm(const std::optional<Term> &t) { return t ? Json(*t) : Json(nullptr); }

std::optional<Term> TermOrNull(const Json &j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

ActorState ParseState(const std::string &s) {
  if (s == "active") return ActorState::kActive;
  if (s == "passive") return ActorState::kPassive;
  if (s == "present") return ActorState::kPresent;
  throw Error(ErrorKind::kParse, kStage, "unknown actor state '" + s + "'");
}

}  // namespace

FunctionTable LoadFunctions(const std::filesystem::path &file) {
  FunctionTable out;
  std::istringstream in(ReadFile(file, kStage));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = file.string() + " line " + std::to_string(line_no);
    std::vector<std::string> fields;
    std::istringstream parts(line);
    for (std::string f; std::getline(parts, f, '\t');) fields.push_back(f);
    if (fields.size() != 3 || fields[0].empty()) {
      throw Error(ErrorKind::kParse, kStage, where + ": expected 'name<TAB>bound<TAB>free'");
    }
    if (fields[2].find(',') != std::string::npos) {
      throw Error(ErrorKind::kParse, kStage, where + ": an actor function has one free output");
    }
    ActorFunction fn;
    fn.name = fields[0];
    std::istringstream bound(fields[1]);
    for (std::string arg; std::getline(bound, arg, ',');) {
      if (!arg.empty()) fn.bound_args.push_back(ParseArg(arg, where));
    }
    fn.free_output = ParseArg(fields[2], where);
    out[fn.name] = std::move(fn);
  }
  return out;
}

std::string_view ActorStateName(ActorState s) {
  switch (s) {
    case ActorState::kActive: return "active";
    case ActorState::kPassive: return "passive";
    case ActorState::kPresent: return "present";
  }
  return "";
}

SceneScript PlanScenario(const blending::BlendedSpace &blend,
                         std::span<const text::UniversalStructure> structures,
                         const ontology::TermObjectMap &objects, const ontology::ValueMap &values,
                         const FunctionTable &functions) {
  if (blend.scores.empty()) {
    throw Error(ErrorKind::kEmptyInput, kStage, "cannot plan a scenario from an empty blend");
  }
  for (const auto &s : structures) {
    for (const auto &t : s.Terms()) {
      if (!blend.Contains(t)) {
        throw Error(ErrorKind::kUnknownTerm, kStage,
                    "term '" + t + "' of " + text::ToString(s) + " is not in the blended space");
      }
    }
  }

  SceneScript script;
  for (const auto &[t, p] : blend.provenance) {
    if (p != blending::Provenance::kAnchored) script.dressing.push_back(t);
  }

  std::vector<Term> carried;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    const auto &s = structures[i];
    Scene scene;
    scene.index = i;
    scene.action = s.action;
    scene.active = s.active_actor;
    scene.passive = s.passive_actor;
    scene.location = s.location;
    scene.dressing = script.dressing;

    const bool replaced =
        s.active_actor && std::any_of(carried.begin(), carried.end(),
                                      [&](const Term &c) { return c != *s.active_actor; });
    if (replaced) carried.clear();
    for (const auto &c : carried) scene.actors.emplace_back(c, ActorState::kPresent);
    auto set_state = [&](const Term &t, ActorState state) {
      for (auto &[term, st] : scene.actors) {
        if (term == t) {
          st = state;
          return;
        }
      }
      scene.actors.emplace_back(t, state);
    };
    if (s.active_actor) set_state(*s.active_actor, ActorState::kActive);
    if (s.passive_actor) set_state(*s.passive_actor, ActorState::kPassive);

    carried.clear();
    for (const auto &[term, st] : scene.actors) {
      if (st != ActorState::kPassive) carried.push_back(term);
    }

    for (const auto &a : s.attributes) {
      SceneAttribute attr{a.term, a.type, a.value};
      if (auto v = values.Find(a.value, a.type)) attr.value = *v;
      scene.attributes.push_back(std::move(attr));
    }

    auto bind = [&](const Term &t) { scene.asset_bindings[t] = objects.Lookup(t); };
    if (scene.action != text::kCopula) bind(scene.action);
    for (const auto &[term, st] : scene.actors) bind(term);
    if (scene.location) bind(*scene.location);
    for (const auto &t : scene.dressing) bind(t);

    if (auto it = functions.find(s.action); it != functions.end()) scene.function = it->second;
    script.scenes.push_back(std::move(scene));
  }
  return script;
}

std::string ToJson(const SceneScript &script) {
  Json root;
  root["schema"] = kSchema;
  root["dressing"] = script.dressing;
  Json scenes = Json::array();
  for (const auto &scene : script.scenes) {
    Json j;
    j["index"] = scene.index;
    j["action"] = scene.action;
    j["active"] = scene.active.value_or(text::kUnknownActor);
    j["passive"] = OptionalTerm(scene.passive);
    j["location"] = OptionalTerm(scene.location);
    Json attrs = Json::array();
    for (const auto &a : scene.attributes) {
      Json attr;
      attr["term"] = a.term;
      attr["attribute"] = a.attribute;
      if (const double *v = std::get_if<double>(&a.value)) {
        attr["value"] = *v;
      } else {
        attr["value"] = std::get<Term>(a.value);
      }
      attrs.push_back(std::move(attr));
    }
    j["attributes"] = std::move(attrs);
    Json actors = Json::array();
    for (const auto &[term, state] : scene.actors) {
      actors.push_back({{"term", term}, {"state", std::string(ActorStateName(state))}});
    }
    j["actors"] = std::move(actors);
    j["dressing"] = scene.dressing;
    if (scene.function) {
      Json fn;
      fn["name"] = scene.function->name;
      Json bound = Json::array();
      for (const auto &[n, t] : scene.function->bound_args) bound.push_back({{"name", n}, {"type", t}});
      fn["bound"] = std::move(bound);
      fn["free"] = {{"name", scene.function->free_output.first},
                    {"type", scene.function->free_output.second}};
      j["function"] = std::move(fn);
    } else {
      j["function"] = nullptr;
    }
    Json assets = Json::object();
    for (const auto &[t, a] : scene.asset_bindings) assets[t] = a;
    j["assets"] = std::move(assets);
    scenes.push_back(std::move(j));
  }
  root["scenes"] = std::move(scenes);
  return root.dump(2) + "\n";
}

SceneScript SceneScriptFromJson(const std::string &text) {
  try {
    const Json root = Json::parse(text);
    if (root.at("schema") != kSchema) {
      throw Error(ErrorKind::kParse, kStage, "unsupported scene script schema");
    }
    SceneScript script;
    script.dressing = root.at("dressing").get<std::vector<Term>>();
    for (const auto &j : root.at("scenes")) {
      Scene scene;
      scene.index = j.at("index").get<std::size_t>();
      scene.action = j.at("action").get<std::string>();
      const auto active = j.at("active").get<std::string>();
      if (active != text::kUnknownActor) scene.active = active;
      scene.passive = TermOrNull(j.at("passive"));
      scene.location = TermOrNull(j.at("location"));
      for (const auto &a : j.at("attributes")) {
        SceneAttribute attr{a.at("term"), a.at("attribute"), 0.0};
        if (a.at("value").is_number()) {
          attr.value = a.at("value").get<double>();
        } else {
          attr.value = a.at("value").get<std::string>();
        }
        scene.attributes.push_back(std::move(attr));
      }
      for (const auto &a : j.at("actors")) {
        scene.actors.emplace_back(a.at("term").get<std::string>(),
                                  ParseState(a.at("state").get<std::string>()));
      }
      scene.dressing = j.at("dressing").get<std::vector<Term>>();
      if (!j.at("function").is_null()) {
        const auto &f = j.at("function");
        ActorFunction fn;
        fn.name = f.at("name");
        for (const auto &b : f.at("bound")) fn.bound_args.emplace_back(b.at("name"), b.at("type"));
        fn.free_output = {f.at("free").at("name"), f.at("free").at("type")};
        scene.function = std::move(fn);
      }
      for (const auto &[t, a] : j.at("assets").items()) scene.asset_bindings[t] = a;
      script.scenes.push_back(std::move(scene));
    }
    return script;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParse, kStage, std::string("malformed scene script: ") + e.what());
  }
}

}  // namespace scriptwriter::scenario

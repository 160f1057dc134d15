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

#include "scriptwriter/blending.h"

#include <algorithm>
#include <execution>
#include <sstream>

#include "scriptwriter/error.h"

namespace scriptwriter::blending {
namespace {

constexpr char kStage[] = "blending";

constexpr std::pair<VitalRelation, std::string_view> kVitalNames[] = {
    {VitalRelation::kTime, "Time"},
    {VitalRelation::kSpace, "Space"},
    {VitalRelation::kIdentity, "Identity"},
    {VitalRelation::kRole, "Role"},
    {VitalRelation::kCauseEffect, "Cause-Effect"},
    {VitalRelation::kChange, "Change"},
    {VitalRelation::kIntentionality, "Intentionality"},
    {VitalRelation::kRepresentations, "Representations"},
    {VitalRelation::kAttributes, "Attributes"},
};

}  // namespace

std::string_view VitalRelationName(VitalRelation v) {
  for (const auto &[rel, name] : kVitalNames) {
    if (rel == v) return name;
  }
  return "";
}

std::optional<VitalRelation> ParseVitalRelation(std::string_view name) {
  for (const auto &[rel, n] : kVitalNames) {
    if (n == name) return rel;
  }
  return std::nullopt;
}

VitalMap LoadVitalMap(const std::filesystem::path &file) {
  VitalMap out;
  std::istringstream in(ReadFile(file, kStage));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string label, vital;
    if (!(fields >> label)) continue;
    fields >> vital;
    auto rel = ParseVitalRelation(vital);
    if (!rel) {
      throw Error(ErrorKind::kParse, kStage,
                  file.string() + " line " + std::to_string(line_no) +
                      ": unknown vital relation '" + vital + "'");
    }
    out[label] = *rel;
  }
  return out;
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kAnchored: return "anchored";
    case Provenance::kExpanded: return "expanded";
    case Provenance::kConfabulated: return "confabulated";
  }
  return "";
}

GenericSpace BuildGenericSpace(std::span<const text::MentalSpace> spaces) {
  if (spaces.empty()) {
    throw Error(ErrorKind::kEmptyInput, kStage, "generic space needs at least one mental space");
  }
  GenericSpace out;
  if (spaces.size() == 1) {
    out.shared = spaces.front().anchored;
    out.anchored = out.shared;
    return out;
  }
  auto holds = [](const text::MentalSpace &s, const Term &t) {
    return s.anchored.count(t) > 0 || s.expanded.count(t) > 0;
  };
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    std::set<Term> terms = spaces[i].anchored;
    terms.insert(spaces[i].expanded.begin(), spaces[i].expanded.end());
    for (const auto &t : terms) {
      for (std::size_t j = i + 1; j < spaces.size(); ++j) {
        if (holds(spaces[j], t)) {
          out.shared.insert(t);
          out.correspondences.emplace(i, j, t);
        }
      }
    }
  }
  for (const auto &t : out.shared) {
    for (const auto &s : spaces) {
      if (s.anchored.count(t)) out.anchored.insert(t);
    }
  }
  return out;
}

std::set<Term> BlendedSpace::Terms() const {
  std::set<Term> out;
  for (const auto &[t, s] : scores) out.insert(t);
  return out;
}

std::vector<ontology::TermRecord> BlendedSpace::Records() const {
  std::vector<ontology::TermRecord> out;
  for (const auto &[t, score] : scores) {
    out.push_back({t, score, std::string(ProvenanceName(provenance.at(t)))});
  }
  return out;
}

hrr::HrrVector EncodeSubgraph(std::span<const Term> path, const hrr::Codebook &book) {
  if (path.empty() || path.size() % 2 == 0) {
    throw Error(ErrorKind::kMalformedPath, kStage,
                "subgraph path must alternate node, edge, ..., node (got " +
                    std::to_string(path.size()) + " terms)");
  }
  hrr::HrrVector out = book.at(path.front());
  for (std::size_t i = 1; i < path.size(); ++i) out = hrr::Convolve(out, book.at(path[i]));
  return out;
}

hrr::CleanupResult DecodeProbe(const hrr::HrrVector &trace, const hrr::HrrVector &probe,
                               const hrr::Codebook &book) {
  return hrr::Cleanup(hrr::Correlate(probe, trace), book);
}

OntologyGraph Renormalize(const OntologyGraph &graph, const VitalMap &vital) {
  std::set<Term> kept;
  std::vector<ontology::Edge> edges;
  for (const auto &e : graph.edges()) {
    if (!vital.count(e.label)) continue;
    kept.insert(e.src);
    kept.insert(e.dst);
    edges.push_back(e);
  }
  OntologyGraph out;
  for (const auto &t : kept) out.AddNode(t, graph.SemanticType(t));
  for (const auto &e : edges) out.AddEdge(e.src, e.dst, e.label, e.weight);
  return out;
}

// --- transition model ------------------------------------------------------------

TransitionModel::TransitionModel(const OntologyGraph &graph, const DkStatistics &dk,
                                 WalkParams params)
    : graph_(graph), dk_(dk), params_(params) {
  if (params_.max_path < 1 || params_.lambda < 0.0 || params_.lambda > 1.0) {
    throw Error(ErrorKind::kConfig, kStage, "walk parameters out of range");
  }
}

void TransitionModel::CheckTerm(const Term &t) const {
  if (!graph_.HasNode(t)) {
    throw Error(ErrorKind::kUnknownTerm, kStage, "unknown term '" + t + "'");
  }
}

double TransitionModel::StepProbability(const Term &prev, const Term &from, const Term &to) const {
  const auto &neighbors = graph_.Neighbors(from);
  if (!neighbors.count(to)) return 0.0;
  double k2_total = 0.0;
  double k1_total = 0.0;
  for (const auto &m : neighbors) {
    k2_total += dk_.K2(from, m);
    k1_total += dk_.K1(m);
  }
  const double uniform = 1.0 / static_cast<double>(neighbors.size());
  auto base = [&](const Term &n) {
    const double pair = k2_total > 0.0 ? dk_.K2(from, n) / k2_total : uniform;
    const double prior = k1_total > 0.0 ? dk_.K1(n) / k1_total : uniform;
    return params_.lambda * pair + (1.0 - params_.lambda) * prior;
  };
  if (prev.empty()) return base(to);

  const double k2_prev = dk_.K2(prev, from);
  auto weight = [&](const Term &n) {
    const double correction = k2_prev > 0.0 ? 1.0 + dk_.K3(prev, from, n) / k2_prev : 1.0;
    return base(n) * correction;
  };
  double total = 0.0;
  for (const auto &m : neighbors) total += weight(m);
  return total > 0.0 ? weight(to) / total : 0.0;
}

void TransitionModel::Walk(std::vector<Term> &path, double mass, std::set<Term> &on_path,
                           std::map<Term, double> &out) const {
  if (static_cast<int>(path.size()) > params_.max_path) return;
  const Term here = path.back();
  const Term prev = path.size() >= 2 ? path[path.size() - 2] : Term();
  for (const auto &next : graph_.Neighbors(here)) {
    if (on_path.count(next)) continue;
    const double m = mass * StepProbability(prev, here, next);
    out[next] += m;
    path.push_back(next);
    on_path.insert(next);
    Walk(path, m, on_path, out);
    on_path.erase(next);
    path.pop_back();
  }
}

std::map<Term, double> TransitionModel::PathMass(const Term &from) const {
  CheckTerm(from);
  std::map<Term, double> out;
  std::vector<Term> path{from};
  std::set<Term> on_path{from};
  Walk(path, 1.0, on_path, out);
  return out;
}

std::map<Term, double> TransitionModel::Distribution(const Term &from) const {
  auto mass = PathMass(from);
  double total = 0.0;
  for (const auto &[t, m] : mass) total += m;
  if (total > 0.0) {
    for (auto &[t, m] : mass) m /= total;
  }
  return mass;
}

double TransitionModel::Probability(const Term &from, const Term &to) const {
  CheckTerm(from);
  CheckTerm(to);
  if (from == to) return 1.0;
  const auto dist = Distribution(from);
  auto it = dist.find(to);
  return it == dist.end() ? 0.0 : it->second;
}

double TransitionProbability(const OntologyGraph &graph, const DkStatistics &dk, const Term &from,
                             const Term &to, WalkParams params) {
  return TransitionModel(graph, dk, params).Probability(from, to);
}

// --- confabulation ------------------------------------------------------------------

std::map<Term, double> ScoreCandidates(const std::set<Term> &generic, const OntologyGraph &graph,
                                       const DkStatistics &dk,
                                       const ConfabulationOptions &options) {
  const TransitionModel model(graph, dk, options.walk);
  const std::vector<Term> sources(generic.begin(), generic.end());
  for (const auto &g : sources) {
    if (!graph.HasNode(g)) {
      throw Error(ErrorKind::kUnknownTerm, kStage, "generic term '" + g + "' is not in the ontology");
    }
  }
  std::vector<std::map<Term, double>> distributions(sources.size());
  std::vector<std::size_t> index(sources.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
  std::for_each(std::execution::par, index.begin(), index.end(),
                [&](std::size_t i) { distributions[i] = model.Distribution(sources[i]); });

  std::map<Term, double> scores;
  for (const auto &[candidate, type] : graph.nodes()) {
    if (generic.count(candidate) || options.exclude.count(candidate)) continue;
    double score = 1.0;
    for (const auto &dist : distributions) {
      auto it = dist.find(candidate);
      score *= it == dist.end() ? 0.0 : it->second;
    }
    scores[candidate] = score;
  }
  return scores;
}

BlendedSpace Confabulate(const GenericSpace &generic, const OntologyGraph &graph,
                         const DkStatistics &dk, const ConfabulationOptions &options) {
  if (generic.shared.empty()) {
    throw Error(ErrorKind::kEmptyInput, kStage, "confabulation needs a non-empty generic space");
  }
  const auto scores = ScoreCandidates(generic.shared, graph, dk, options);

  BlendedSpace blend;
  for (const auto &t : generic.shared) {
    blend.scores[t] = 1.0;
    blend.provenance[t] = generic.anchored.count(t) ? Provenance::kAnchored : Provenance::kExpanded;
  }
  double best = 0.0;
  const Term *argmax = nullptr;
  for (const auto &[t, s] : scores) {
    if (s > best) {
      best = s;
      argmax = &t;
    }
  }
  if (argmax != nullptr) {
    for (const auto &[t, s] : scores) {
      const double relative = s / best;
      if (&t == argmax || (s > 0.0 && relative >= options.threshold)) {
        blend.scores[t] = relative;
        blend.provenance[t] = Provenance::kConfabulated;
      }
    }
  }
  blend.subgraph = graph.Induced(blend.Terms());
  return blend;
}

}  // namespace scriptwriter::blending

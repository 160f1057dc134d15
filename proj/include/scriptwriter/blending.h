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

#ifndef SCRIPTWRITER_BLENDING_H_
#define SCRIPTWRITER_BLENDING_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "scriptwriter/hrr.h"
#include "scriptwriter/ontology.h"
#include "scriptwriter/text_filter.h"

namespace scriptwriter::blending {

using ontology::DkStatistics;
using ontology::OntologyGraph;
using ontology::Term;

enum class VitalRelation {
  kTime,
  kSpace,
  kIdentity,
  kRole,
  kCauseEffect,
  kChange,
  kIntentionality,
  kRepresentations,
  kAttributes,
};

std::string_view VitalRelationName(VitalRelation v);
std::optional<VitalRelation> ParseVitalRelation(std::string_view name);

// Relation label -> vital relation. Labels absent from the map are not vital.
using VitalMap = std::map<std::string, VitalRelation>;
// Lines: "label<whitespace>VitalRelation".
VitalMap LoadVitalMap(const std::filesystem::path &file);

enum class Provenance { kAnchored, kExpanded, kConfabulated };
std::string_view ProvenanceName(Provenance p);

struct GenericSpace {
  std::set<Term> shared;
  // (space i, space j, term) for every pair of spaces that both hold term.
  std::set<std::tuple<std::size_t, std::size_t, Term>> correspondences;
  // Shared terms that some input anchors (the rest came from expansion).
  std::set<Term> anchored;
};

// Terms present (anchored or expanded) in at least two spaces; a single
// space contributes its anchored terms. Throws kEmptyInput for no spaces.
GenericSpace BuildGenericSpace(std::span<const text::MentalSpace> spaces);

struct BlendedSpace {
  std::map<Term, double> scores;  // in [0, 1]
  std::map<Term, Provenance> provenance;
  OntologyGraph subgraph;

  std::set<Term> Terms() const;
  bool Contains(const Term &t) const { return scores.count(t) > 0; }
  std::vector<ontology::TermRecord> Records() const;
};

// Left fold of Convolve over the codebook vectors of a node, edge, node, ...
// path. Throws kMalformedPath for an even-length path.
hrr::HrrVector EncodeSubgraph(std::span<const Term> path, const hrr::Codebook &book);

// cleanup(correlate(probe, trace)).
hrr::CleanupResult DecodeProbe(const hrr::HrrVector &trace, const hrr::HrrVector &probe,
                               const hrr::Codebook &book);

// Keeps edges whose label maps to a vital relation, then drops isolated nodes.
OntologyGraph Renormalize(const OntologyGraph &graph, const VitalMap &vital);

struct WalkParams {
  int max_path = 3;
  double lambda = 0.5;  // weight of the k2 term against the k1 prior
};

// Random-walk transition model over the ontology driven by dK statistics.
//
// A first step from g picks neighbour n with
//   lambda * k2[g,n] / sum_m k2[g,m] + (1 - lambda) * k1[n] / sum_m k1[m]
// (m ranging over neighbours of g; a zero denominator falls back to uniform).
// Later steps a -> b -> c reweight that by (1 + k3[a,b,c] / k2[a,b]) and
// renormalise over the neighbours of b. The raw mass of a target is the sum
// of step-products over all simple paths of 1..max_path edges; probabilities
// are masses divided by the total mass over all targets.
class TransitionModel {
 public:
  TransitionModel(const OntologyGraph &graph, const DkStatistics &dk, WalkParams params);

  // `prev` empty for the first step.
  double StepProbability(const Term &prev, const Term &from, const Term &to) const;
  std::map<Term, double> PathMass(const Term &from) const;
  // Normalised; `from` itself is not a key.
  std::map<Term, double> Distribution(const Term &from) const;
  double Probability(const Term &from, const Term &to) const;

  const OntologyGraph &graph() const { return graph_; }

 private:
  void Walk(std::vector<Term> &path, double mass, std::set<Term> &on_path,
            std::map<Term, double> &out) const;
  void CheckTerm(const Term &t) const;

  const OntologyGraph &graph_;
  const DkStatistics &dk_;
  WalkParams params_;
};

double TransitionProbability(const OntologyGraph &graph, const DkStatistics &dk, const Term &from,
                             const Term &to, WalkParams params = {});

struct ConfabulationOptions {
  double threshold = 0.05;  // relative to the best candidate's score
  WalkParams walk;
  std::set<Term> exclude;   // never offered as candidates
};

// Unnormalised score of every candidate: product over generic terms g of
// P(g -> candidate). Sources are evaluated in parallel.
std::map<Term, double> ScoreCandidates(const std::set<Term> &generic, const OntologyGraph &graph,
                                       const DkStatistics &dk, const ConfabulationOptions &options);

// Generic terms plus the best-scoring candidate and every candidate whose
// score divided by the best is >= threshold.
BlendedSpace Confabulate(const GenericSpace &generic, const OntologyGraph &graph,
                         const DkStatistics &dk, const ConfabulationOptions &options = {});

}  // namespace scriptwriter::blending

#endif  // SCRIPTWRITER_BLENDING_H_

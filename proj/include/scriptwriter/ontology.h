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

#ifndef SCRIPTWRITER_ONTOLOGY_H_
#define SCRIPTWRITER_ONTOLOGY_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scriptwriter/lexicon.h"

namespace scriptwriter::ontology {

using Term = std::string;

inline constexpr char kRelatedTo[] = "related-to";

struct EdgeKey {
  Term src;
  Term dst;
  std::string label;
  auto operator<=>(const EdgeKey &) const = default;
};

struct Edge {
  Term src;
  Term dst;
  std::string label;
  double weight = 0.0;
  friend bool operator==(const Edge &, const Edge &) = default;
};

// Typed term graph. Edges carry a direction for their label but adjacency
// is undirected: a relation links both of its terms.
class OntologyGraph {
 public:
  void AddNode(const Term &term, const std::string &semantic_type = "term");
  // Endpoints must already exist; weight must be finite and non-negative.
  void AddEdge(const Term &src, const Term &dst, const std::string &label, double weight);

  bool HasNode(const Term &term) const { return nodes_.count(term) > 0; }
  const std::string &SemanticType(const Term &term) const;
  const std::map<Term, std::string> &nodes() const { return nodes_; }
  std::vector<Edge> edges() const;
  std::size_t edge_count() const { return edges_.size(); }
  std::optional<double> Weight(const Term &src, const Term &dst, const std::string &label) const;

  const std::set<Term> &Neighbors(const Term &term) const;
  // Edges touching `term`, either direction.
  std::vector<Edge> IncidentEdges(const Term &term) const;
  std::set<std::string> Labels() const;

  OntologyGraph Induced(const std::set<Term> &terms) const;
  bool empty() const { return nodes_.empty(); }

  friend bool operator==(const OntologyGraph &a, const OntologyGraph &b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::map<Term, std::string> nodes_;
  std::map<EdgeKey, double> edges_;
  std::map<Term, std::set<Term>> adjacency_;
};

struct Document {
  std::string name;
  std::string text;
};

using Corpus = std::vector<Document>;

// One plain-text document per regular file, ordered by file name.
Corpus LoadCorpusDir(const std::filesystem::path &dir);

// Relation pattern lexicon: "pattern words<TAB>label".
using RelationLexicon = std::map<std::string, std::string>;
RelationLexicon LoadRelationLexicon(const std::filesystem::path &file);

// Normalized content terms of one sentence, in order (duplicates kept).
struct SentenceTerms {
  std::vector<Term> terms;
  // (before, after, label) for every relation pattern that matched.
  std::vector<std::tuple<Term, Term, std::string>> relations;
};

// Per-document sentence analysis shared by graph building and dK counting.
std::vector<std::vector<SentenceTerms>> AnalyzeCorpus(const Corpus &corpus,
                                                      const Lexicon &lexicon,
                                                      const RelationLexicon &relations);

// Start indices of the sliding windows of `width` sentences over `count`
// sentences: max(1, count - width + 1) windows, stride 1.
std::size_t WindowCount(std::size_t count, std::size_t width);

OntologyGraph BuildFromCorpus(const Corpus &corpus, const Lexicon &lexicon,
                              const RelationLexicon &relations,
                              const std::map<Term, std::string> &semantic_types = {});

using TermPair = std::pair<Term, Term>;         // sorted
using TermTriple = std::array<Term, 3>;         // sorted

struct DkStatistics {
  double k0 = 0.0;
  std::map<Term, double> k1;
  std::map<TermPair, double> k2;
  std::map<TermTriple, double> k3;

  double K2(const Term &a, const Term &b) const;
  double K3(const Term &a, const Term &b, const Term &c) const;
  double K1(const Term &a) const;
  // Every count multiplied by `factor`.
  DkStatistics Scaled(double factor) const;
  friend bool operator==(const DkStatistics &, const DkStatistics &) = default;
};

TermPair MakePair(const Term &a, const Term &b);
TermTriple MakeTriple(const Term &a, const Term &b, const Term &c);

// k1: term frequency; k0: mean of k1; k2: pairs sharing a 2-sentence window;
// k3: triples sharing a 3-sentence window whose three pairs all occur in k2.
// Only terms that are nodes of `graph` are counted.
DkStatistics ExtractDk(const Corpus &corpus, const Lexicon &lexicon,
                       const RelationLexicon &relations, const OntologyGraph &graph);

// "from -> to" inference rule applied during expansion. `from` matches a term
// or a semantic type.
struct RewriteRule {
  std::string from;
  Term to;
};

std::vector<RewriteRule> LoadRewriteRules(const std::filesystem::path &file);

struct Expansion {
  OntologyGraph subgraph;
  std::set<Term> anchored;
  std::set<Term> expanded;
};

// Breadth-first closure from the anchors over edges whose label is in
// `relations`, up to `depth` hops. Throws kUnknownTerm listing any missing
// anchor.
Expansion Expand(const OntologyGraph &graph, const std::set<Term> &anchors,
                 const std::set<std::string> &relations, int depth,
                 const std::vector<RewriteRule> &rules = {});

class TermObjectMap {
 public:
  TermObjectMap() = default;
  explicit TermObjectMap(std::map<Term, std::string> entries) : entries_(std::move(entries)) {}
  static TermObjectMap Load(const std::filesystem::path &file);

  // Throws kUnmappedTerm.
  const std::string &Lookup(const Term &term) const;
  bool Contains(const Term &term) const { return entries_.count(term) > 0; }
  const std::map<Term, std::string> &entries() const { return entries_; }

 private:
  std::map<Term, std::string> entries_;
};

class ValueMap {
 public:
  ValueMap() = default;
  explicit ValueMap(std::map<std::pair<Term, std::string>, double> entries)
      : entries_(std::move(entries)) {}
  // Lines: "fuzzy attribute value".
  static ValueMap Load(const std::filesystem::path &file);

  // Throws kUnknownValue.
  double Map(const Term &fuzzy, const std::string &attribute) const;
  std::optional<double> Find(const Term &fuzzy, const std::string &attribute) const;
  const std::map<std::pair<Term, std::string>, double> &entries() const { return entries_; }

 private:
  std::map<std::pair<Term, std::string>, double> entries_;
};

// --- graph files ----------------------------------------------------------

// Per-term record attached to exported blends.
struct TermRecord {
  Term term;
  double score = 1.0;
  std::string provenance;
  friend bool operator==(const TermRecord &, const TermRecord &) = default;
};

struct GraphFile {
  OntologyGraph graph;
  std::vector<TermRecord> terms;  // empty for a plain ontology
};

// Tab-separated records: "node term type", "edge src dst label weight",
// "term name score provenance". '#' lines are comments.
std::string WriteGraph(const OntologyGraph &graph, const std::vector<TermRecord> &terms = {});
GraphFile ReadGraph(const std::string &text);
GraphFile LoadGraphFile(const std::filesystem::path &file);

// Graphviz rendering; term records colour nodes by provenance.
std::string ToDot(const OntologyGraph &graph, const std::vector<TermRecord> &terms = {});

}  // namespace scriptwriter::ontology

#endif  // SCRIPTWRITER_ONTOLOGY_H_

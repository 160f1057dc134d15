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

#include "scriptwriter/ontology.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scriptwriter/error.h"

namespace scriptwriter::ontology {
namespace {

constexpr char kStage[] = "ontology";

std::string FormatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) out.push_back(field);
  if (!line.empty() && line.back() == '\t') out.emplace_back();
  return out;
}

std::string DotId(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

// Sorted distinct terms present in sentences [first, first + width).
std::vector<Term> WindowTerms(const std::vector<SentenceTerms> &doc, std::size_t first,
                              std::size_t width, const OntologyGraph *restrict_to) {
  std::set<Term> terms;
  for (std::size_t s = first; s < std::min(doc.size(), first + width); ++s) {
    for (const auto &t : doc[s].terms) {
      if (restrict_to == nullptr || restrict_to->HasNode(t)) terms.insert(t);
    }
  }
  return {terms.begin(), terms.end()};
}

}  // namespace

// --- OntologyGraph ----------------------------------------------------------

void OntologyGraph::AddNode(const Term &term, const std::string &semantic_type) {
  if (term.empty()) throw Error(ErrorKind::kParse, kStage, "empty term");
  nodes_[term] = semantic_type;
  adjacency_[term];
}

void OntologyGraph::AddEdge(const Term &src, const Term &dst, const std::string &label,
                            double weight) {
  for (const Term *t : {&src, &dst}) {
    if (!HasNode(*t)) {
      throw Error(ErrorKind::kUnknownTerm, kStage, "edge endpoint '" + *t + "' is not a node");
    }
  }
  if (!std::isfinite(weight) || weight < 0.0) {
    throw Error(ErrorKind::kParse, kStage,
                "edge weight must be finite and non-negative (" + src + " -> " + dst + ")");
  }
  edges_[EdgeKey{src, dst, label}] = weight;
  if (src != dst) {
    adjacency_[src].insert(dst);
    adjacency_[dst].insert(src);
  }
}

const std::string &OntologyGraph::SemanticType(const Term &term) const {
  auto it = nodes_.find(term);
  if (it == nodes_.end()) {
    throw Error(ErrorKind::kUnknownTerm, kStage, "unknown term '" + term + "'");
  }
  return it->second;
}

std::vector<Edge> OntologyGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto &[key, w] : edges_) out.push_back(Edge{key.src, key.dst, key.label, w});
  return out;
}

std::optional<double> OntologyGraph::Weight(const Term &src, const Term &dst,
                                            const std::string &label) const {
  auto it = edges_.find(EdgeKey{src, dst, label});
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

const std::set<Term> &OntologyGraph::Neighbors(const Term &term) const {
  auto it = adjacency_.find(term);
  if (it == adjacency_.end()) {
    throw Error(ErrorKind::kUnknownTerm, kStage, "unknown term '" + term + "'");
  }
  return it->second;
}

std::vector<Edge> OntologyGraph::IncidentEdges(const Term &term) const {
  std::vector<Edge> out;
  auto collect = [&](const Term &a, const Term &b) {
    for (auto it = edges_.lower_bound(EdgeKey{a, b, ""});
         it != edges_.end() && it->first.src == a && it->first.dst == b; ++it) {
      out.push_back(Edge{a, b, it->first.label, it->second});
    }
  };
  for (const auto &n : Neighbors(term)) {
    collect(term, n);
    collect(n, term);
  }
  return out;
}

std::set<std::string> OntologyGraph::Labels() const {
  std::set<std::string> out;
  for (const auto &[key, w] : edges_) out.insert(key.label);
  return out;
}

OntologyGraph OntologyGraph::Induced(const std::set<Term> &terms) const {
  OntologyGraph out;
  for (const auto &t : terms) {
    if (HasNode(t)) out.AddNode(t, nodes_.at(t));
  }
  for (const auto &[key, w] : edges_) {
    if (out.HasNode(key.src) && out.HasNode(key.dst)) out.AddEdge(key.src, key.dst, key.label, w);
  }
  return out;
}

// --- corpus -------------------------------------------------------------------

Corpus LoadCorpusDir(const std::filesystem::path &dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorKind::kIo, kStage, "corpus directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Corpus corpus;
  for (const auto &f : files) corpus.push_back({f.filename().string(), ReadFile(f, kStage)});
  return corpus;
}

RelationLexicon LoadRelationLexicon(const std::filesystem::path &file) {
  RelationLexicon out;
  std::istringstream in(ReadFile(file, kStage));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = SplitTabs(line);
    if (fields.size() != 2 || Tokenize(fields[0]).empty() || fields[1].empty()) {
      throw Error(ErrorKind::kParse, kStage,
                  file.string() + " line " + std::to_string(line_no) +
                      ": expected 'pattern<TAB>label'");
    }
    std::string pattern;
    for (const auto &t : Tokenize(fields[0])) pattern += (pattern.empty() ? "" : " ") + t;
    out[pattern] = fields[1];
  }
  return out;
}

std::vector<std::vector<SentenceTerms>> AnalyzeCorpus(const Corpus &corpus,
                                                      const Lexicon &lexicon,
                                                      const RelationLexicon &relations) {
  // Longest patterns first so "is part of" wins over "part of".
  std::vector<std::pair<std::vector<std::string>, std::string>> patterns;
  for (const auto &[pattern, label] : relations) patterns.emplace_back(Tokenize(pattern), label);
  std::stable_sort(patterns.begin(), patterns.end(), [](const auto &a, const auto &b) {
    return a.first.size() > b.first.size();
  });

  std::vector<std::vector<SentenceTerms>> out;
  for (const auto &doc : corpus) {
    auto &sentences = out.emplace_back();
    for (const auto &sentence : SplitSentences(doc.text)) {
      const auto raw = Tokenize(sentence);
      std::vector<bool> consumed(raw.size(), false);
      struct Match {
        std::size_t begin, end;
        std::string label;
      };
      std::vector<Match> matches;
      for (std::size_t i = 0; i < raw.size();) {
        bool hit = false;
        for (const auto &[words, label] : patterns) {
          if (i + words.size() <= raw.size() &&
              std::equal(words.begin(), words.end(), raw.begin() + static_cast<long>(i))) {
            matches.push_back({i, i + words.size(), label});
            std::fill(consumed.begin() + static_cast<long>(i),
                      consumed.begin() + static_cast<long>(i + words.size()), true);
            i += words.size();
            hit = true;
            break;
          }
        }
        if (!hit) ++i;
      }

      SentenceTerms st;
      std::vector<std::pair<std::size_t, Term>> positioned;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (consumed[i] || lexicon.stop_words.count(raw[i]) || lexicon.IsClosedClass(raw[i])) {
          continue;
        }
        positioned.emplace_back(i, lexicon.Lemma(raw[i]));
        st.terms.push_back(positioned.back().second);
      }
      for (const auto &m : matches) {
        const Term *before = nullptr;
        const Term *after = nullptr;
        for (const auto &[pos, term] : positioned) {
          if (pos < m.begin) before = &term;
          if (pos >= m.end && after == nullptr) after = &term;
        }
        if (before != nullptr && after != nullptr && *before != *after) {
          st.relations.emplace_back(*before, *after, m.label);
        }
      }
      sentences.push_back(std::move(st));
    }
  }
  return out;
}

std::size_t WindowCount(std::size_t count, std::size_t width) {
  if (count == 0) return 0;
  return count > width ? count - width + 1 : 1;
}

OntologyGraph BuildFromCorpus(const Corpus &corpus, const Lexicon &lexicon,
                              const RelationLexicon &relations,
                              const std::map<Term, std::string> &semantic_types) {
  const auto docs = AnalyzeCorpus(corpus, lexicon, relations);
  OntologyGraph graph;
  std::map<TermPair, double> counts;
  // pair -> label -> (count, oriented (src, dst) of first occurrence)
  std::map<TermPair, std::map<std::string, std::pair<int, TermPair>>> labelled;

  for (const auto &doc : docs) {
    for (const auto &sentence : doc) {
      for (const auto &t : sentence.terms) {
        auto it = semantic_types.find(t);
        if (!graph.HasNode(t)) graph.AddNode(t, it == semantic_types.end() ? "term" : it->second);
      }
      for (const auto &[a, b, label] : sentence.relations) {
        auto &slot = labelled[MakePair(a, b)][label];
        if (slot.first++ == 0) slot.second = {a, b};
      }
    }
    for (std::size_t w = 0; w < WindowCount(doc.size(), 2); ++w) {
      const auto terms = WindowTerms(doc, w, 2, nullptr);
      for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) counts[{terms[i], terms[j]}] += 1.0;
      }
    }
  }

  for (const auto &[pair, weight] : counts) {
    auto it = labelled.find(pair);
    if (it == labelled.end()) {
      graph.AddEdge(pair.first, pair.second, kRelatedTo, weight);
      continue;
    }
    const auto *best = &*it->second.begin();
    for (const auto &entry : it->second) {
      if (entry.second.first > best->second.first) best = &entry;
    }
    const auto &[src, dst] = best->second.second;
    graph.AddEdge(src, dst, best->first, weight);
  }
  return graph;
}

// --- dK statistics ------------------------------------------------------------

TermPair MakePair(const Term &a, const Term &b) { return a < b ? TermPair{a, b} : TermPair{b, a}; }

TermTriple MakeTriple(const Term &a, const Term &b, const Term &c) {
  TermTriple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

double DkStatistics::K1(const Term &a) const {
  auto it = k1.find(a);
  return it == k1.end() ? 0.0 : it->second;
}

double DkStatistics::K2(const Term &a, const Term &b) const {
  auto it = k2.find(MakePair(a, b));
  return it == k2.end() ? 0.0 : it->second;
}

double DkStatistics::K3(const Term &a, const Term &b, const Term &c) const {
  auto it = k3.find(MakeTriple(a, b, c));
  return it == k3.end() ? 0.0 : it->second;
}

DkStatistics DkStatistics::Scaled(double factor) const {
  DkStatistics out = *this;
  out.k0 *= factor;
  for (auto &[k, v] : out.k1) v *= factor;
  for (auto &[k, v] : out.k2) v *= factor;
  for (auto &[k, v] : out.k3) v *= factor;
  return out;
}

DkStatistics ExtractDk(const Corpus &corpus, const Lexicon &lexicon,
                       const RelationLexicon &relations, const OntologyGraph &graph) {
  const auto docs = AnalyzeCorpus(corpus, lexicon, relations);
  DkStatistics dk;
  for (const auto &doc : docs) {
    for (const auto &sentence : doc) {
      for (const auto &t : sentence.terms) {
        if (graph.HasNode(t)) dk.k1[t] += 1.0;
      }
    }
    for (std::size_t w = 0; w < WindowCount(doc.size(), 2); ++w) {
      const auto terms = WindowTerms(doc, w, 2, &graph);
      for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) dk.k2[{terms[i], terms[j]}] += 1.0;
      }
    }
  }
  for (const auto &doc : docs) {
    for (std::size_t w = 0; w < WindowCount(doc.size(), 3); ++w) {
      const auto terms = WindowTerms(doc, w, 3, &graph);
      for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
          if (!dk.k2.count({terms[i], terms[j]})) continue;
          for (std::size_t l = j + 1; l < terms.size(); ++l) {
            if (dk.k2.count({terms[i], terms[l]}) && dk.k2.count({terms[j], terms[l]})) {
              dk.k3[{terms[i], terms[j], terms[l]}] += 1.0;
            }
          }
        }
      }
    }
  }
  if (!dk.k1.empty()) {
    double total = 0.0;
    for (const auto &[t, c] : dk.k1) total += c;
    dk.k0 = total / static_cast<double>(dk.k1.size());
  }
  return dk;
}

// --- expansion ---------------------------------------------------------------

std::vector<RewriteRule> LoadRewriteRules(const std::filesystem::path &file) {
  std::vector<RewriteRule> rules;
  std::istringstream in(ReadFile(file, kStage));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) {
      throw Error(ErrorKind::kParse, kStage,
                  file.string() + " line " + std::to_string(line_no) + ": expected 'from -> to'");
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    rules.push_back({trim(line.substr(0, arrow)), trim(line.substr(arrow + 2))});
  }
  return rules;
}

Expansion Expand(const OntologyGraph &graph, const std::set<Term> &anchors,
                 const std::set<std::string> &relations, int depth,
                 const std::vector<RewriteRule> &rules) {
  std::vector<Term> missing;
  for (const auto &a : anchors) {
    if (!graph.HasNode(a)) missing.push_back(a);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto &m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorKind::kUnknownTerm, kStage, "unknown anchor term(s): " + list);
  }

  Expansion out;
  out.anchored = anchors;
  std::set<Term> reached = anchors;
  auto apply_rules = [&](std::set<Term> &frontier) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto &rule : rules) {
        for (const auto &t : std::set<Term>(frontier)) {
          if ((rule.from == t || rule.from == graph.SemanticType(t)) && graph.HasNode(rule.to) &&
              reached.insert(rule.to).second) {
            frontier.insert(rule.to);
            changed = true;
          }
        }
      }
    }
  };

  std::set<Term> frontier = anchors;
  if (depth >= 1) apply_rules(frontier);
  for (int level = 1; level <= depth && !frontier.empty(); ++level) {
    std::set<Term> next;
    for (const auto &t : frontier) {
      for (const auto &e : graph.IncidentEdges(t)) {
        if (!relations.count(e.label)) continue;
        const Term &other = e.src == t ? e.dst : e.src;
        if (reached.insert(other).second) next.insert(other);
      }
    }
    apply_rules(next);
    frontier = std::move(next);
  }
  for (const auto &t : reached) {
    if (!anchors.count(t)) out.expanded.insert(t);
  }
  out.subgraph = graph.Induced(reached);
  return out;
}

// --- maps ---------------------------------------------------------------------

TermObjectMap TermObjectMap::Load(const std::filesystem::path &file) {
  return TermObjectMap(ReadWordMap(file));
}

const std::string &TermObjectMap::Lookup(const Term &term) const {
  auto it = entries_.find(term);
  if (it == entries_.end()) {
    throw Error(ErrorKind::kUnmappedTerm, "scenario", "unmapped term '" + term + "'");
  }
  return it->second;
}

ValueMap ValueMap::Load(const std::filesystem::path &file) {
  std::map<std::pair<Term, std::string>, double> entries;
  std::istringstream in(ReadFile(file, kStage));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string fuzzy, attribute, value, extra;
    if (!(fields >> fuzzy)) continue;
    char *end = nullptr;
    double v = 0.0;
    if (fields >> attribute >> value) v = std::strtod(value.c_str(), &end);
    if (end == nullptr || *end != '\0' || (fields >> extra) || !std::isfinite(v)) {
      throw Error(ErrorKind::kParse, kStage,
                  file.string() + " line " + std::to_string(line_no) +
                      ": expected 'fuzzy attribute number'");
    }
    entries[{fuzzy, attribute}] = v;
  }
  return ValueMap(std::move(entries));
}

std::optional<double> ValueMap::Find(const Term &fuzzy, const std::string &attribute) const {
  auto it = entries_.find({fuzzy, attribute});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double ValueMap::Map(const Term &fuzzy, const std::string &attribute) const {
  if (auto v = Find(fuzzy, attribute)) return *v;
  throw Error(ErrorKind::kUnknownValue, kStage,
              "no value for ('" + fuzzy + "', " + attribute + ")");
}

// --- graph files ------------------------------------------------------------------

std::string WriteGraph(const OntologyGraph &graph, const std::vector<TermRecord> &terms) {
  std::ostringstream out;
  out << "# scriptwriter graph v1\n";
  for (const auto &[term, type] : graph.nodes()) out << "node\t" << term << '\t' << type << '\n';
  for (const auto &e : graph.edges()) {
    out << "edge\t" << e.src << '\t' << e.dst << '\t' << e.label << '\t' << FormatNumber(e.weight)
        << '\n';
  }
  for (const auto &t : terms) {
    out << "term\t" << t.term << '\t' << FormatNumber(t.score) << '\t' << t.provenance << '\n';
  }
  return out.str();
}

GraphFile ReadGraph(const std::string &text) {
  GraphFile out;
  struct PendingEdge {
    int line;
    std::string src, dst, label;
    double weight;
  };
  std::vector<PendingEdge> edges;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](int at, const std::string &why, ErrorKind kind = ErrorKind::kParse) {
    return Error(kind, kStage, "graph line " + std::to_string(at) + ": " + why);
  };
  auto number = [&](const std::string &s) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) throw fail(line_no, "bad number '" + s + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = SplitTabs(line);
    if (f[0] == "node" && (f.size() == 2 || f.size() == 3) && !f[1].empty()) {
      out.graph.AddNode(f[1], f.size() == 3 && !f[2].empty() ? f[2] : "term");
    } else if (f[0] == "edge" && f.size() == 5 && !f[1].empty() && !f[2].empty() && !f[3].empty()) {
      const double w = number(f[4]);
      if (w < 0.0) throw fail(line_no, "negative edge weight");
      edges.push_back({line_no, f[1], f[2], f[3], w});
    } else if (f[0] == "term" && f.size() == 4 && !f[1].empty()) {
      out.terms.push_back({f[1], number(f[2]), f[3]});
    } else {
      throw fail(line_no, "malformed record '" + line + "'");
    }
  }
  for (const auto &e : edges) {
    for (const auto *t : {&e.src, &e.dst}) {
      if (!out.graph.HasNode(*t)) {
        throw fail(e.line, "edge endpoint '" + *t + "' is not a node", ErrorKind::kUnknownTerm);
      }
    }
    out.graph.AddEdge(e.src, e.dst, e.label, e.weight);
  }
  return out;
}

GraphFile LoadGraphFile(const std::filesystem::path &file) {
  try {
    return ReadGraph(ReadFile(file, kStage));
  } catch (const Error &e) {
    throw Error(e.kind(), e.stage(), file.string() + ": " + e.what());
  }
}

std::string ToDot(const OntologyGraph &graph, const std::vector<TermRecord> &terms) {
  std::map<Term, std::string> provenance;
  for (const auto &t : terms) provenance[t.term] = t.provenance;
  std::ostringstream out;
  out << "digraph ontology {\n  node [shape=ellipse];\n";
  for (const auto &[term, type] : graph.nodes()) {
    out << "  " << DotId(term);
    auto it = provenance.find(term);
    if (it != provenance.end()) {
      const std::string colour = it->second == "anchored"   ? "yellow"
                                 : it->second == "expanded" ? "red"
                                                            : "lightblue";
      out << " [style=filled, fillcolor=" << colour << ']';
    }
    out << ";\n";
  }
  for (const auto &e : graph.edges()) {
    out << "  " << DotId(e.src) << " -> " << DotId(e.dst) << " [label=" << DotId(e.label)
        << ", weight=" << FormatNumber(e.weight) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace scriptwriter::ontology

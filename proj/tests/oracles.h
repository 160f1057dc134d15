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

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here shares code with the fast paths it checks.

#ifndef SCRIPTWRITER_TESTS_ORACLES_H_
#define SCRIPTWRITER_TESTS_ORACLES_H_

#include <array>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "scriptwriter/blending.h"
#include "scriptwriter/lexicon.h"
#include "scriptwriter/ontology.h"

namespace scriptwriter::testing {

std::filesystem::path DataDir();
std::filesystem::path TestDataDir();
const Lexicon &DemoLexicon();

// z_j = sum_k x_k y_{(j-k) mod n}.
std::vector<double> DirectConvolve(const std::vector<double> &x, const std::vector<double> &y);
// y_j = sum_k x_k z_{(k+j) mod n}.
std::vector<double> DirectCorrelate(const std::vector<double> &x, const std::vector<double> &z);

// Brute-force dK counts from per-document lists of per-sentence term sets:
// every window start is enumerated and every candidate pair/triple of the
// vocabulary is tested for membership.
struct OracleDk {
  double k0 = 0.0;
  std::map<std::string, double> k1;
  std::map<std::pair<std::string, std::string>, double> k2;
  std::map<std::array<std::string, 3>, double> k3;
};
OracleDk BruteForceDk(const std::vector<std::vector<std::vector<std::string>>> &docs);

// Sentence term lists of a corpus using a whitespace/punctuation splitter,
// the lexicon's word lists and no relation patterns.
std::vector<std::vector<std::vector<std::string>>> OracleTerms(const ontology::Corpus &corpus,
                                                               const Lexicon &lexicon);

// Random connected-or-not graph on `n` nodes with random dK statistics.
struct RandomCase {
  ontology::OntologyGraph graph;
  ontology::DkStatistics dk;
};
RandomCase MakeRandomCase(std::mt19937_64 &rng, int n);

// Transition probabilities by listing every simple path explicitly.
std::map<std::string, double> EnumeratedDistribution(const ontology::OntologyGraph &graph,
                                                     const ontology::DkStatistics &dk,
                                                     const std::string &from, int max_path,
                                                     double lambda);

// Accepted confabulation set by exhaustive scoring (candidates exclude the
// generic terms).
std::set<std::string> EnumeratedAccepted(const ontology::OntologyGraph &graph,
                                         const ontology::DkStatistics &dk,
                                         const std::set<std::string> &generic, int max_path,
                                         double lambda, double threshold);

}  // namespace scriptwriter::testing

#endif  // SCRIPTWRITER_TESTS_ORACLES_H_

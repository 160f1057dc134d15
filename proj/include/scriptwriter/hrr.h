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

#ifndef SCRIPTWRITER_HRR_H_
#define SCRIPTWRITER_HRR_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace scriptwriter::hrr {

inline constexpr std::size_t kDefaultDim = 512;

// Fixed-dimension real vector carrying a holographic encoding. Entries are
// always finite and the dimension is at least one.
class HrrVector {
 public:
  explicit HrrVector(std::vector<double> values);
  static HrrVector Zero(std::size_t dim);
  // Unit impulse at index 0: the identity of Convolve.
  static HrrVector Delta(std::size_t dim);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double Norm() const;
  HrrVector Normalized() const;
  HrrVector operator-() const;

  friend bool operator==(const HrrVector &, const HrrVector &) = default;

 private:
  std::vector<double> values_;
};

// Deterministic Gaussian vector, entries i.i.d. N(0, 1/dim).
HrrVector RandomVector(std::uint64_t seed, std::size_t dim);

// Vector for a named concept: RandomVector keyed by (seed, id).
HrrVector ConceptVector(std::uint64_t seed, std::string_view id, std::size_t dim);

// z_j = sum_k x_k * y_{(j-k) mod n}
HrrVector Convolve(const HrrVector &x, const HrrVector &y);
// y_j = sum_k x_k * z_{(k+j) mod n}
HrrVector Correlate(const HrrVector &x, const HrrVector &z);

HrrVector Superpose(std::span<const HrrVector> vs);

// Cosine similarity. Throws kUndefinedSimilarity for a zero vector.
double Similarity(const HrrVector &x, const HrrVector &y);

// Concept-id -> vector table. Entries are regenerated from the seed, so only
// (dim, seed, ids) need to be persisted. Immutable after construction.
class Codebook {
 public:
  Codebook(std::size_t dim, std::uint64_t seed, const std::vector<std::string> &ids);

  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool Contains(const std::string &id) const { return entries_.count(id) > 0; }
  const HrrVector &at(const std::string &id) const;
  const std::map<std::string, HrrVector> &entries() const { return entries_; }
  std::vector<std::string> ids() const;

  // Text form: "codebook <dim> <seed>" followed by one id per line.
  std::string Serialize() const;
  static Codebook Deserialize(const std::string &text);

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  std::map<std::string, HrrVector> entries_;
};

struct CleanupResult {
  std::string id;
  double similarity;
};

// Nearest codebook entry by cosine similarity; ties go to the
// lexicographically smaller id.
CleanupResult Cleanup(const HrrVector &v, const Codebook &book);

}  // namespace scriptwriter::hrr

#endif  // SCRIPTWRITER_HRR_H_

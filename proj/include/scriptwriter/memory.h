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

#ifndef SCRIPTWRITER_MEMORY_H_
#define SCRIPTWRITER_MEMORY_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scriptwriter/hrr.h"

namespace scriptwriter::memory {

using Tick = std::int64_t;

enum class Level { kSensory, kPrimary, kSecondary, kHigher };

std::string_view LevelName(Level level);
Level ParseLevel(std::string_view name);

// One time-stamped record of a concept. Intensity decays as
// initial_intensity * exp(-(now - recorded_at) / decay_time).
struct Signature {
  hrr::HrrVector vector;
  Tick recorded_at = 0;
  double initial_intensity = 1.0;
  double decay_time = 10.0;

  friend bool operator==(const Signature &, const Signature &) = default;
};

// Throws kTimeTravel when now < recorded_at.
double Intensity(const Signature &sig, Tick now);

// Last tick at which the signature is still >= threshold. Tick arithmetic is
// discrete, so this is floor(recorded_at + d * ln(S1 / threshold)).
Tick LastAliveTick(const Signature &sig, double threshold);

struct ConceptNode {
  std::string id;
  Level level = Level::kPrimary;
  std::vector<Signature> signatures;   // ordered by recorded_at
  std::set<std::string> assembly_parents;  // nodes this concept helped form
  std::set<std::string> members;       // nodes this concept was formed from
  int connection_count = 0;            // |assembly_parents| + |members|
  double base_intensity = 1.0;         // S1 of the first signature

  const hrr::HrrVector &vector() const { return signatures.back().vector; }

  friend bool operator==(const ConceptNode &, const ConceptNode &) = default;
};

struct MemoryConfig {
  std::size_t dim = hrr::kDefaultDim;
  std::uint64_t seed = 0;
  Tick time_window = 5;
  double prune_threshold = 0.1;
  double match_threshold = 0.8;
  double base_decay = 10.0;  // d0: decay time of an unconnected node
  double initial_intensity = 1.0;

  friend bool operator==(const MemoryConfig &, const MemoryConfig &) = default;
};

struct Activation {
  std::string sensory_id;
  Tick tick = 0;
};

struct ObserveResult {
  std::vector<std::string> affected;
  bool created = false;
};

// Concept store with decaying signatures. Single writer; all mutators reject
// a tick earlier than the current clock.
class HolographicMemory {
 public:
  explicit HolographicMemory(MemoryConfig config = {});

  const MemoryConfig &config() const { return config_; }
  Tick clock() const { return clock_; }
  const std::map<std::string, ConceptNode> &nodes() const { return nodes_; }
  bool Contains(const std::string &id) const { return nodes_.count(id) > 0; }
  const ConceptNode &node(const std::string &id) const;

  void AdvanceTo(Tick now);

  // Encodes the activation pattern and either recalls the best-matching
  // primary concept (similarity >= match_threshold) or creates a new one.
  ObserveResult Observe(std::span<const Activation> activations);

  // Forms (or recalls) a higher-level concept from >= 2 live members and
  // reinforces every member.
  std::string Assemble(const std::vector<std::string> &member_ids, Tick now);

  void Reinforce(const std::string &id, Tick now);

  // Drops signatures below the prune threshold and nodes left without any.
  std::vector<std::string> Prune(Tick now);

  bool IsAlive(const std::string &id, Tick now) const;
  double DecayTimeFor(int connection_count) const;
  hrr::HrrVector EncodePattern(std::span<const Activation> activations) const;

  std::string Snapshot() const;
  static HolographicMemory FromSnapshot(const std::string &text);

  friend bool operator==(const HolographicMemory &a, const HolographicMemory &b);

 private:
  std::string NextId();
  void CheckClock(Tick now, const char *op) const;
  void AppendSignature(ConceptNode &node, hrr::HrrVector vector);

  MemoryConfig config_;
  Tick clock_ = 0;
  std::uint64_t next_id_ = 1;
  std::map<std::string, ConceptNode> nodes_;
};

}  // namespace scriptwriter::memory

#endif  // SCRIPTWRITER_MEMORY_H_

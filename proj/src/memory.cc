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

#include "scriptwriter/memory.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "scriptwriter/error.h"

namespace scriptwriter::memory {
namespace {

constexpr char kStage[] = "memory";

std::string Exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double ParseDouble(const std::string &token, int line_no) {
  char *end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw Error(ErrorKind::kParse, kStage,
                "snapshot line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
  return v;
}

}  // namespace

std::string_view LevelName(Level level) {
  switch (level) {
    case Level::kSensory: return "sensory";
    case Level::kPrimary: return "primary";
    case Level::kSecondary: return "secondary";
    case Level::kHigher: return "higher";
  }
  return "primary";
}

Level ParseLevel(std::string_view name) {
  if (name == "sensory") return Level::kSensory;
  if (name == "primary") return Level::kPrimary;
  if (name == "secondary") return Level::kSecondary;
  if (name == "higher") return Level::kHigher;
  throw Error(ErrorKind::kParse, kStage, "unknown level '" + std::string(name) + "'");
}

double Intensity(const Signature &sig, Tick now) {
  if (now < sig.recorded_at) {
    throw Error(ErrorKind::kTimeTravel, kStage,
                "intensity requested at tick " + std::to_string(now) +
                    " before the signature was recorded at " + std::to_string(sig.recorded_at));
  }
  const double elapsed = static_cast<double>(now - sig.recorded_at);
  return sig.initial_intensity * std::exp(-elapsed / sig.decay_time);
}

Tick LastAliveTick(const Signature &sig, double threshold) {
  if (threshold <= 0.0) return std::numeric_limits<Tick>::max();
  if (sig.initial_intensity < threshold) return sig.recorded_at - 1;
  const double horizon = sig.decay_time * std::log(sig.initial_intensity / threshold);
  Tick last = sig.recorded_at + static_cast<Tick>(std::floor(horizon));
  // Guard the floor against rounding right at the boundary.
  while (Intensity(sig, last + 1) >= threshold) ++last;
  while (last >= sig.recorded_at && Intensity(sig, last) < threshold) --last;
  return last;
}

HolographicMemory::HolographicMemory(MemoryConfig config) : config_(config) {
  if (config_.time_window < 0 || config_.prune_threshold < 0.0 || config_.base_decay <= 0.0 ||
      config_.initial_intensity <= 0.0 || config_.match_threshold <= 0.0 ||
      config_.match_threshold >= 1.0) {
    throw Error(ErrorKind::kConfig, kStage, "memory configuration out of range");
  }
}

const ConceptNode &HolographicMemory::node(const std::string &id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw Error(ErrorKind::kUnknownConcept, kStage, "unknown concept '" + id + "'");
  }
  return it->second;
}

void HolographicMemory::CheckClock(Tick now, const char *op) const {
  if (now < clock_) {
    throw Error(ErrorKind::kTimeTravel, kStage,
                std::string(op) + " at tick " + std::to_string(now) + " but clock is at " +
                    std::to_string(clock_));
  }
}

void HolographicMemory::AdvanceTo(Tick now) {
  CheckClock(now, "advance");
  clock_ = now;
}

std::string HolographicMemory::NextId() { return "C" + std::to_string(next_id_++); }

double HolographicMemory::DecayTimeFor(int connection_count) const {
  return config_.base_decay * (1.0 + static_cast<double>(std::max(connection_count, 0)));
}

void HolographicMemory::AppendSignature(ConceptNode &node, hrr::HrrVector vector) {
  node.signatures.push_back(Signature{std::move(vector), clock_, node.base_intensity,
                                      DecayTimeFor(node.connection_count)});
}

bool HolographicMemory::IsAlive(const std::string &id, Tick now) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) return false;
  return std::any_of(it->second.signatures.begin(), it->second.signatures.end(),
                     [&](const Signature &s) {
                       return now >= s.recorded_at &&
                              Intensity(s, now) >= config_.prune_threshold;
                     });
}

hrr::HrrVector HolographicMemory::EncodePattern(std::span<const Activation> activations) const {
  Tick first = activations.front().tick;
  for (const auto &a : activations) first = std::min(first, a.tick);
  std::vector<hrr::HrrVector> bound;
  bound.reserve(activations.size());
  for (const auto &a : activations) {
    const auto sensory = hrr::ConceptVector(config_.seed, "sensory:" + a.sensory_id, config_.dim);
    const auto offset =
        hrr::ConceptVector(config_.seed, "offset:" + std::to_string(a.tick - first), config_.dim);
    bound.push_back(hrr::Convolve(sensory, offset));
  }
  return hrr::Superpose(bound).Normalized();
}

ObserveResult HolographicMemory::Observe(std::span<const Activation> activations) {
  ObserveResult result;
  if (activations.empty()) return result;
  for (const auto &a : activations) {
    if (a.tick > clock_ || a.tick < clock_ - config_.time_window) {
      throw Error(ErrorKind::kStaleSignal, kStage,
                  "activation of '" + a.sensory_id + "' at tick " + std::to_string(a.tick) +
                      " is outside the window [" + std::to_string(clock_ - config_.time_window) +
                      ", " + std::to_string(clock_) + "]");
    }
  }
  auto pattern = EncodePattern(activations);

  ConceptNode *best = nullptr;
  double best_sim = -2.0;
  for (auto &[id, node] : nodes_) {
    if (node.level != Level::kPrimary) continue;
    for (const auto &sig : node.signatures) {
      const double sim = hrr::Similarity(pattern, sig.vector);
      if (sim > best_sim) {
        best_sim = sim;
        best = &node;
      }
    }
  }
  if (best != nullptr && best_sim >= config_.match_threshold) {
    AppendSignature(*best, std::move(pattern));
    result.affected.push_back(best->id);
    return result;
  }
  ConceptNode fresh;
  fresh.id = NextId();
  fresh.level = Level::kPrimary;
  fresh.base_intensity = config_.initial_intensity;
  AppendSignature(fresh, std::move(pattern));
  result.affected.push_back(fresh.id);
  result.created = true;
  nodes_.emplace(fresh.id, std::move(fresh));
  return result;
}

std::string HolographicMemory::Assemble(const std::vector<std::string> &member_ids, Tick now) {
  CheckClock(now, "assemble");
  std::set<std::string> distinct(member_ids.begin(), member_ids.end());
  if (distinct.size() < 2 || distinct.size() != member_ids.size()) {
    throw Error(ErrorKind::kEmptyInput, kStage,
                "assembly needs at least two distinct co-occurring members");
  }
  for (const auto &id : member_ids) {
    if (!Contains(id)) {
      throw Error(ErrorKind::kUnknownConcept, kStage, "assemble: unknown member '" + id + "'");
    }
    if (!IsAlive(id, now)) {
      throw Error(ErrorKind::kDeadConcept, kStage,
                  "assemble: member '" + id + "' is not alive at tick " + std::to_string(now));
    }
  }
  clock_ = now;

  auto vector = nodes_.at(member_ids.front()).vector();
  Level level = nodes_.at(member_ids.front()).level;
  for (std::size_t i = 1; i < member_ids.size(); ++i) {
    const auto &member = nodes_.at(member_ids[i]);
    vector = hrr::Convolve(vector, member.vector());
    level = std::max(level, member.level);
  }
  level = static_cast<Level>(std::min(static_cast<int>(level) + 1,
                                      static_cast<int>(Level::kHigher)));

  ConceptNode *recalled = nullptr;
  double best_sim = -2.0;
  for (auto &[id, node] : nodes_) {
    if (node.members.empty() || distinct.count(id) > 0) continue;
    const double sim = hrr::Similarity(vector, node.vector());
    if (sim > best_sim) {
      best_sim = sim;
      recalled = &node;
    }
  }

  std::string id;
  if (recalled != nullptr && best_sim >= config_.match_threshold) {
    id = recalled->id;
    AppendSignature(*recalled, std::move(vector));
  } else {
    ConceptNode fresh;
    fresh.id = NextId();
    fresh.level = level;
    fresh.base_intensity = config_.initial_intensity;
    fresh.members = distinct;
    fresh.connection_count = static_cast<int>(distinct.size());
    AppendSignature(fresh, std::move(vector));
    id = fresh.id;
    nodes_.emplace(id, std::move(fresh));
  }

  for (const auto &member_id : member_ids) {
    auto &member = nodes_.at(member_id);
    if (member.assembly_parents.insert(id).second) ++member.connection_count;
    auto &parent = nodes_.at(id);
    if (parent.members.insert(member_id).second) ++parent.connection_count;
    Reinforce(member_id, now);
  }
  return id;
}

void HolographicMemory::Reinforce(const std::string &id, Tick now) {
  CheckClock(now, "reinforce");
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw Error(ErrorKind::kUnknownConcept, kStage, "reinforce: unknown concept '" + id + "'");
  }
  if (!IsAlive(id, now)) {
    throw Error(ErrorKind::kDeadConcept, kStage,
                "reinforce: concept '" + id + "' is not alive at tick " + std::to_string(now));
  }
  clock_ = now;
  AppendSignature(it->second, it->second.vector());
}

std::vector<std::string> HolographicMemory::Prune(Tick now) {
  CheckClock(now, "prune");
  clock_ = now;
  std::vector<std::string> removed;
  for (auto &[id, node] : nodes_) {
    std::erase_if(node.signatures, [&](const Signature &s) {
      return Intensity(s, now) < config_.prune_threshold;
    });
    if (node.signatures.empty()) removed.push_back(id);
  }
  for (const auto &id : removed) {
    ConceptNode dead = std::move(nodes_.at(id));
    nodes_.erase(id);
    for (const auto &parent : dead.assembly_parents) {
      auto it = nodes_.find(parent);
      if (it != nodes_.end() && it->second.members.erase(id) > 0) --it->second.connection_count;
    }
    for (const auto &member : dead.members) {
      auto it = nodes_.find(member);
      if (it != nodes_.end() && it->second.assembly_parents.erase(id) > 0) {
        --it->second.connection_count;
      }
    }
  }
  return removed;
}

std::string HolographicMemory::Snapshot() const {
  std::ostringstream out;
  out << "scriptwriter-memory 1\n";
  out << "config " << config_.dim << ' ' << config_.seed << ' ' << config_.time_window << ' '
      << Exact(config_.prune_threshold) << ' ' << Exact(config_.match_threshold) << ' '
      << Exact(config_.base_decay) << ' ' << Exact(config_.initial_intensity) << '\n';
  out << "clock " << clock_ << '\n';
  out << "next_id " << next_id_ << '\n';
  for (const auto &[id, node] : nodes_) {
    out << "node " << id << ' ' << LevelName(node.level) << ' ' << node.connection_count << ' '
        << Exact(node.base_intensity) << '\n';
    for (const auto &p : node.assembly_parents) out << "parent " << p << '\n';
    for (const auto &m : node.members) out << "member " << m << '\n';
    for (const auto &sig : node.signatures) {
      out << "sig " << sig.recorded_at << ' ' << Exact(sig.initial_intensity) << ' '
          << Exact(sig.decay_time);
      for (double x : sig.vector.values()) out << ' ' << Exact(x);
      out << '\n';
    }
  }
  return out.str();
}

HolographicMemory HolographicMemory::FromSnapshot(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string &why) -> Error {
    return Error(ErrorKind::kParse, kStage,
                 "snapshot line " + std::to_string(line_no) + ": " + why);
  };

  if (!std::getline(in, line) || line != "scriptwriter-memory 1") {
    line_no = 1;
    throw fail("missing 'scriptwriter-memory 1' header");
  }
  ++line_no;
  MemoryConfig config;
  Tick clock = 0;
  std::uint64_t next_id = 1;
  std::map<std::string, ConceptNode> nodes;
  ConceptNode *current = nullptr;
  bool have_config = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    const std::string &kind = tok[0];
    try {
      if (kind == "config" && tok.size() == 8) {
        config.dim = std::stoull(tok[1]);
        config.seed = std::stoull(tok[2]);
        config.time_window = std::stoll(tok[3]);
        config.prune_threshold = ParseDouble(tok[4], line_no);
        config.match_threshold = ParseDouble(tok[5], line_no);
        config.base_decay = ParseDouble(tok[6], line_no);
        config.initial_intensity = ParseDouble(tok[7], line_no);
        have_config = true;
      } else if (kind == "clock" && tok.size() == 2) {
        clock = std::stoll(tok[1]);
      } else if (kind == "next_id" && tok.size() == 2) {
        next_id = std::stoull(tok[1]);
      } else if (kind == "node" && tok.size() == 5) {
        ConceptNode node;
        node.id = tok[1];
        node.level = ParseLevel(tok[2]);
        node.connection_count = std::stoi(tok[3]);
        node.base_intensity = ParseDouble(tok[4], line_no);
        current = &nodes.emplace(node.id, std::move(node)).first->second;
      } else if ((kind == "parent" || kind == "member") && tok.size() == 2 && current) {
        (kind == "parent" ? current->assembly_parents : current->members).insert(tok[1]);
      } else if (kind == "sig" && tok.size() == 4 + config.dim && current) {
        std::vector<double> values;
        values.reserve(config.dim);
        for (std::size_t i = 4; i < tok.size(); ++i) values.push_back(ParseDouble(tok[i], line_no));
        current->signatures.push_back(Signature{hrr::HrrVector(std::move(values)),
                                                std::stoll(tok[1]), ParseDouble(tok[2], line_no),
                                                ParseDouble(tok[3], line_no)});
      } else {
        throw fail("unrecognized record '" + kind + "'");
      }
    } catch (const std::logic_error &e) {
      throw fail(std::string("bad field: ") + e.what());
    }
  }
  if (!have_config) throw fail("missing config record");
  for (const auto &[id, node] : nodes) {
    if (node.signatures.empty()) throw fail("node '" + id + "' has no signatures");
  }

  HolographicMemory memory(config);
  memory.clock_ = clock;
  memory.next_id_ = next_id;
  memory.nodes_ = std::move(nodes);
  return memory;
}

bool operator==(const HolographicMemory &a, const HolographicMemory &b) {
  return a.config_ == b.config_ && a.clock_ == b.clock_ && a.next_id_ == b.next_id_ &&
         a.nodes_ == b.nodes_;
}

}  // namespace scriptwriter::memory

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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "scriptwriter/blending.h"
#include "scriptwriter/error.h"
#include "scriptwriter/hrr.h"
#include "scriptwriter/memory.h"
#include "scriptwriter/ontology.h"
#include "scriptwriter/pipeline.h"
#include "scriptwriter/scenario.h"
#include "scriptwriter/text_filter.h"

namespace py = pybind11;
namespace sw = scriptwriter;

namespace {

sw::hrr::HrrVector ToVector(const std::vector<double> &v) { return sw::hrr::HrrVector(v); }

std::vector<double> FromVector(const sw::hrr::HrrVector &v) {
  return {v.values().begin(), v.values().end()};
}

py::object OptionalTerm(const std::optional<std::string> &t) {
  return t ? py::object(py::str(*t)) : py::object(py::none());
}

py::dict StructureDict(const sw::text::UniversalStructure &s) {
  py::dict d;
  d["active"] = s.active_actor.value_or(sw::text::kUnknownActor);
  d["action"] = s.action;
  d["passive"] = OptionalTerm(s.passive_actor);
  d["location"] = OptionalTerm(s.location);
  py::list attrs;
  for (const auto &a : s.attributes) attrs.append(py::make_tuple(a.term, a.value));
  d["attributes"] = attrs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_scriptwriter, m) {
  m.doc() = "Holographic text-to-scene blending (C++ core bindings)";

  static py::exception<sw::Error> error(m, "ScriptWriterError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sw::Error &e) {
      const std::string msg = "[" + e.stage() + "/" + std::string(sw::ErrorKindName(e.kind())) +
                              "] " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  // --- hrr ---
  m.def("random_vector",
        [](std::uint64_t seed, std::size_t dim) { return FromVector(sw::hrr::RandomVector(seed, dim)); },
        py::arg("seed"), py::arg("dim") = sw::hrr::kDefaultDim);
  m.def("convolve", [](const std::vector<double> &x, const std::vector<double> &y) {
    return FromVector(sw::hrr::Convolve(ToVector(x), ToVector(y)));
  });
  m.def("correlate", [](const std::vector<double> &x, const std::vector<double> &z) {
    return FromVector(sw::hrr::Correlate(ToVector(x), ToVector(z)));
  });
  m.def("similarity", [](const std::vector<double> &x, const std::vector<double> &y) {
    return sw::hrr::Similarity(ToVector(x), ToVector(y));
  });
  m.def("superpose", [](const std::vector<std::vector<double>> &vs) {
    std::vector<sw::hrr::HrrVector> vectors;
    for (const auto &v : vs) vectors.push_back(ToVector(v));
    return FromVector(sw::hrr::Superpose(vectors));
  });

  py::class_<sw::hrr::Codebook>(m, "Codebook")
      .def(py::init<std::size_t, std::uint64_t, const std::vector<std::string> &>(),
           py::arg("dim"), py::arg("seed"), py::arg("ids"))
      .def_property_readonly("dim", &sw::hrr::Codebook::dim)
      .def_property_readonly("seed", &sw::hrr::Codebook::seed)
      .def("ids", &sw::hrr::Codebook::ids)
      .def("vector", [](const sw::hrr::Codebook &b, const std::string &id) { return FromVector(b.at(id)); })
      .def("cleanup",
           [](const sw::hrr::Codebook &b, const std::vector<double> &v) {
             const auto r = sw::hrr::Cleanup(ToVector(v), b);
             return py::make_tuple(r.id, r.similarity);
           })
      .def("encode", [](const sw::hrr::Codebook &b, const std::vector<std::string> &path) {
        return FromVector(sw::blending::EncodeSubgraph(path, b));
      })
      .def("serialize", &sw::hrr::Codebook::Serialize);

  // --- memory ---
  m.def("intensity", [](double s1, double decay, std::int64_t recorded_at, std::int64_t now) {
    return sw::memory::Intensity({sw::hrr::HrrVector::Delta(1), recorded_at, s1, decay}, now);
  }, py::arg("s1"), py::arg("decay"), py::arg("recorded_at"), py::arg("now"));

  py::class_<sw::memory::HolographicMemory>(m, "HolographicMemory")
      .def(py::init([](std::size_t dim, std::uint64_t seed, std::int64_t window, double prune,
                       double match, double base_decay) {
             return sw::memory::HolographicMemory({dim, seed, window, prune, match, base_decay, 1.0});
           }),
           py::arg("dim") = 512, py::arg("seed") = 0, py::arg("time_window") = 5,
           py::arg("prune_threshold") = 0.1, py::arg("match_threshold") = 0.8,
           py::arg("base_decay") = 10.0)
      .def_property_readonly("clock", &sw::memory::HolographicMemory::clock)
      .def("advance_to", &sw::memory::HolographicMemory::AdvanceTo)
      .def("observe",
           [](sw::memory::HolographicMemory &mem,
              const std::vector<std::pair<std::string, std::int64_t>> &acts) {
             std::vector<sw::memory::Activation> activations;
             for (const auto &[id, t] : acts) activations.push_back({id, t});
             return mem.Observe(activations).affected;
           })
      .def("assemble", &sw::memory::HolographicMemory::Assemble)
      .def("reinforce", &sw::memory::HolographicMemory::Reinforce)
      .def("prune", &sw::memory::HolographicMemory::Prune)
      .def("node_ids",
           [](const sw::memory::HolographicMemory &mem) {
             std::vector<std::string> ids;
             for (const auto &[id, n] : mem.nodes()) ids.push_back(id);
             return ids;
           })
      .def("signature_count",
           [](const sw::memory::HolographicMemory &mem, const std::string &id) {
             return mem.node(id).signatures.size();
           })
      .def("snapshot", &sw::memory::HolographicMemory::Snapshot)
      .def_static("from_snapshot", &sw::memory::HolographicMemory::FromSnapshot);

  // --- text ---
  py::class_<sw::Lexicon>(m, "Lexicon")
      .def_static("load", &sw::Lexicon::Load, py::arg("directory"));
  m.def("parse_text", [](const std::string &text, const sw::Lexicon &lexicon) {
    const auto parsed = sw::text::ParseText(text, lexicon);
    py::list out;
    for (const auto &c : parsed.clauses) out.append(StructureDict(c.structure));
    return out;
  });

  // --- ontology ---
  m.def("build_ontology",
        [](const std::filesystem::path &corpus_dir, const sw::Lexicon &lexicon,
           const std::filesystem::path &relations) {
          const auto graph = sw::ontology::BuildFromCorpus(
              sw::ontology::LoadCorpusDir(corpus_dir), lexicon,
              sw::ontology::LoadRelationLexicon(relations));
          return sw::ontology::WriteGraph(graph);
        },
        py::arg("corpus_dir"), py::arg("lexicon"), py::arg("relations"),
        "Build the co-occurrence ontology and return it in graph-file format.");
  m.def("dk_statistics",
        [](const std::filesystem::path &corpus_dir, const sw::Lexicon &lexicon,
           const std::filesystem::path &relations) {
          const auto corpus = sw::ontology::LoadCorpusDir(corpus_dir);
          const auto rel = sw::ontology::LoadRelationLexicon(relations);
          const auto graph = sw::ontology::BuildFromCorpus(corpus, lexicon, rel);
          const auto dk = sw::ontology::ExtractDk(corpus, lexicon, rel, graph);
          py::dict k2, k3;
          for (const auto &[p, c] : dk.k2) k2[py::make_tuple(p.first, p.second)] = c;
          for (const auto &[t, c] : dk.k3) k3[py::make_tuple(t[0], t[1], t[2])] = c;
          py::dict out;
          out["k0"] = dk.k0;
          out["k1"] = dk.k1;
          out["k2"] = k2;
          out["k3"] = k3;
          return out;
        },
        py::arg("corpus_dir"), py::arg("lexicon"), py::arg("relations"));

  // --- pipeline ---
  m.def("imagine",
        [](const std::filesystem::path &config_file, const std::string &text,
           std::optional<std::uint64_t> seed) {
          auto config = sw::PipelineConfig::Load(config_file);
          if (seed) config.seed = *seed;
          const auto result = sw::RunPipeline(config, config.corpus, text);
          py::dict blend;
          for (const auto &r : result.blend.Records()) blend[py::str(r.term)] = py::make_tuple(r.score, r.provenance);
          py::dict out;
          out["script"] = sw::scenario::ToJson(result.script);
          out["blend"] = blend;
          out["generic"] = result.diagnostics.generic.shared;
          return out;
        },
        py::arg("config"), py::arg("text"), py::arg("seed") = py::none(),
        "Run the full pipeline; returns the scene script JSON and the blended terms.");
}

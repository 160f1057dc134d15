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

#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "oracles.h"
#include "scriptwriter/blending.h"
#include "scriptwriter/error.h"
#include "scriptwriter/hrr.h"

namespace scriptwriter::hrr {
namespace {

std::vector<double> Values(const HrrVector &v) { return {v.values().begin(), v.values().end()}; }

std::vector<double> Gaussian(std::mt19937_64 &rng, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto &x : v) x = dist(rng);
  return v;
}

nlohmann::json Frozen() {
  std::ifstream in(testing::TestDataDir() / "hrr_montecarlo.json");
  return nlohmann::json::parse(in);
}

template <typename Fn>
ErrorKind KindOf(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kParse;
}

TEST_CASE("convolve and correlate match the direct sums") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 8u, 64u, 129u, 512u}) {
    const auto x = Gaussian(rng, n);
    const auto y = Gaussian(rng, n);
    const auto fast_conv = Values(Convolve(HrrVector(x), HrrVector(y)));
    const auto fast_corr = Values(Correlate(HrrVector(x), HrrVector(y)));
    const auto slow_conv = testing::DirectConvolve(x, y);
    const auto slow_corr = testing::DirectCorrelate(x, y);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(fast_conv[j] - slow_conv[j]) <= 1e-9);
      CHECK(std::abs(fast_corr[j] - slow_corr[j]) <= 1e-9);
    }
  }
}

TEST_CASE("small worked examples") {
  const HrrVector a({1, 2, 3, 4});
  const HrrVector b({0, 1, 0, 0});
  // Binding with a shifted delta rotates by one.
  const auto rotated = Values(Convolve(a, b));
  const std::vector<double> expected{4, 1, 2, 3};
  for (std::size_t i = 0; i < 4; ++i) CHECK(rotated[i] == doctest::Approx(expected[i]).epsilon(1e-12));

  const auto id = Values(Convolve(a, HrrVector::Delta(4)));
  for (std::size_t i = 0; i < 4; ++i) CHECK(id[i] == doctest::Approx(a[i]).epsilon(1e-12));
  const auto zero = Values(Convolve(a, HrrVector::Zero(4)));
  for (double z : zero) CHECK(std::abs(z) < 1e-12);
}

TEST_CASE("convolution is commutative and associative") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const HrrVector x(Gaussian(rng, 32)), y(Gaussian(rng, 32)), z(Gaussian(rng, 32));
    const auto xy = Values(Convolve(x, y));
    const auto yx = Values(Convolve(y, x));
    const auto l = Values(Convolve(Convolve(x, y), z));
    const auto r = Values(Convolve(x, Convolve(y, z)));
    for (std::size_t i = 0; i < 32; ++i) {
      CHECK(std::abs(xy[i] - yx[i]) < 1e-9);
      CHECK(std::abs(l[i] - r[i]) < 1e-9);
    }
  }
}

TEST_CASE("correlation with the delta probe is the identity") {
  const auto v = RandomVector(5, 64);
  const auto back = Values(Correlate(HrrVector::Delta(64), v));
  for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(back[i] - v[i]) < 1e-12);
}

TEST_CASE("input validation") {
  CHECK(KindOf([] { HrrVector(std::vector<double>{}); }) == ErrorKind::kInvalidDimension);
  CHECK(KindOf([] { HrrVector({1.0, NAN}); }) == ErrorKind::kInvalidDimension);
  CHECK(KindOf([] { RandomVector(1, 0); }) == ErrorKind::kInvalidDimension);
  CHECK(KindOf([] { Convolve(HrrVector::Delta(4), HrrVector::Delta(8)); }) ==
        ErrorKind::kDimensionMismatch);
  CHECK(KindOf([] { Correlate(HrrVector::Delta(4), HrrVector::Delta(8)); }) ==
        ErrorKind::kDimensionMismatch);
  CHECK(KindOf([] { Superpose({}); }) == ErrorKind::kEmptyInput);
  CHECK(KindOf([] { Similarity(HrrVector::Zero(4), HrrVector::Delta(4)); }) ==
        ErrorKind::kUndefinedSimilarity);
}

TEST_CASE("random vectors are seeded and have variance 1/n") {
  CHECK(RandomVector(42, 512) == RandomVector(42, 512));
  CHECK_FALSE(RandomVector(42, 512) == RandomVector(43, 512));
  CHECK(ConceptVector(1, "woman", 64) == ConceptVector(1, "woman", 64));
  CHECK_FALSE(ConceptVector(1, "woman", 64) == ConceptVector(1, "man", 64));

  const auto v = RandomVector(9, 4096);
  double mean = 0.0, sq = 0.0;
  for (double x : v.values()) {
    mean += x;
    sq += x * x;
  }
  mean /= 4096.0;
  // Variance 1/n means an expected squared norm of 1.
  CHECK(std::abs(mean) < 0.01);
  CHECK(sq == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("similarity is bounded and symmetric") {
  const auto a = RandomVector(1, 128), b = RandomVector(2, 128);
  CHECK(Similarity(a, a) == doctest::Approx(1.0));
  CHECK(Similarity(a, -a) == doctest::Approx(-1.0));
  CHECK(Similarity(a, b) == doctest::Approx(Similarity(b, a)));
  CHECK(std::abs(Similarity(a, b)) <= 1.0);
}

TEST_CASE("superposition keeps both components recoverable") {
  const Codebook book(512, 7, {"a", "b", "c", "d", "e"});
  const std::vector<HrrVector> parts{book.at("a"), book.at("b")};
  const auto sum = Superpose(parts);
  CHECK(Similarity(sum, book.at("a")) > 0.5);
  CHECK(Similarity(sum, book.at("b")) > 0.5);
  CHECK(std::abs(Similarity(sum, book.at("c"))) < 0.3);
}

TEST_CASE("codebook cleanup") {
  const Codebook book(256, 3, {"ocean", "sky", "woman"});
  CHECK(book.size() == 3);
  CHECK(Cleanup(book.at("sky"), book).id == "sky");
  CHECK(Cleanup(book.at("sky"), book).similarity == doctest::Approx(1.0));
  CHECK(KindOf([&] { book.at("dog"); }) == ErrorKind::kUnknownTerm);
  CHECK(KindOf([] { Cleanup(HrrVector::Delta(4), Codebook(4, 1, {})); }) == ErrorKind::kEmptyInput);
  CHECK(KindOf([&] { Cleanup(HrrVector::Delta(8), book); }) == ErrorKind::kDimensionMismatch);

  const Codebook twins = Codebook::Deserialize(book.Serialize());
  CHECK(twins.ids() == book.ids());
  CHECK(twins.at("ocean") == book.at("ocean"));
}

TEST_CASE("Monte-Carlo unbinding agrees with the frozen numpy run") {
  const auto frozen = Frozen();
  std::vector<std::string> ids;
  for (int i = 0; i < 100; ++i) ids.push_back("t" + std::to_string(i));
  double total = 0.0;
  int hits = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const Codebook book(512, 1000 + t, ids);
    const auto x = RandomVector(5000 + t, 512).Normalized();
    const auto &y = book.at("t17");
    const auto decoded = Correlate(x, Convolve(x, y));
    total += Similarity(decoded, y);
    hits += Cleanup(decoded, book).id == "t17";
  }
  const double mean = total / trials;
  // Sampling error of a 300-trial mean is about 0.0017.
  CHECK(std::abs(mean - frozen["unbind_mean_cosine"].get<double>()) < 0.01);
  CHECK(hits == trials);
}

TEST_CASE("decode_probe inverts 3-term paths over a 50-term codebook") {
  const auto frozen = Frozen();
  std::vector<std::string> ids;
  for (int i = 0; i < 50; ++i) ids.push_back("w" + std::to_string(i));
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pick(0, 49);
  int hits = 0;
  const int trials = 200;
  double min_sim = 1.0;
  for (int t = 0; t < trials; ++t) {
    const Codebook book(512, 300 + t, ids);
    int a = pick(rng), r = pick(rng), b = pick(rng);
    while (r == a) r = pick(rng);
    while (b == a || b == r) b = pick(rng);
    const std::vector<std::string> path{ids[a], ids[r], ids[b]};
    const auto trace = blending::EncodeSubgraph(path, book);
    const auto probe = Convolve(book.at(ids[a]), book.at(ids[r]));
    const auto decoded = blending::DecodeProbe(trace, probe, book);
    hits += decoded.id == ids[b];
    min_sim = std::min(min_sim, decoded.similarity);
  }
  CHECK(hits > 0.95 * trials);
  // Unrelated noise stays below 0.2 (frozen max); true decodes stay above it.
  CHECK(min_sim > frozen["unrelated_max_similarity_max"].get<double>());
}

TEST_CASE("unrelated trace and probe decode to noise") {
  const auto frozen = Frozen();
  std::vector<std::string> ids;
  for (int i = 0; i < 50; ++i) ids.push_back("w" + std::to_string(i));
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Codebook book(512, 900 + t, ids);
    const auto r = blending::DecodeProbe(RandomVector(t, 512), RandomVector(t + 7777, 512), book);
    worst = std::max(worst, r.similarity);
  }
  CHECK(worst < frozen["path3_min_similarity"].get<double>());
}

}  // namespace
}  // namespace scriptwriter::hrr

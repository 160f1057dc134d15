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

#include "scriptwriter/hrr.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>

#include "scriptwriter/error.h"

namespace scriptwriter::hrr {
namespace {

constexpr char kStage[] = "hrr";

void CheckDims(const HrrVector &a, const HrrVector &b, const char *op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, kStage,
                std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()) + ")");
  }
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Uniform in (0, 1].
double UnitOpen(std::mt19937_64 &rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Plans are shared between threads; fftw_execute_dft_* on fresh arrays is
// thread-safe, planning is not.
struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
  }
};

const Plans &PlansFor(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::unique_ptr<Plans>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[n];
  if (!slot) {
    slot = std::make_unique<Plans>();
    std::vector<double> real(n);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    auto *c = reinterpret_cast<fftw_complex *>(spec.data());
    const int size = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    slot->forward = fftw_plan_dft_r2c_1d(size, real.data(), c, flags);
    slot->backward = fftw_plan_dft_c2r_1d(size, c, real.data(), flags | FFTW_DESTROY_INPUT);
  }
  return *slot;
}

std::vector<std::complex<double>> Forward(const HrrVector &v) {
  const Plans &plans = PlansFor(v.dim());
  std::vector<double> in(v.values().begin(), v.values().end());
  std::vector<std::complex<double>> out(v.dim() / 2 + 1);
  fftw_execute_dft_r2c(plans.forward, in.data(), reinterpret_cast<fftw_complex *>(out.data()));
  return out;
}

HrrVector Backward(std::vector<std::complex<double>> spectrum, std::size_t n) {
  const Plans &plans = PlansFor(n);
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex *>(spectrum.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double &x : out) x *= scale;
  return HrrVector(std::move(out));
}

}  // namespace

HrrVector::HrrVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorKind::kInvalidDimension, kStage, "vector dimension must be >= 1");
  }
  for (double x : values_) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::kInvalidDimension, kStage, "vector entries must be finite");
    }
  }
}

HrrVector HrrVector::Zero(std::size_t dim) { return HrrVector(std::vector<double>(dim, 0.0)); }

HrrVector HrrVector::Delta(std::size_t dim) {
  std::vector<double> v(dim, 0.0);
  if (dim > 0) v[0] = 1.0;
  return HrrVector(std::move(v));
}

double HrrVector::Norm() const {
  double sum = 0.0;
  for (double x : values_) sum += x * x;
  return std::sqrt(sum);
}

HrrVector HrrVector::Normalized() const {
  const double norm = Norm();
  if (norm == 0.0) {
    throw Error(ErrorKind::kUndefinedSimilarity, kStage, "cannot normalize a zero vector");
  }
  std::vector<double> out(values_);
  for (double &x : out) x /= norm;
  return HrrVector(std::move(out));
}

HrrVector HrrVector::operator-() const {
  std::vector<double> out(values_);
  for (double &x : out) x = -x;
  return HrrVector(std::move(out));
}

HrrVector RandomVector(std::uint64_t seed, std::size_t dim) {
  if (dim == 0) {
    throw Error(ErrorKind::kInvalidDimension, kStage, "random_vector: dim must be >= 1");
  }
  std::mt19937_64 rng(SplitMix64(seed));
  const double stddev = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<double> values(dim);
  for (std::size_t i = 0; i < dim; i += 2) {
    // Box-Muller; std::normal_distribution is not reproducible across
    // standard library implementations.
    const double r = std::sqrt(-2.0 * std::log(UnitOpen(rng)));
    const double theta = 2.0 * std::numbers::pi * UnitOpen(rng);
    values[i] = stddev * r * std::cos(theta);
    if (i + 1 < dim) values[i + 1] = stddev * r * std::sin(theta);
  }
  return HrrVector(std::move(values));
}

HrrVector ConceptVector(std::uint64_t seed, std::string_view id, std::size_t dim) {
  return RandomVector(SplitMix64(seed) ^ Fnv1a(id), dim);
}

HrrVector Convolve(const HrrVector &x, const HrrVector &y) {
  CheckDims(x, y, "convolve");
  auto fx = Forward(x);
  const auto fy = Forward(y);
  for (std::size_t k = 0; k < fx.size(); ++k) fx[k] *= fy[k];
  return Backward(std::move(fx), x.dim());
}

HrrVector Correlate(const HrrVector &x, const HrrVector &z) {
  CheckDims(x, z, "correlate");
  auto fx = Forward(x);
  const auto fz = Forward(z);
  for (std::size_t k = 0; k < fx.size(); ++k) fx[k] = std::conj(fx[k]) * fz[k];
  return Backward(std::move(fx), x.dim());
}

HrrVector Superpose(std::span<const HrrVector> vs) {
  if (vs.empty()) {
    throw Error(ErrorKind::kEmptyInput, kStage, "superpose: empty vector list");
  }
  std::vector<double> sum(vs.front().values().begin(), vs.front().values().end());
  for (std::size_t i = 1; i < vs.size(); ++i) {
    CheckDims(vs.front(), vs[i], "superpose");
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += vs[i][j];
  }
  return HrrVector(std::move(sum));
}

double Similarity(const HrrVector &x, const HrrVector &y) {
  CheckDims(x, y, "similarity");
  double dot = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) dot += x[i] * y[i];
  const double nx = x.Norm();
  const double ny = y.Norm();
  if (nx == 0.0 || ny == 0.0) {
    throw Error(ErrorKind::kUndefinedSimilarity, kStage, "similarity of a zero vector");
  }
  return std::clamp(dot / (nx * ny), -1.0, 1.0);
}

Codebook::Codebook(std::size_t dim, std::uint64_t seed, const std::vector<std::string> &ids)
    : dim_(dim), seed_(seed) {
  if (dim == 0) {
    throw Error(ErrorKind::kInvalidDimension, kStage, "codebook: dim must be >= 1");
  }
  for (const auto &id : ids) {
    if (!entries_.count(id)) entries_.emplace(id, ConceptVector(seed, id, dim));
  }
}

const HrrVector &Codebook::at(const std::string &id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw Error(ErrorKind::kUnknownTerm, kStage, "codebook has no entry for '" + id + "'");
  }
  return it->second;
}

std::vector<std::string> Codebook::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto &[id, v] : entries_) out.push_back(id);
  return out;
}

std::string Codebook::Serialize() const {
  std::ostringstream out;
  out << "codebook " << dim_ << ' ' << seed_ << '\n';
  for (const auto &[id, v] : entries_) out << id << '\n';
  return out.str();
}

Codebook Codebook::Deserialize(const std::string &text) {
  std::istringstream in(text);
  std::string magic;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  if (!(in >> magic >> dim >> seed) || magic != "codebook") {
    throw Error(ErrorKind::kParse, kStage, "codebook: bad header line");
  }
  std::vector<std::string> ids;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (!line.empty()) ids.push_back(line);
  }
  return Codebook(dim, seed, ids);
}

CleanupResult Cleanup(const HrrVector &v, const Codebook &book) {
  if (book.empty()) {
    throw Error(ErrorKind::kEmptyInput, kStage, "cleanup: empty codebook");
  }
  const std::string *best = nullptr;
  double best_sim = -2.0;
  // Map iteration is lexicographic, so strict '>' keeps the smaller id on ties.
  for (const auto &[id, entry] : book.entries()) {
    const double sim = Similarity(v, entry);
    if (sim > best_sim) {
      best_sim = sim;
      best = &id;
    }
  }
  return {*best, best_sim};
}

}  // namespace scriptwriter::hrr

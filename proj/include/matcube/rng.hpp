// Copyright 2026 The matcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "matcube/cube.hpp"
#include "matcube/states.hpp"

namespace matcube {

/// Philox4x32-10 counter-based generator. Same seed and stream produce the
/// same byte sequence on every platform; distinct streams are independent.
/// Gaussian variates come from an explicit Box-Muller transform rather than
/// std::normal_distribution, whose output is implementation-defined.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  std::uint32_t next_u32() {
    if (buffer_pos_ == 4) {
      buffer_ = block(counter_++);
      buffer_pos_ = 0;
    }
    return buffer_[buffer_pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Philox::below: bound must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v > limit);
    return v % bound;
  }

  /// Standard normal via Box-Muller; variates are produced in pairs and
  /// the spare is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  static std::uint32_t mul_hi(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) >> 32);
  }

  std::array<std::uint32_t, 4> block(std::uint64_t index) const {
    std::array<std::uint32_t, 4> c = {
        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      const std::uint32_t lo0 = kMultiplier0 * c[0];
      const std::uint32_t hi0 = mul_hi(kMultiplier0, c[0]);
      const std::uint32_t lo1 = kMultiplier1 * c[2];
      const std::uint32_t hi1 = mul_hi(kMultiplier1, c[2]);
      c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return c;
  }

  static constexpr std::uint32_t kMultiplier0 = 0xD2511F53u;
  static constexpr std::uint32_t kMultiplier1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// d x d matrix of independent standard complex Gaussians.
inline ComplexMatrix ginibre_matrix(Philox& rng, Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("ginibre_matrix: d must be >= 1");
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return g;
}

/// Full-rank random density matrix G G^dagger / Tr(G G^dagger).
inline DensityMatrix random_density(Philox& rng, Eigen::Index d) {
  ComplexMatrix g = ginibre_matrix(rng, d);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::validated(rho);
}

/// Pure-state density matrix v v^dagger / <v, v>.
inline DensityMatrix random_pure_density(Philox& rng, Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("random_pure_density: d must be >= 1");
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
  ComplexMatrix rho = v * v.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::validated(rho);
}

/// Haar-like random unitary: eigenvector matrix of a random Hermitian
/// (G + G^dagger) / 2.
inline ComplexMatrix random_unitary(Philox& rng, Eigen::Index d) {
  ComplexMatrix g = ginibre_matrix(rng, d);
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  return hermitian_eigendecomposition(h).vectors;
}

/// Random POVM: outcome effects U_i^dagger diag-weights U_i normalized so
/// the collection sums to the identity. Built by drawing one positive
/// matrix per outcome and applying the inverse square root of their sum.
inline Povm random_povm(Philox& rng, Eigen::Index d, int outcomes) {
  if (outcomes < 1) throw std::invalid_argument("random_povm: need >= 1 outcomes");
  std::vector<ComplexMatrix> raw;
  raw.reserve(static_cast<std::size_t>(outcomes));
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < outcomes; ++i) {
    ComplexMatrix g = ginibre_matrix(rng, d);
    ComplexMatrix w = g * g.adjoint();
    raw.push_back(w);
    sum += w;
  }
  HermitianEigensystem es = hermitian_eigendecomposition(sum);
  ComplexMatrix inv_sqrt = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    inv_sqrt += es.vectors.col(i) * es.vectors.col(i).adjoint() / std::sqrt(es.values(i));
  }
  std::vector<ComplexMatrix> effects;
  effects.reserve(raw.size());
  for (const ComplexMatrix& w : raw) {
    ComplexMatrix e = inv_sqrt * w * inv_sqrt;
    effects.push_back(0.5 * (e + e.adjoint()));
  }
  return Povm::validated(effects);
}

/// Table-filling ensembles for random cube functions.
enum class Ensemble {
  /// Independent complex Gaussian entries.
  ginibre,
  /// Random full-rank density matrix at every point.
  density,
  /// Random pure-state (rank-1) density matrix at every point.
  rank1,
  /// Scalar (d = 1) uniform +/-1 values.
  pm1_scalar,
};

inline Ensemble parse_ensemble(const std::string& name) {
  if (name == "ginibre") return Ensemble::ginibre;
  if (name == "density") return Ensemble::density;
  if (name == "rank1") return Ensemble::rank1;
  if (name == "pm1-scalar") return Ensemble::pm1_scalar;
  throw std::invalid_argument("unknown ensemble: " + name);
}

inline const char* ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::ginibre: return "ginibre";
    case Ensemble::density: return "density";
    case Ensemble::rank1: return "rank1";
    case Ensemble::pm1_scalar: return "pm1-scalar";
  }
  throw std::invalid_argument("ensemble_name: invalid enum value");
}

/// Random matrix-valued cube function with independent points.
inline CubeFunction random_cube(Philox& rng, int n, Eigen::Index d, Ensemble e) {
  if (e == Ensemble::pm1_scalar && d != 1) {
    throw std::invalid_argument("random_cube: pm1-scalar ensemble requires d == 1");
  }
  CubeFunction f(n, d);
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    switch (e) {
      case Ensemble::ginibre:
        f.matrix(x) = ginibre_matrix(rng, d);
        break;
      case Ensemble::density:
        f.matrix(x) = random_density(rng, d).matrix();
        break;
      case Ensemble::rank1:
        f.matrix(x) = random_pure_density(rng, d).matrix();
        break;
      case Ensemble::pm1_scalar:
        f.matrix(x)(0, 0) = rng.below(2) == 0 ? 1.0 : -1.0;
        break;
    }
  }
  return f;
}

}  // namespace matcube

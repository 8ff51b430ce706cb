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

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matcube/linalg.hpp"

namespace matcube {

/// Matrix-valued function on the Boolean hypercube {0,1}^n, stored as a
/// dense table of 2^n complex d x d matrices.
///
/// Bit conventions, used consistently across the whole library:
///
///   * Points x of the cube and subsets S of [n] are both encoded as
///     unsigned 32-bit masks. Bit i (value 1 << i, little-endian) is
///     coordinate i, for i = 0..n-1.
///   * Coordinate values are Boolean bits; the +/-1 embedding is
///     x_i |-> (-1)^{x_i}, so bit 0 means +1.
///   * The character chi_S(x) = prod_{i in S} (-1)^{x_i} = (-1)^{|S & x|}.
///   * Fourier coefficients carry the averaging normalization
///         fhat(S) = 2^{-n} sum_x f(x) chi_S(x),
///     so inversion is plain summation: f(x) = sum_S fhat(S) chi_S(x).
///
/// Matrices are stored contiguously (column-major within each matrix) so a
/// transform is cache-friendly butterflies over a single buffer.
class CubeFunction {
 public:
  CubeFunction(int n, Eigen::Index d)
      : n_(n), d_(d) {
    if (n < 0 || n > defaults::max_cube_bits) {
      throw guard_error("CubeFunction: n must be in [0, 24]");
    }
    if (d < 1) {
      throw std::invalid_argument("CubeFunction: d must be >= 1");
    }
    table_.assign(static_cast<std::size_t>(size()) * entries_per_matrix(), {0.0, 0.0});
  }

  int n() const { return n_; }
  Eigen::Index d() const { return d_; }
  /// Number of table points, 2^n.
  std::uint32_t size() const { return std::uint32_t{1} << n_; }

  Eigen::Map<ComplexMatrix> matrix(std::uint32_t x) {
    return {table_.data() + offset(x), d_, d_};
  }
  Eigen::Map<const ComplexMatrix> matrix(std::uint32_t x) const {
    return {table_.data() + offset(x), d_, d_};
  }

  std::complex<double>* data() { return table_.data(); }
  const std::complex<double>* data() const { return table_.data(); }

  bool same_shape(const CubeFunction& other) const {
    return n_ == other.n_ && d_ == other.d_;
  }

 private:
  std::size_t entries_per_matrix() const {
    return static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_);
  }
  std::size_t offset(std::uint32_t x) const {
    if (x >= size()) throw std::out_of_range("CubeFunction: point index out of range");
    return static_cast<std::size_t>(x) * entries_per_matrix();
  }

  int n_;
  Eigen::Index d_;
  std::vector<std::complex<double>> table_;
};

namespace detail {

/// In-place Walsh-Hadamard butterflies applied independently to each of the
/// d^2 matrix entries; no normalization.
inline void walsh_butterflies(CubeFunction& f) {
  const std::uint32_t points = f.size();
  const std::size_t stride =
      static_cast<std::size_t>(f.d()) * static_cast<std::size_t>(f.d());
  std::complex<double>* data = f.data();
  for (int bit = 0; bit < f.n(); ++bit) {
    const std::uint32_t half = std::uint32_t{1} << bit;
    for (std::uint32_t x = 0; x < points; ++x) {
      if (x & half) continue;
      std::complex<double>* a = data + static_cast<std::size_t>(x) * stride;
      std::complex<double>* b = data + static_cast<std::size_t>(x | half) * stride;
      for (std::size_t e = 0; e < stride; ++e) {
        const std::complex<double> u = a[e];
        const std::complex<double> v = b[e];
        a[e] = u + v;
        b[e] = u - v;
      }
    }
  }
}

}  // namespace detail

/// Fourier transform: returns the coefficient table indexed by subset mask,
/// fhat(S) = 2^{-n} sum_x f(x) chi_S(x).
inline CubeFunction fourier_transform(const CubeFunction& f) {
  CubeFunction out = f;
  detail::walsh_butterflies(out);
  const double scale = std::ldexp(1.0, -out.n());
  std::complex<double>* data = out.data();
  const std::size_t total = static_cast<std::size_t>(out.size()) *
                            static_cast<std::size_t>(out.d()) * static_cast<std::size_t>(out.d());
  for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
  return out;
}

/// Inverse transform: f(x) = sum_S fhat(S) chi_S(x). Same butterflies,
/// no normalization.
inline CubeFunction inverse_fourier(const CubeFunction& fhat) {
  CubeFunction out = fhat;
  detail::walsh_butterflies(out);
  return out;
}

/// Parseval defect | 2^{-n} sum_x ||f(x)||_2^2  -  sum_S ||fhat(S)||_2^2 |
/// in normalized Schatten 2-norms. Exact arithmetic gives zero; this is a
/// round-trip diagnostic for the transform.
inline double parseval_gap(const CubeFunction& f) {
  CubeFunction fhat = fourier_transform(f);
  const double dim = static_cast<double>(f.d());
  double lhs = 0.0;
  double rhs = 0.0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    lhs += f.matrix(x).squaredNorm() / dim;
  }
  lhs *= std::ldexp(1.0, -f.n());
  for (std::uint32_t s = 0; s < fhat.size(); ++s) {
    rhs += fhat.matrix(s).squaredNorm() / dim;
  }
  return std::abs(lhs - rhs);
}

/// Noise operator T_rho: attenuates fhat(S) by rho^{|S|} (with 0^0 = 1).
/// Equivalently, T_rho f(x) is the expectation of f over independent
/// per-coordinate bit flips with flip probability (1 - rho)/2.
inline CubeFunction noise_operator(const CubeFunction& f, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("noise_operator: rho must lie in [0, 1]");
  }
  CubeFunction fhat = fourier_transform(f);
  const std::size_t stride =
      static_cast<std::size_t>(f.d()) * static_cast<std::size_t>(f.d());
  std::vector<double> weight(static_cast<std::size_t>(f.n()) + 1, 1.0);
  for (std::size_t k = 1; k < weight.size(); ++k) weight[k] = weight[k - 1] * rho;
  std::complex<double>* data = fhat.data();
  for (std::uint32_t s = 0; s < fhat.size(); ++s) {
    const double w = weight[static_cast<std::size_t>(popcount32(s))];
    std::complex<double>* m = data + static_cast<std::size_t>(s) * stride;
    for (std::size_t e = 0; e < stride; ++e) m[e] *= w;
  }
  return inverse_fourier(fhat);
}

}  // namespace matcube

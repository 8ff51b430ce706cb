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
#include <stdexcept>

#include "matcube/cube.hpp"
#include "matcube/linalg.hpp"

namespace matcube {

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
};

inline void require_interpolation_exponent(double p, const char* who) {
  if (std::isnan(p) || p < 1.0 || p > 2.0) {
    throw std::invalid_argument(std::string(who) + ": p must lie in [1, 2]");
  }
}

/// Two-point inequality in normalized Schatten norms:
///   sqrt(||(A+B)/2||_p^2 + (p-1) ||(A-B)/2||_p^2)
///     <= ((||A||_p^p + ||B||_p^p) / 2)^{1/p},    1 <= p <= 2.
/// This is the single-coordinate case of the hypercontractive inequality;
/// tensoring it across coordinates gives the full statement.
inline Sides two_point_sides(const ComplexMatrix& a, const ComplexMatrix& b, double p) {
  require_interpolation_exponent(p, "two_point_sides");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("two_point_sides: dimension mismatch");
  }
  const double mean_norm = schatten_norm(0.5 * (a + b), p);
  const double diff_norm = schatten_norm(0.5 * (a - b), p);
  Sides s;
  s.lhs = std::sqrt(mean_norm * mean_norm + (p - 1.0) * diff_norm * diff_norm);
  s.rhs = std::pow(0.5 * (std::pow(schatten_norm(a, p), p) +
                          std::pow(schatten_norm(b, p), p)),
                   1.0 / p);
  return s;
}

/// (p-1)^k with the 0^0 = 1 convention, so p = 1 keeps only the empty set.
inline double level_weight(double p, int k) {
  return k == 0 ? 1.0 : std::pow(p - 1.0, k);
}

/// Precomputed singular values of every table entry, so a sweep over many
/// exponents pays for each decomposition once.
struct SpectralTable {
  int n = 0;
  std::vector<RealVector> sigma;
  std::vector<double> clamp;

  double norm(std::size_t idx, double p) const {
    return schatten_from_singular_values(sigma[idx], p, clamp[idx]);
  }
};

inline SpectralTable spectral_table(const CubeFunction& f) {
  SpectralTable t;
  t.n = f.n();
  t.sigma.reserve(f.size());
  t.clamp.reserve(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    t.sigma.push_back(singular_values(f.matrix(x)));
    t.clamp.push_back(defaults::tiny_clamp * max_abs(f.matrix(x)));
  }
  return t;
}

/// Coefficient side from a spectral table of the transformed function.
inline double hc_lhs_from_spectra(const SpectralTable& fhat, double p) {
  require_interpolation_exponent(p, "hc_lhs_from_spectra");
  double acc = 0.0;
  for (std::size_t s = 0; s < fhat.sigma.size(); ++s) {
    const double norm = fhat.norm(s, p);
    acc += level_weight(p, popcount32(static_cast<std::uint32_t>(s))) * norm * norm;
  }
  return std::sqrt(acc);
}

/// Function side from a spectral table of the original function.
inline double hc_rhs_from_spectra(const SpectralTable& f, double p) {
  require_interpolation_exponent(p, "hc_rhs_from_spectra");
  double acc = 0.0;
  for (std::size_t x = 0; x < f.sigma.size(); ++x) {
    acc += std::pow(f.norm(x, p), p);
  }
  return std::pow(std::ldexp(acc, -f.n), 1.0 / p);
}

/// Coefficient side sqrt(sum_S (p-1)^{|S|} ||fhat(S)||_p^2), evaluated on an
/// already-transformed table so several exponents can share one transform.
inline double hc_lhs_from_coefficients(const CubeFunction& fhat, double p) {
  require_interpolation_exponent(p, "hc_lhs_from_coefficients");
  double acc = 0.0;
  for (std::uint32_t s = 0; s < fhat.size(); ++s) {
    const double norm = schatten_norm(fhat.matrix(s), p);
    acc += level_weight(p, popcount32(s)) * norm * norm;
  }
  return std::sqrt(acc);
}

/// Function side (2^{-n} sum_x ||f(x)||_p^p)^{1/p}.
inline double hc_rhs(const CubeFunction& f, double p) {
  require_interpolation_exponent(p, "hc_rhs");
  double acc = 0.0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    acc += std::pow(schatten_norm(f.matrix(x), p), p);
  }
  return std::pow(std::ldexp(acc, -f.n()), 1.0 / p);
}

/// Hypercontractive inequality for matrix-valued cube functions:
///   sqrt(sum_S (p-1)^{|S|} ||fhat(S)||_p^2)
///     <= (2^{-n} sum_x ||f(x)||_p^p)^{1/p},    1 <= p <= 2.
/// At p = 2 the two sides agree (Parseval). Exponents above 2 are refused;
/// the inequality is specific to the interpolation range.
inline Sides hypercontractive_sides(const CubeFunction& f, double p) {
  require_interpolation_exponent(p, "hypercontractive_sides");
  Sides s;
  s.lhs = hc_lhs_from_coefficients(fourier_transform(f), p);
  s.rhs = hc_rhs(f, p);
  return s;
}

/// Mixed-norm exchange gap. For a real table v(i, j) and 1 <= q1 < q2 <= inf,
/// with all norms normalized by dimension:
///   lhs = q2-norm over i of (q1-norm over j of row i)
///   rhs = q1-norm over j of (q2-norm over i of column j)
/// and lhs <= rhs. Returns rhs - lhs.
inline double minkowski_gap(const Eigen::MatrixXd& values, double q1, double q2) {
  if (values.size() == 0) {
    throw std::invalid_argument("minkowski_gap: empty table");
  }
  if (std::isnan(q1) || std::isnan(q2) || q1 < 1.0 || !(q1 < q2)) {
    throw std::invalid_argument("minkowski_gap: need 1 <= q1 < q2 <= inf");
  }
  Eigen::VectorXd row_norms(values.rows());
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    row_norms(i) = normalized_vector_norm(values.row(i).transpose(), q1);
  }
  Eigen::VectorXd col_norms(values.cols());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    col_norms(j) = normalized_vector_norm(values.col(j), q2);
  }
  const double lhs = normalized_vector_norm(row_norms, q2);
  const double rhs = normalized_vector_norm(col_norms, q1);
  return rhs - lhs;
}

}  // namespace matcube

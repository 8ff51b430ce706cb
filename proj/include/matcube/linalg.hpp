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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "matcube/common.hpp"

namespace matcube {

using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Infinity, for the p = inf Schatten norm.
inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
  }
}

/// Max entry deviation from m = m^dagger.
inline double hermitian_deviation(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = defaults::tolerance) {
  return hermitian_deviation(m) <= tol * (1.0 + max_abs(m));
}

/// Eigenvalues sorted descending with matching eigenvector columns.
struct HermitianEigensystem {
  RealVector values;
  ComplexMatrix vectors;
};

/// Full eigendecomposition of a Hermitian matrix. Eigenvalues are returned
/// in descending order (ties keep the solver's ascending-order positions,
/// reversed). Throws std::invalid_argument if the input deviates from
/// Hermitian by more than tol relative to its largest entry.
inline HermitianEigensystem hermitian_eigendecomposition(
    const ComplexMatrix& m, double tol = defaults::tolerance) {
  require_square(m, "hermitian_eigendecomposition");
  if (!is_hermitian(m, tol)) {
    throw std::invalid_argument("hermitian_eigendecomposition: matrix is not Hermitian within tolerance");
  }
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigendecomposition: eigensolver failed to converge");
  }
  HermitianEigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// Eigenvalues of a Hermitian matrix, descending.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& m,
                                        double tol = defaults::tolerance) {
  return hermitian_eigendecomposition(m, tol).values;
}

/// Singular values, descending. Hermitian inputs short-circuit to sorted
/// absolute eigenvalues; general inputs go through a full SVD.
inline RealVector singular_values(const ComplexMatrix& m) {
  require_square(m, "singular_values");
  if (hermitian_deviation(m) <= defaults::tiny_clamp * (1.0 + max_abs(m))) {
    RealVector eigs = hermitian_eigenvalues(m);
    std::vector<double> mags(eigs.data(), eigs.data() + eigs.size());
    for (double& v : mags) v = std::abs(v);
    std::stable_sort(mags.begin(), mags.end(), std::greater<double>());
    return Eigen::Map<RealVector>(mags.data(), static_cast<Eigen::Index>(mags.size()));
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

/// Normalized Schatten p-norm from a precomputed descending singular value
/// vector. Values below clamp are treated as exactly zero before fractional
/// powers; the sum is scaled by the top singular value so large p cannot
/// overflow.
inline double schatten_from_singular_values(const RealVector& sigma, double p,
                                            double clamp) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("schatten_from_singular_values: p must satisfy p >= 1");
  }
  if (sigma.size() == 0) {
    throw std::invalid_argument("schatten_from_singular_values: empty spectrum");
  }
  const double top = sigma(0);
  if (top == 0.0 || top < clamp) return 0.0;
  if (p == inf) return top;
  const double d = static_cast<double>(sigma.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    double s = sigma(i) < clamp ? 0.0 : sigma(i);
    if (s == 0.0) continue;
    acc += std::pow(s / top, p);
  }
  return top * std::pow(acc / d, 1.0 / p);
}

/// Normalized Schatten p-norm: ((1/d) sum_i sigma_i^p)^(1/p), and the
/// largest singular value at p = inf. Normalization makes the norm
/// nondecreasing in p. Values below tiny_clamp * max entry magnitude are
/// clamped to zero before fractional powers.
inline double schatten_norm(const ComplexMatrix& m, double p) {
  require_square(m, "schatten_norm");
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("schatten_norm: p must satisfy p >= 1");
  }
  return schatten_from_singular_values(singular_values(m), p,
                                       defaults::tiny_clamp * max_abs(m));
}

/// Trace norm: plain (unnormalized) sum of singular values,
/// equal to d times the normalized Schatten 1-norm.
inline double trace_norm(const ComplexMatrix& m) {
  return singular_values(m).sum();
}

/// Re Tr(A B) without forming the product.
template <class MA, class MB>
double real_trace_product(const Eigen::MatrixBase<MA>& a,
                          const Eigen::MatrixBase<MB>& b) {
  return a.transpose().cwiseProduct(b).sum().real();
}

/// Normalized vector p-norm over counting measure: ((1/n) sum |v_i|^p)^(1/p).
inline double normalized_vector_norm(const Eigen::VectorXd& v, double p) {
  if (v.size() == 0) {
    throw std::invalid_argument("normalized_vector_norm: empty vector");
  }
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("normalized_vector_norm: p must satisfy p >= 1");
  }
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  if (p == inf) return top;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    acc += std::pow(std::abs(v(i)) / top, p);
  }
  return top * std::pow(acc / static_cast<double>(v.size()), 1.0 / p);
}

}  // namespace matcube

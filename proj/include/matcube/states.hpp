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
#include <utility>
#include <vector>

#include "matcube/linalg.hpp"

namespace matcube {

/// Hermitian, positive semidefinite, unit-trace matrix. Validation is
/// explicit: the factory checks all three properties against a relative
/// tolerance and rejects otherwise.
class DensityMatrix {
 public:
  static DensityMatrix validated(ComplexMatrix rho,
                                 double tol = defaults::tolerance) {
    require_square(rho, "DensityMatrix");
    const double scale = 1.0 + max_abs(rho);
    if (hermitian_deviation(rho) > tol * scale) {
      throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(rho.trace().real() - 1.0) > tol * scale ||
        std::abs(rho.trace().imag()) > tol * scale) {
      throw std::invalid_argument("DensityMatrix: trace is not 1 within tolerance");
    }
    RealVector eigs = hermitian_eigenvalues(rho, tol);
    if (eigs(eigs.size() - 1) < -tol * scale) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
    return DensityMatrix(std::move(rho), tol);
  }

  const ComplexMatrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  double tolerance() const { return tol_; }

 private:
  DensityMatrix(ComplexMatrix rho, double tol) : rho_(std::move(rho)), tol_(tol) {}
  ComplexMatrix rho_;
  double tol_;
};

/// Finite collection of Hermitian PSD matrices summing to the identity
/// (within tolerance).
class Povm {
 public:
  static Povm validated(std::vector<ComplexMatrix> outcomes,
                        double tol = defaults::tolerance) {
    if (outcomes.empty()) {
      throw std::invalid_argument("Povm: needs at least one outcome");
    }
    const Eigen::Index d = outcomes.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& e : outcomes) {
      require_square(e, "Povm");
      if (e.rows() != d) {
        throw std::invalid_argument("Povm: outcomes have mismatched dimensions");
      }
      const double scale = 1.0 + max_abs(e);
      if (hermitian_deviation(e) > tol * scale) {
        throw std::invalid_argument("Povm: outcome not Hermitian within tolerance");
      }
      RealVector eigs = hermitian_eigenvalues(e, tol);
      if (eigs(eigs.size() - 1) < -tol * scale) {
        throw std::invalid_argument("Povm: outcome has negative eigenvalue beyond tolerance");
      }
      sum += e;
    }
    if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol * (1.0 + max_abs(sum))) {
      throw std::invalid_argument("Povm: outcomes do not sum to identity within tolerance");
    }
    return Povm(std::move(outcomes), tol);
  }

  const std::vector<ComplexMatrix>& outcomes() const { return outcomes_; }
  const ComplexMatrix& outcome(std::size_t i) const { return outcomes_.at(i); }
  std::size_t size() const { return outcomes_.size(); }
  Eigen::Index dim() const { return outcomes_.front().rows(); }
  double tolerance() const { return tol_; }

 private:
  Povm(std::vector<ComplexMatrix> outcomes, double tol)
      : outcomes_(std::move(outcomes)), tol_(tol) {}
  std::vector<ComplexMatrix> outcomes_;
  double tol_;
};

/// Born-rule outcome probability Tr(E rho), real part.
inline double outcome_probability(const ComplexMatrix& effect,
                                  const DensityMatrix& rho) {
  return (effect * rho.matrix()).trace().real();
}

struct HelstromResult {
  /// Optimal distinguishing bias: half the trace norm of rho0 - rho1.
  double bias = 0.0;
  /// Two-outcome measurement achieving the bias. Outcome 0 projects onto the
  /// nonnegative eigenspace of rho0 - rho1, outcome 1 onto the negative one.
  std::vector<ComplexMatrix> outcomes;

  Povm povm(double tol = defaults::tolerance) const {
    return Povm::validated(outcomes, tol);
  }
};

/// Optimal two-outcome discrimination between two states: success
/// probability 1/2 + bias with bias = ||rho0 - rho1||_tr / 2, achieved by
/// the eigenspace projectors of the difference.
inline HelstromResult helstrom_measurement(const DensityMatrix& rho0,
                                           const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) {
    throw std::invalid_argument("helstrom_measurement: dimension mismatch");
  }
  ComplexMatrix delta = rho0.matrix() - rho1.matrix();
  HermitianEigensystem es = hermitian_eigendecomposition(delta);
  const Eigen::Index d = delta.rows();

  HelstromResult out;
  out.bias = 0.5 * es.values.cwiseAbs().sum();
  ComplexMatrix plus = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (es.values(i) >= 0.0) {
      plus += es.vectors.col(i) * es.vectors.col(i).adjoint();
    }
  }
  out.outcomes.push_back(plus);
  out.outcomes.push_back(ComplexMatrix::Identity(d, d) - plus);
  return out;
}

inline double helstrom_bias(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) {
    throw std::invalid_argument("helstrom_bias: dimension mismatch");
  }
  return 0.5 * trace_norm(rho0.matrix() - rho1.matrix());
}

}  // namespace matcube

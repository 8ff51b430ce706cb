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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "matcube/linalg.hpp"
#include "matcube/rng.hpp"
#include "matcube/states.hpp"
#include "support/oracles.hpp"

using matcube::ComplexMatrix;
using matcube::RealVector;

namespace {

ComplexMatrix random_hermitian(matcube::Philox& rng, Eigen::Index d) {
  ComplexMatrix g = matcube::ginibre_matrix(rng, d);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("hermitian eigendecomposition on fixed matrices") {
  const ComplexMatrix eye = ComplexMatrix::Identity(3, 3);
  const auto sys = matcube::hermitian_eigendecomposition(eye);
  for (int i = 0; i < 3; ++i) REQUIRE(sys.values(i) == Catch::Approx(1.0).margin(1e-14));

  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 5.0;
  diag(1, 1) = 2.0;
  diag(2, 2) = -1.0;
  const auto dsys = matcube::hermitian_eigendecomposition(diag);
  REQUIRE(dsys.values(0) == Catch::Approx(5.0).margin(1e-13));
  REQUIRE(dsys.values(1) == Catch::Approx(2.0).margin(1e-13));
  REQUIRE(dsys.values(2) == Catch::Approx(-1.0).margin(1e-13));
}

TEST_CASE("hermitian eigendecomposition on random input") {
  matcube::Philox rng(11, 0);
  const Eigen::Index d = 6;
  const ComplexMatrix m = random_hermitian(rng, d);
  const auto sys = matcube::hermitian_eigendecomposition(m);

  REQUIRE(sys.values.sum() == Catch::Approx(m.trace().real()).margin(1e-10));
  for (Eigen::Index i = 0; i + 1 < d; ++i) REQUIRE(sys.values(i) >= sys.values(i + 1));

  const ComplexMatrix rebuilt =
      sys.vectors * sys.values.asDiagonal() * sys.vectors.adjoint();
  REQUIRE(matcube::max_abs(rebuilt - m) <= 1e-10);
  const ComplexMatrix gram = sys.vectors.adjoint() * sys.vectors;
  REQUIRE(matcube::max_abs(gram - ComplexMatrix::Identity(d, d)) <= 1e-12);

  const double scale =
      std::pow(2.0 * static_cast<double>(d) * matcube::max_abs(m),
               static_cast<double>(d - 1));
  for (Eigen::Index i = 0; i < d; ++i) {
    REQUIRE(std::abs(oracles::char_poly(m, sys.values(i))) <= 1e-9 * scale);
  }
}

TEST_CASE("hermitian eigendecomposition rejects non-hermitian input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  REQUIRE_THROWS_AS(matcube::hermitian_eigendecomposition(m), std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::hermitian_eigenvalues(m), std::invalid_argument);
}

TEST_CASE("singular values on fixed matrices") {
  const RealVector id4 = matcube::singular_values(ComplexMatrix::Identity(4, 4));
  for (int i = 0; i < 4; ++i) REQUIRE(id4(i) == Catch::Approx(1.0).margin(1e-14));

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = -4.0;
  const RealVector sv = matcube::singular_values(diag);
  REQUIRE(sv(0) == Catch::Approx(4.0).margin(1e-14));
  REQUIRE(sv(1) == Catch::Approx(3.0).margin(1e-14));

  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  const RealVector nsv = matcube::singular_values(nil);
  REQUIRE(nsv(0) == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(nsv(1) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("singular values match power iteration") {
  matcube::Philox rng(12, 0);
  const ComplexMatrix m = matcube::ginibre_matrix(rng, 5);
  const RealVector sv = matcube::singular_values(m);
  const auto ref = oracles::power_iteration_singulars(m, 5);
  REQUIRE(ref.size() == 5);
  for (int i = 0; i < 5; ++i) {
    REQUIRE(sv(i) == Catch::Approx(ref[static_cast<std::size_t>(i)]).margin(1e-6));
  }
}

TEST_CASE("schatten norm fixed values") {
  ComplexMatrix proj = ComplexMatrix::Zero(8, 8);
  proj(0, 0) = 1.0;
  REQUIRE(matcube::schatten_norm(proj, 1.5) == Catch::Approx(0.25).margin(1e-12));

  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    REQUIRE(matcube::schatten_norm(ComplexMatrix::Identity(5, 5), p) ==
            Catch::Approx(1.0).margin(1e-13));
  }
  REQUIRE(matcube::schatten_norm(ComplexMatrix::Zero(3, 3), 2.0) == 0.0);

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = -4.0;
  REQUIRE(matcube::schatten_norm(diag, matcube::inf) == Catch::Approx(4.0).margin(1e-14));
  REQUIRE(matcube::schatten_norm(diag, 1.0) == Catch::Approx(3.5).margin(1e-14));

  REQUIRE_THROWS_AS(matcube::schatten_norm(diag, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::schatten_norm(diag, -1.0), std::invalid_argument);
}

TEST_CASE("schatten norm is monotone in p") {
  matcube::Philox rng(13, 0);
  const ComplexMatrix m = matcube::ginibre_matrix(rng, 6);
  double prev = 0.0;
  for (double p : {1.0, 1.2, 1.5, 2.0, 3.0, 8.0}) {
    const double cur = matcube::schatten_norm(m, p);
    REQUIRE(cur >= prev - 1e-12);
    prev = cur;
  }
  REQUIRE(matcube::schatten_norm(m, matcube::inf) >= prev - 1e-12);
}

TEST_CASE("trace norm fixed and derived values") {
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = -4.0;
  REQUIRE(matcube::trace_norm(diag) == Catch::Approx(7.0).margin(1e-13));
  REQUIRE(matcube::trace_norm(ComplexMatrix::Identity(6, 6)) ==
          Catch::Approx(6.0).margin(1e-13));

  matcube::Philox rng(14, 0);
  Eigen::VectorXcd v(4);
  for (int i = 0; i < 4; ++i) v(i) = rng.complex_gaussian();
  v.normalize();
  const ComplexMatrix rank1 = v * v.adjoint();
  REQUIRE(matcube::trace_norm(rank1) == Catch::Approx(1.0).margin(1e-12));

  const ComplexMatrix m = matcube::ginibre_matrix(rng, 5);
  REQUIRE(matcube::trace_norm(m) ==
          Catch::Approx(5.0 * matcube::schatten_norm(m, 1.0)).margin(1e-11));
}

TEST_CASE("schatten norm is unitarily invariant") {
  matcube::Philox rng(15, 0);
  const ComplexMatrix m = matcube::ginibre_matrix(rng, 5);
  const ComplexMatrix u = matcube::random_unitary(rng, 5);
  const ComplexMatrix w = matcube::random_unitary(rng, 5);
  for (double p : {1.0, 1.5, 2.0, 3.0, matcube::inf}) {
    REQUIRE(matcube::schatten_norm(u * m * w, p) ==
            Catch::Approx(matcube::schatten_norm(m, p)).margin(1e-9));
  }
}

TEST_CASE("schatten norm basic norm axioms") {
  matcube::Philox rng(16, 0);
  const ComplexMatrix a = matcube::ginibre_matrix(rng, 4);
  const ComplexMatrix b = matcube::ginibre_matrix(rng, 4);
  for (double p : {1.0, 1.3, 2.0, 4.0}) {
    REQUIRE(matcube::schatten_norm(a + b, p) <=
            matcube::schatten_norm(a, p) + matcube::schatten_norm(b, p) + 1e-11);
    REQUIRE(matcube::schatten_norm(a, p) ==
            Catch::Approx(matcube::schatten_norm(a.adjoint().eval(), p)).margin(1e-11));
    REQUIRE(matcube::schatten_norm(-2.0 * a, p) ==
            Catch::Approx(2.0 * matcube::schatten_norm(a, p)).margin(1e-11));
  }
}

TEST_CASE("schatten 2 parallelogram identity") {
  matcube::Philox rng(17, 0);
  const ComplexMatrix a = matcube::ginibre_matrix(rng, 6);
  const ComplexMatrix b = matcube::ginibre_matrix(rng, 6);
  const auto sq = [](double x) { return x * x; };
  const double lhs = sq(matcube::schatten_norm(0.5 * (a + b), 2.0)) +
                     sq(matcube::schatten_norm(0.5 * (a - b), 2.0));
  const double rhs =
      0.5 * (sq(matcube::schatten_norm(a, 2.0)) + sq(matcube::schatten_norm(b, 2.0)));
  REQUIRE(lhs == Catch::Approx(rhs).margin(1e-10));
}

TEST_CASE("normalized vector norm") {
  RealVector ones = RealVector::Ones(7);
  for (double p : {1.0, 2.0, 3.0}) {
    REQUIRE(matcube::normalized_vector_norm(ones, p) == Catch::Approx(1.0).margin(1e-14));
  }
  RealVector v(2);
  v << 2.0, 0.0;
  REQUIRE(matcube::normalized_vector_norm(v, 1.0) == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(matcube::normalized_vector_norm(v, 2.0) ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-14));
  REQUIRE(matcube::normalized_vector_norm(v, matcube::inf) ==
          Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("helstrom bias on fixed state pairs") {
  ComplexMatrix pure0 = ComplexMatrix::Zero(2, 2);
  pure0(0, 0) = 1.0;
  const auto rho0 = matcube::DensityMatrix::validated(pure0);
  const auto rho1 =
      matcube::DensityMatrix::validated(0.5 * ComplexMatrix::Identity(2, 2));
  REQUIRE(matcube::helstrom_bias(rho0, rho0) == Catch::Approx(0.0).margin(1e-13));
  REQUIRE(matcube::helstrom_bias(rho0, rho1) == Catch::Approx(0.5).margin(1e-13));

  ComplexMatrix pure1 = ComplexMatrix::Zero(2, 2);
  pure1(1, 1) = 1.0;
  const auto rho_orth = matcube::DensityMatrix::validated(pure1);
  REQUIRE(matcube::helstrom_bias(rho0, rho_orth) == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("helstrom measurement achieves its bias under the Born rule") {
  matcube::Philox rng(18, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const matcube::DensityMatrix rho0 = matcube::random_density(rng, 4);
    const matcube::DensityMatrix rho1 = matcube::random_density(rng, 4);
    const auto result = matcube::helstrom_measurement(rho0, rho1);
    REQUIRE(result.bias ==
            Catch::Approx(0.5 * matcube::trace_norm(rho0.matrix() - rho1.matrix()))
                .margin(1e-12));
    const double achieved = oracles::povm_bias(result.outcomes[0], result.outcomes[1],
                                               rho0.matrix(), rho1.matrix());
    REQUIRE(achieved == Catch::Approx(result.bias).margin(1e-9));
    REQUIRE_NOTHROW(result.povm(1e-9));
  }
}

TEST_CASE("density matrix validation") {
  ComplexMatrix good = 0.5 * ComplexMatrix::Identity(2, 2);
  REQUIRE_NOTHROW(matcube::DensityMatrix::validated(good, 1e-9));

  ComplexMatrix bad_trace = ComplexMatrix::Identity(2, 2);
  REQUIRE_THROWS_AS(matcube::DensityMatrix::validated(bad_trace, 1e-9),
                    std::invalid_argument);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  REQUIRE_THROWS_AS(matcube::DensityMatrix::validated(neg, 1e-9),
                    std::invalid_argument);
}

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
#include <vector>

#include "matcube/bounds.hpp"
#include "matcube/common.hpp"
#include "support/oracles.hpp"

TEST_CASE("block disjoint probability on fixed instances") {
  const auto unit = matcube::block_disjoint_probability(2, 1, 2);
  REQUIRE(unit.exact == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(unit.lower_bound == 0.0);

  const auto pairs = matcube::block_disjoint_probability(3, 2, 2);
  REQUIRE(pairs.exact == Catch::Approx(0.8).margin(1e-15));
  REQUIRE(pairs.lower_bound == Catch::Approx(1.0 / 9.0).margin(1e-15));

  const auto none = matcube::block_disjoint_probability(5, 4, 0);
  REQUIRE(none.exact == 1.0);
  REQUIRE(none.lower_bound == 1.0);

  REQUIRE_THROWS_AS(matcube::block_disjoint_probability(0, 1, 0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::block_disjoint_probability(2, 0, 1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::block_disjoint_probability(2, 1, 3),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::block_disjoint_probability(2, 1, -1),
                    std::invalid_argument);
}

TEST_CASE("block disjoint probability matches exhaustive enumeration") {
  for (int k = 1; k <= 4; ++k) {
    for (int n = 1; n <= 3; ++n) {
      for (int l = 0; l <= k; ++l) {
        if (l > k * n) continue;
        const double exact = matcube::block_disjoint_probability(k, n, l).exact;
        const double ref = oracles::block_disjoint_by_enumeration(k, n, l);
        REQUIRE(exact == Catch::Approx(ref).margin(1e-12));
      }
    }
  }
}

TEST_CASE("block disjoint lower bound holds on the full grid") {
  for (int k = 1; k <= 30; ++k) {
    for (int n = 1; n <= 30; ++n) {
      for (int l = 0; l <= k; ++l) {
        const auto r = matcube::block_disjoint_probability(k, n, l);
        REQUIRE(r.exact >= 0.0);
        REQUIRE(r.exact <= 1.0 + 1e-15);
        REQUIRE(r.exact >= r.lower_bound - 1e-12);
      }
    }
  }
}

TEST_CASE("protocol to random access success conversion") {
  REQUIRE(matcube::rac_from_protocol_success(1.0, 4, 2) ==
          Catch::Approx(0.25).margin(1e-15));
  REQUIRE(matcube::rac_from_protocol_success(0.8, 10, 0) ==
          Catch::Approx(0.8).margin(1e-15));
  REQUIRE(matcube::rac_from_protocol_success(0.5, 2, 2) == 0.0);

  REQUIRE_THROWS_AS(matcube::rac_from_protocol_success(1.5, 4, 2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::rac_from_protocol_success(-0.1, 4, 2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::rac_from_protocol_success(0.5, 0, 0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::rac_from_protocol_success(0.5, 2, 3),
                    std::invalid_argument);
}

TEST_CASE("binary entropy") {
  REQUIRE(matcube::binary_entropy(0.0) == 0.0);
  REQUIRE(matcube::binary_entropy(1.0) == 0.0);
  REQUIRE(matcube::binary_entropy(0.5) == 1.0);
  REQUIRE(std::abs(matcube::binary_entropy(0.1) - 0.468995593589281221) <= 1e-15);
  REQUIRE(matcube::binary_entropy(0.3) ==
          Catch::Approx(matcube::binary_entropy(0.7)).margin(1e-15));
  REQUIRE_THROWS_AS(matcube::binary_entropy(-0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("error tolerance conversion") {
  REQUIRE(std::abs(matcube::eps_error_conversion(0.8, 0.1) -
                   0.331004406410718779) <= 1e-15);
  REQUIRE(matcube::eps_error_conversion(0.8, 0.0) == 0.8);
  REQUIRE_THROWS_AS(matcube::eps_error_conversion(0.8, 0.6), std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::eps_error_conversion(0.8, -0.1), std::invalid_argument);
}

TEST_CASE("one way bound on fixed instances") {
  const auto flat = matcube::oneway_sdpt_bound(0.0, 10, 4, 2.0, 5, 1.0, 0.0);
  REQUIRE(flat.value == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(flat.vacuous);

  const auto tight = matcube::oneway_sdpt_bound(10.0, 100, 100, 1.5, 20, 1.0, 0.0);
  REQUIRE(tight.value < 1e-3);
  REQUIRE_FALSE(tight.vacuous);

  double prev = 0.0;
  for (double c : {0.0, 1.0, 4.0, 16.0, 64.0}) {
    const auto r = matcube::oneway_sdpt_bound(c, 100, 100, 1.5, 20, 1.0, 0.0);
    REQUIRE(r.value >= prev);
    prev = r.value;
  }

  REQUIRE_THROWS_AS(matcube::oneway_sdpt_bound(0.0, 10, 4, 2.0, 10, 1.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::oneway_sdpt_bound(0.0, 10, 4, 1.3, 5, 1.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::oneway_sdpt_bound(-1.0, 10, 4, 2.0, 5, 1.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::oneway_sdpt_bound(0.0, 10, 4, 2.0, 5, 0.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(matcube::oneway_sdpt_bound(0.0, 10, 4, 2.0, 5, 1.0, -0.5),
                    std::invalid_argument);
}

TEST_CASE("exact binomials match pascal recursion") {
  for (int n = 0; n <= 40; ++n) {
    for (int k = 0; k <= n; k += 3) {
      REQUIRE(static_cast<double>(matcube::binomial_exact(n, k)) ==
              oracles::pascal_binomial(n, k));
    }
  }
  REQUIRE_THROWS_AS(matcube::binomial_exact(63, 31), matcube::guard_error);
}

TEST_CASE("log binomials match pascal recursion") {
  for (int n = 1; n <= 30; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double ref = std::log(oracles::pascal_binomial(n, k));
      REQUIRE(matcube::log_binomial(n, k) == Catch::Approx(ref).margin(1e-12));
    }
  }
}

TEST_CASE("subset enumeration") {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<std::uint32_t> subsets;
      matcube::for_each_subset_of_size(n, k, [&](std::uint32_t s) {
        subsets.push_back(s);
      });
      REQUIRE(subsets.size() == matcube::binomial_exact(n, k));
      for (std::size_t t = 0; t < subsets.size(); ++t) {
        REQUIRE(matcube::popcount32(subsets[t]) == k);
        REQUIRE(subsets[t] < (std::uint32_t{1} << n));
        if (t > 0) REQUIRE(subsets[t] > subsets[t - 1]);
      }
    }
  }
}

TEST_CASE("bit extraction and deposit round trip") {
  const std::uint32_t mask = 0b1011010u;
  for (std::uint32_t v = 0; v < 16; ++v) {
    const std::uint32_t wide = matcube::deposit_bits(v, mask);
    REQUIRE((wide & ~mask) == 0u);
    REQUIRE(matcube::extract_bits(wide, mask) == v);
  }
  REQUIRE(matcube::extract_bits(0b1010010u, mask) == 0b1101u);
  REQUIRE(matcube::extract_bits(0b1010010u, mask) == oracles::take_bits(0b1010010u, mask));

  for (std::uint32_t s : {0b1u, 0b110u, 0b10101u}) {
    for (std::uint32_t x = 0; x < 32; ++x) {
      const double expect = (matcube::popcount32(s & x) & 1) ? -1.0 : 1.0;
      REQUIRE(matcube::parity_sign(s, x) == expect);
    }
  }
}

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

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace matcube {

/// Thrown when an input exceeds a resource guard (table too large,
/// enumeration too wide). Distinct from std::invalid_argument, which is
/// reserved for inputs that are wrong rather than merely too big.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on malformed or unreadable files.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace defaults {

/// Relative tolerance for validation checks (Hermiticity, trace-one,
/// POVM completeness, ...). Overridable per call.
inline constexpr double tolerance = 1e-9;

/// Relative clamp applied to eigenvalues/singular values before
/// fractional powers: |s| < tiny_clamp * max entry magnitude is
/// treated as exactly zero.
inline constexpr double tiny_clamp = 1e-12;

/// Largest cube arity for hypercube tables (2^n matrices kept in memory).
inline constexpr int max_cube_bits = 24;

/// Largest n for operations that enumerate all subsets S of [n] or all
/// codewords of a linear code.
inline constexpr int max_enumeration_bits = 20;

/// Largest n for matching extraction (enumerates inputs per candidate tuple).
inline constexpr int max_matching_bits = 16;

/// Largest codeword length accepted by the certificate pipeline.
inline constexpr std::int64_t max_certificate_length = 4096;

/// Exhaustive classical-strategy search bound: m * 2^n table bits.
inline constexpr int max_classical_search_bits = 24;

/// Scalar-operation budget for QRAC evaluation loops
/// (2^n inputs x C(n,k) subsets x 2^k outcomes x matrix dimension^2).
inline constexpr double max_qrac_operations = 268435456.0;  // 2^28

}  // namespace defaults

inline int popcount32(std::uint32_t x) { return std::popcount(x); }

/// Character chi_S(x) = (-1)^{|S & x|} for bitmask subsets.
inline double parity_sign(std::uint32_t s, std::uint32_t x) {
  return (std::popcount(s & x) & 1) ? -1.0 : 1.0;
}

/// Compacts the bits of x selected by mask into the low bits of the result,
/// preserving order (software pext).
inline std::uint32_t extract_bits(std::uint32_t x, std::uint32_t mask) {
  std::uint32_t out = 0;
  int pos = 0;
  while (mask != 0) {
    std::uint32_t low = mask & (~mask + 1);
    if (x & low) out |= std::uint32_t{1} << pos;
    mask ^= low;
    ++pos;
  }
  return out;
}

/// Scatters the low bits of compact onto the set positions of mask,
/// preserving order (software pdep).
inline std::uint32_t deposit_bits(std::uint32_t compact, std::uint32_t mask) {
  std::uint32_t out = 0;
  int pos = 0;
  while (mask != 0) {
    std::uint32_t low = mask & (~mask + 1);
    if (compact & (std::uint32_t{1} << pos)) out |= low;
    mask ^= low;
    ++pos;
  }
  return out;
}

/// First k-bit mask in colex order, or 0 when k == 0.
inline std::uint32_t first_subset_of_size(int k) {
  return k == 0 ? 0u : ((std::uint32_t{1} << k) - 1);
}

/// Next bitmask with the same popcount (Gosper's hack). Returns 0 past the
/// last mask below 2^n.
inline std::uint32_t next_subset_same_size(std::uint32_t v, int n) {
  if (v == 0) return 0;
  std::uint32_t t = v | (v - 1);
  std::uint32_t w = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  if (w >= (std::uint32_t{1} << n)) return 0;
  return w;
}

/// Calls fn(mask) for every size-k subset of [n] in increasing mask order.
template <class Fn>
void for_each_subset_of_size(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(std::uint32_t{0});
    return;
  }
  for (std::uint32_t s = first_subset_of_size(k); s != 0;
       s = next_subset_same_size(s, n)) {
    fn(s);
  }
}

/// Exact binomial coefficient. Throws guard_error if the value would not
/// fit in 64 bits (n > 62 is rejected outright).
inline std::uint64_t binomial_exact(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 62) throw guard_error("binomial_exact: n > 62 may overflow");
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

/// Natural log of the binomial coefficient, for regimes past 64-bit range.
inline double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("log_binomial: need 0 <= k <= n");
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace matcube

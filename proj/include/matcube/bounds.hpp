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
#include <numbers>
#include <stdexcept>

namespace matcube {

/// Probability that l indices drawn uniformly without replacement from
/// k blocks of n positions each land in pairwise-distinct blocks.
struct BlockDisjointResult {
  double exact = 1.0;          // prod_{i<l} (kn - i n) / (kn - i)
  double lower_bound = 1.0;    // (1 - l/k)^l
};

inline BlockDisjointResult block_disjoint_probability(int k, int n, int l) {
  if (k < 1 || n < 1) throw std::invalid_argument("block_disjoint_probability: k, n must be >= 1");
  if (l < 0 || l > k) throw std::invalid_argument("block_disjoint_probability: need 0 <= l <= k");
  BlockDisjointResult r;
  const double kn = static_cast<double>(k) * static_cast<double>(n);
  for (int i = 0; i < l; ++i) {
    r.exact *= (kn - static_cast<double>(i) * n) / (kn - static_cast<double>(i));
  }
  r.lower_bound = l == 0 ? 1.0 : std::pow(1.0 - static_cast<double>(l) / k, l);
  return r;
}

/// Success probability retained when a strategy with per-call success sigma
/// is run on l calls that must hit distinct blocks: sigma * (1 - l/k)^l.
inline double rac_from_protocol_success(double sigma, int k, int l) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw std::invalid_argument("rac_from_protocol_success: sigma must lie in [0, 1]");
  }
  if (k < 1 || l < 0 || l > k) {
    throw std::invalid_argument("rac_from_protocol_success: need k >= 1 and 0 <= l <= k");
  }
  return sigma * block_disjoint_probability(k, 1, l).lower_bound;
}

/// Binary entropy, base 2, with H(0) = H(1) = 0.
inline double binary_entropy(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("binary_entropy: argument must lie in [0, 1]");
  }
  if (eps == 0.0 || eps == 1.0) return 0.0;
  return -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
}

/// Converts a zero-error exponent gamma (success <= 2^{-gamma k}) into an
/// eps-error exponent gamma - H(eps). Errors above 1/2 are rejected: past
/// that point guessing defeats the bound.
inline double eps_error_conversion(double gamma, double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) {
    throw std::invalid_argument("eps_error_conversion: eps must lie in [0, 1/2]");
  }
  return gamma - binary_entropy(eps);
}

/// One-way communication bound for k-fold random access with l-index
/// recovery under c + overhead transmitted bits:
///   2 c_eta ((1/2 + sqrt(eta (c + overhead) / (k n)) / 2) * k/(k - l))^l.
/// The bound can exceed 1, in which case it says nothing; the flag records
/// that.
struct OnewayBoundResult {
  double value = 0.0;
  bool vacuous = false;
};

inline OnewayBoundResult oneway_sdpt_bound(double c, int k, int n, double eta,
                                           int l, double c_eta, double overhead) {
  if (k < 1 || n < 1) throw std::invalid_argument("oneway_sdpt_bound: k, n must be >= 1");
  if (l < 0 || l >= k) throw std::invalid_argument("oneway_sdpt_bound: need 0 <= l < k");
  if (c < 0.0 || overhead < 0.0) {
    throw std::invalid_argument("oneway_sdpt_bound: c and overhead must be >= 0");
  }
  if (!(eta > 2.0 * std::numbers::ln2)) {
    throw std::invalid_argument("oneway_sdpt_bound: eta must exceed 2 ln 2");
  }
  if (!(c_eta > 0.0)) throw std::invalid_argument("oneway_sdpt_bound: c_eta must be positive");
  const double kn = static_cast<double>(k) * static_cast<double>(n);
  const double per_index = 0.5 + 0.5 * std::sqrt(eta * (c + overhead) / kn);
  const double stretch = static_cast<double>(k) / static_cast<double>(k - l);
  OnewayBoundResult r;
  r.value = 2.0 * c_eta * std::pow(per_index * stretch, l);
  r.vacuous = !(r.value < 1.0);
  return r;
}

}  // namespace matcube

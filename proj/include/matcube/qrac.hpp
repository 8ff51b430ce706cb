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
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matcube/common.hpp"
#include "matcube/cube.hpp"
#include "matcube/hyper.hpp"
#include "matcube/parallel.hpp"
#include "matcube/states.hpp"

namespace matcube {

namespace detail {

inline void validate_qrac_params(int n, int k, int m) {
  if (n < 1 || k < 1 || m < 1 || k > n) {
    throw std::invalid_argument("qrac: need n >= 1, m >= 1, 1 <= k <= n");
  }
}

inline void validate_qrac_encoding(int n, int m, const CubeFunction& encoding,
                                   double tol) {
  if (encoding.n() != n || encoding.d() != (Eigen::Index{1} << m)) {
    throw std::invalid_argument("qrac: encoding table shape does not match (n, m)");
  }
  for (std::uint32_t x = 0; x < encoding.size(); ++x) {
    DensityMatrix::validated(encoding.matrix(x), tol);
  }
}

inline void require_operation_budget(double ops, const char* who) {
  if (ops > defaults::max_qrac_operations) {
    throw guard_error(std::string(who) + ": evaluation budget exceeded");
  }
}

}  // namespace detail

/// Encoding side of a random access code for parity (XOR) queries:
/// n input bits encoded as density matrices on m qubits; the decoder is
/// always the optimal two-outcome measurement, so none is stored.
class XorQrac {
 public:
  static XorQrac validated(int n, int k, int m, CubeFunction encoding,
                           double tol = defaults::tolerance) {
    detail::validate_qrac_params(n, k, m);
    detail::validate_qrac_encoding(n, m, encoding, tol);
    return XorQrac(n, k, m, std::move(encoding), tol);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int m() const { return m_; }
  Eigen::Index dim() const { return Eigen::Index{1} << m_; }
  const CubeFunction& encoding() const { return encoding_; }
  double tolerance() const { return tol_; }

 private:
  XorQrac(int n, int k, int m, CubeFunction encoding, double tol)
      : n_(n), k_(k), m_(m), encoding_(std::move(encoding)), tol_(tol) {}
  int n_, k_, m_;
  CubeFunction encoding_;
  double tol_;
};

/// Full random access code: encoding plus one POVM (2^k outcomes, indexed by
/// the guessed substring) for every size-k subset of coordinates.
class Qrac {
 public:
  static Qrac validated(int n, int k, int m, CubeFunction encoding,
                        std::map<std::uint32_t, Povm> measurements,
                        double tol = defaults::tolerance) {
    detail::validate_qrac_params(n, k, m);
    detail::validate_qrac_encoding(n, m, encoding, tol);
    const Eigen::Index d = Eigen::Index{1} << m;
    const std::size_t outcomes = std::size_t{1} << k;
    for (const auto& [s, povm] : measurements) {
      if (s >= (std::uint32_t{1} << n) || popcount32(s) != k) {
        throw std::invalid_argument("Qrac: measurement key is not a size-k subset");
      }
      if (povm.dim() != d || povm.size() != outcomes) {
        throw std::invalid_argument("Qrac: measurement has wrong dimension or outcome count");
      }
    }
    std::uint64_t listed = 0;
    for_each_subset_of_size(n, k, [&](std::uint32_t s) {
      if (measurements.find(s) == measurements.end()) {
        throw std::invalid_argument("Qrac: missing measurement for a size-k subset");
      }
      ++listed;
    });
    if (listed != measurements.size()) {
      throw std::invalid_argument("Qrac: extra measurement entries");
    }
    return Qrac(n, k, m, std::move(encoding), std::move(measurements), tol);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int m() const { return m_; }
  Eigen::Index dim() const { return Eigen::Index{1} << m_; }
  const CubeFunction& encoding() const { return encoding_; }
  const std::map<std::uint32_t, Povm>& measurements() const { return measurements_; }
  const Povm& measurement(std::uint32_t s) const { return measurements_.at(s); }
  double tolerance() const { return tol_; }

  XorQrac xor_view() const {
    return XorQrac::validated(n_, k_, m_, encoding_, tol_);
  }

 private:
  Qrac(int n, int k, int m, CubeFunction encoding,
       std::map<std::uint32_t, Povm> measurements, double tol)
      : n_(n), k_(k), m_(m), encoding_(std::move(encoding)),
        measurements_(std::move(measurements)), tol_(tol) {}
  int n_, k_, m_;
  CubeFunction encoding_;
  std::map<std::uint32_t, Povm> measurements_;
  double tol_;
};

/// Exact success probability E_{x,S}[Tr(M_{S, x_S} f(x))] over uniform x
/// and uniform size-k S.
inline double success_probability(const Qrac& q) {
  const std::uint32_t points = std::uint32_t{1} << q.n();
  const std::uint64_t subsets = binomial_exact(q.n(), q.k());
  const double d = static_cast<double>(q.dim());
  detail::require_operation_budget(
      static_cast<double>(subsets) * points * d * d, "success_probability");
  double total = 0.0;
  for (const auto& [s, povm] : q.measurements()) {
    double per_subset = 0.0;
    for (std::uint32_t x = 0; x < points; ++x) {
      const std::uint32_t z = extract_bits(x, s);
      per_subset += real_trace_product(povm.outcome(z), q.encoding().matrix(x));
    }
    total += per_subset;
  }
  return total / (static_cast<double>(points) * static_cast<double>(subsets));
}

/// Optimal parity bias: E over size-k subsets S of trace_norm(fhat(S)).
inline double xor_bias(const XorQrac& xq) {
  CubeFunction fhat = fourier_transform(xq.encoding());
  double total = 0.0;
  for_each_subset_of_size(xq.n(), xq.k(), [&](std::uint32_t s) {
    total += trace_norm(fhat.matrix(s));
  });
  return total / static_cast<double>(binomial_exact(xq.n(), xq.k()));
}

/// Optimal two-outcome measurement for the parity of the bits in S:
/// Helstrom discrimination of the two parity-conditioned average encodings.
/// The resulting bias equals trace_norm(fhat(S)).
inline HelstromResult helstrom_xor_measurement(const XorQrac& xq, std::uint32_t s) {
  if (s == 0 || s >= (std::uint32_t{1} << xq.n())) {
    throw std::invalid_argument("helstrom_xor_measurement: S must be a nonempty subset of [n]");
  }
  const Eigen::Index d = xq.dim();
  ComplexMatrix even = ComplexMatrix::Zero(d, d);
  ComplexMatrix odd = ComplexMatrix::Zero(d, d);
  for (std::uint32_t x = 0; x < xq.encoding().size(); ++x) {
    if (popcount32(s & x) & 1) {
      odd += xq.encoding().matrix(x);
    } else {
      even += xq.encoding().matrix(x);
    }
  }
  const double half = std::ldexp(1.0, xq.n() - 1);
  even /= half;
  odd /= half;
  return helstrom_measurement(DensityMatrix::validated(even, xq.tolerance()),
                              DensityMatrix::validated(odd, xq.tolerance()));
}

/// Weighted coefficient mass against the dimension bound:
///   lhs = sum over all S of delta^{|S|} trace_norm(fhat(S))^2   (0^0 = 1)
///   rhs = 2^{2 delta m}
/// with lhs <= rhs for every valid encoding and delta in [0, 1].
inline Sides coefficient_mass_sides(const XorQrac& xq, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("coefficient_mass_sides: delta must lie in [0, 1]");
  }
  if (xq.n() > defaults::max_enumeration_bits) {
    throw guard_error("coefficient_mass_sides: full subset enumeration needs n <= 20");
  }
  CubeFunction fhat = fourier_transform(xq.encoding());
  Sides sides;
  for (std::uint32_t s = 0; s < fhat.size(); ++s) {
    const int size = popcount32(s);
    const double weight = size == 0 ? 1.0 : std::pow(delta, size);
    if (weight == 0.0) continue;
    const double t = trace_norm(fhat.matrix(s));
    sides.lhs += weight * t * t;
  }
  sides.rhs = std::exp2(2.0 * delta * xq.m());
  return sides;
}

/// Closed-form ceiling on the parity bias of any m-qubit encoding:
///   ((2 e ln2) m / k)^{k/2} / sqrt(C(n, k)),
/// evaluated in log space. Can exceed 1, in which case it is vacuous and
/// returned as-is.
inline double xor_bias_bound(int k, int n, int m) {
  if (k < 1 || k > n) throw std::invalid_argument("xor_bias_bound: need 1 <= k <= n");
  if (m < 0) throw std::invalid_argument("xor_bias_bound: need m >= 0");
  if (m == 0) return 0.0;
  const double factor = 2.0 * std::numbers::e * std::numbers::ln2;
  const double log_value =
      0.5 * k * std::log(factor * static_cast<double>(m) / k) -
      0.5 * log_binomial(n, k);
  return std::exp(log_value);
}

/// Closed-form ceiling on the success probability of recovering a size-k
/// substring from an m-qubit encoding:
///   c_eta (1/2 + sqrt(eta m / n) / 2)^k,   eta > 2 ln 2,
/// with the leading constant supplied by the caller.
inline double qrac_success_bound(int k, int n, int m, double eta, double c_eta) {
  if (k < 1 || k > n) throw std::invalid_argument("qrac_success_bound: need 1 <= k <= n");
  if (m < 0) throw std::invalid_argument("qrac_success_bound: need m >= 0");
  if (!(eta > 2.0 * std::numbers::ln2)) {
    throw std::invalid_argument("qrac_success_bound: eta must exceed 2 ln 2");
  }
  if (!(c_eta > 0.0)) throw std::invalid_argument("qrac_success_bound: c_eta must be positive");
  const double per_bit =
      0.5 + 0.5 * std::sqrt(eta * static_cast<double>(m) / static_cast<double>(n));
  return c_eta * std::pow(per_bit, k);
}

/// Full reduction of a random access code to parity biases. For every
/// size-k subset T the decoder induces an error-vector distribution
///   p_T(w) = 2^{-n} sum_x Tr(M_{T, w xor x_T} f(x)),
/// whose Fourier coefficients aggregate to per-subset biases
///   beta_S = 2^k E_{T contains S}[phat_T(S)].
/// The success probability E_T[p_T(0)] equals the average of beta_S under
/// the law "draw j ~ Binomial(k, 1/2), then a uniform size-j subset", and
/// every beta_S is dominated by the optimal bias trace_norm(fhat(S)).
struct QracReduction {
  /// beta_S for all |S| <= k, keyed by subset mask.
  std::map<std::uint32_t, double> beta;
  /// trace_norm(fhat(S)) for the same keys.
  std::map<std::uint32_t, double> coefficient_trace_norm;
  /// E_{S ~ subset law}[beta_S].
  double lhs_identity = 0.0;
  /// E_T[p_T(0)] (the success probability).
  double rhs_identity = 0.0;
  /// The two ends of the bias chain: (E_S[beta_S], E_S[trace norm]).
  double chain_beta_mean = 0.0;
  double chain_trace_norm_mean = 0.0;
  /// max over S of beta_S - trace_norm(fhat(S)); nonpositive up to rounding.
  double max_domination_gap = 0.0;
};

inline QracReduction reduce_qrac_to_xor(const Qrac& q) {
  const int n = q.n();
  const int k = q.k();
  const std::uint32_t points = std::uint32_t{1} << n;
  const std::uint32_t words = std::uint32_t{1} << k;
  const std::uint64_t subsets = binomial_exact(n, k);
  const double d = static_cast<double>(q.dim());
  detail::require_operation_budget(
      static_cast<double>(subsets) * points * words * d * d, "reduce_qrac_to_xor");

  CubeFunction fhat = fourier_transform(q.encoding());
  std::map<std::uint32_t, double> beta_sum;
  std::map<std::uint32_t, std::uint64_t> beta_count;
  double diagonal_sum = 0.0;

  for_each_subset_of_size(n, k, [&](std::uint32_t t) {
    const Povm& povm = q.measurement(t);
    CubeFunction p_t(k, 1);
    for (std::uint32_t x = 0; x < points; ++x) {
      const std::uint32_t x_t = extract_bits(x, t);
      for (std::uint32_t z = 0; z < words; ++z) {
        const double prob = real_trace_product(povm.outcome(z), q.encoding().matrix(x));
        p_t.matrix(z ^ x_t)(0, 0) += prob;
      }
    }
    const double scale = std::ldexp(1.0, -n);
    for (std::uint32_t w = 0; w < words; ++w) p_t.matrix(w)(0, 0) *= scale;
    diagonal_sum += p_t.matrix(0)(0, 0).real();

    CubeFunction phat_t = fourier_transform(p_t);
    for (std::uint32_t s_local = 0; s_local < words; ++s_local) {
      const std::uint32_t s_global = deposit_bits(s_local, t);
      beta_sum[s_global] += phat_t.matrix(s_local)(0, 0).real();
      beta_count[s_global] += 1;
    }
  });

  QracReduction out;
  for (const auto& [s, sum] : beta_sum) {
    const int size = popcount32(s);
    const std::uint64_t expected = binomial_exact(n - size, k - size);
    if (beta_count.at(s) != expected) {
      throw std::logic_error("reduce_qrac_to_xor: internal subset count mismatch");
    }
    out.beta[s] = std::ldexp(sum / static_cast<double>(expected), k);
    out.coefficient_trace_norm[s] = trace_norm(fhat.matrix(s));
  }
  out.rhs_identity = diagonal_sum / static_cast<double>(subsets);

  bool first = true;
  for (const auto& [s, b] : out.beta) {
    const int size = popcount32(s);
    const double weight = static_cast<double>(binomial_exact(k, size)) /
                          std::ldexp(1.0, k) /
                          static_cast<double>(binomial_exact(n, size));
    out.lhs_identity += weight * b;
    out.chain_trace_norm_mean += weight * out.coefficient_trace_norm.at(s);
    const double gap = b - out.coefficient_trace_norm.at(s);
    if (first || gap > out.max_domination_gap) out.max_domination_gap = gap;
    first = false;
  }
  out.chain_beta_mean = out.lhs_identity;
  return out;
}

/// Result of the exhaustive deterministic classical-strategy search.
struct ClassicalSearchResult {
  double p_star = 0.0;
  /// Exact counts: p_star = wins / trials.
  std::uint64_t wins = 0;
  std::uint64_t trials = 0;
  /// Optimal encoding table, one m-bit message per input.
  std::vector<std::uint32_t> encoding;
  /// Plurality decoder: per subset, the guessed substring for each message.
  std::map<std::uint32_t, std::vector<std::uint32_t>> decoding;
};

/// Exhaustively searches deterministic encodings {0,1}^n -> {0,1}^m.
/// For each encoding, the optimal decoder maps (S, message) to the
/// plurality substring x_S among inputs producing that message, ties broken
/// toward the lexicographically smallest substring; the overall winner with
/// the smallest encoding index is returned.
inline ClassicalSearchResult best_classical_qrac(int n, int k, int m) {
  detail::validate_qrac_params(n, k, m);
  const std::int64_t table_bits =
      n > defaults::max_cube_bits ? std::int64_t{1} << 40
                                  : static_cast<std::int64_t>(m) << n;
  if (table_bits > defaults::max_classical_search_bits) {
    throw guard_error("best_classical_qrac: search space exceeds the 2^24 encoding guard");
  }
  const std::uint32_t points = std::uint32_t{1} << n;
  const std::uint32_t messages = std::uint32_t{1} << m;
  const std::uint32_t words = std::uint32_t{1} << k;
  const std::uint64_t encoders = std::uint64_t{1} << table_bits;

  std::vector<std::uint32_t> subset_masks;
  for_each_subset_of_size(n, k, [&](std::uint32_t s) { subset_masks.push_back(s); });

  struct Best {
    std::uint64_t wins = 0;
    std::uint64_t encoder = 0;
    bool any = false;
  };

  const std::uint64_t chunk =
      std::max<std::uint64_t>(1, encoders / (8 * thread_count()));
  Best best = parallel_chunk_reduce(
      encoders, chunk, Best{},
      [&](std::size_t begin, std::size_t end) {
        Best local;
        std::vector<std::uint32_t> enc(points);
        std::vector<std::uint32_t> counts(static_cast<std::size_t>(messages) * words);
        for (std::uint64_t e = begin; e < end; ++e) {
          for (std::uint32_t x = 0; x < points; ++x) {
            enc[x] = static_cast<std::uint32_t>(e >> (static_cast<std::uint64_t>(m) * x)) &
                     (messages - 1);
          }
          std::uint64_t wins = 0;
          for (const std::uint32_t s : subset_masks) {
            std::fill(counts.begin(), counts.end(), 0u);
            for (std::uint32_t x = 0; x < points; ++x) {
              counts[(static_cast<std::size_t>(enc[x]) << k) | extract_bits(x, s)]++;
            }
            for (std::uint32_t w = 0; w < messages; ++w) {
              std::uint32_t top = 0;
              for (std::uint32_t v = 0; v < words; ++v) {
                top = std::max(top, counts[(static_cast<std::size_t>(w) << k) | v]);
              }
              wins += top;
            }
          }
          if (!local.any || wins > local.wins) {
            local = {wins, e, true};
          }
        }
        return local;
      },
      [](Best acc, const Best& item) {
        if (!item.any) return acc;
        if (!acc.any || item.wins > acc.wins) return item;
        return acc;
      });

  ClassicalSearchResult out;
  out.wins = best.wins;
  out.trials = static_cast<std::uint64_t>(points) * subset_masks.size();
  out.p_star = static_cast<double>(best.wins) / static_cast<double>(out.trials);
  out.encoding.resize(points);
  for (std::uint32_t x = 0; x < points; ++x) {
    out.encoding[x] = static_cast<std::uint32_t>(
                          best.encoder >> (static_cast<std::uint64_t>(m) * x)) &
                      (messages - 1);
  }
  for (const std::uint32_t s : subset_masks) {
    std::vector<std::uint32_t> guesses(messages, 0);
    for (std::uint32_t w = 0; w < messages; ++w) {
      std::uint32_t best_v = 0;
      std::uint32_t best_count = 0;
      for (std::uint32_t v = 0; v < words; ++v) {
        std::uint32_t count = 0;
        for (std::uint32_t x = 0; x < points; ++x) {
          if (out.encoding[x] == w && extract_bits(x, s) == v) ++count;
        }
        if (count > best_count) {
          best_count = count;
          best_v = v;
        }
      }
      guesses[w] = best_v;
    }
    out.decoding[s] = std::move(guesses);
  }
  return out;
}

/// Embeds a deterministic classical strategy as a diagonal encoding with
/// projective readout, so the quantum evaluators can be cross-checked
/// against exact counting.
inline Qrac qrac_from_classical(
    int n, int k, int m, const std::vector<std::uint32_t>& encoding,
    const std::map<std::uint32_t, std::vector<std::uint32_t>>& decoding,
    double tol = defaults::tolerance) {
  detail::validate_qrac_params(n, k, m);
  const std::uint32_t points = std::uint32_t{1} << n;
  const Eigen::Index d = Eigen::Index{1} << m;
  const std::uint32_t words = std::uint32_t{1} << k;
  if (encoding.size() != points) {
    throw std::invalid_argument("qrac_from_classical: encoding table must have 2^n entries");
  }
  CubeFunction f(n, d);
  for (std::uint32_t x = 0; x < points; ++x) {
    if (encoding[x] >= static_cast<std::uint32_t>(d)) {
      throw std::invalid_argument("qrac_from_classical: encoding value out of range");
    }
    f.matrix(x)(encoding[x], encoding[x]) = 1.0;
  }
  std::map<std::uint32_t, Povm> measurements;
  for (const auto& [s, guesses] : decoding) {
    if (guesses.size() != static_cast<std::size_t>(d)) {
      throw std::invalid_argument("qrac_from_classical: decoder table must cover every message");
    }
    std::vector<ComplexMatrix> outcomes(words, ComplexMatrix::Zero(d, d));
    for (Eigen::Index w = 0; w < d; ++w) {
      const std::uint32_t z = guesses[static_cast<std::size_t>(w)];
      if (z >= words) {
        throw std::invalid_argument("qrac_from_classical: decoder guess out of range");
      }
      outcomes[z](w, w) = 1.0;
    }
    measurements.emplace(s, Povm::validated(outcomes, tol));
  }
  return Qrac::validated(n, k, m, std::move(f), std::move(measurements), tol);
}

}  // namespace matcube

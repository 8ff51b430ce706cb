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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matcube/common.hpp"
#include "matcube/cube.hpp"
#include "matcube/linalg.hpp"
#include "matcube/parallel.hpp"

namespace matcube {

/// Thrown when an operation's mathematical precondition fails on the given
/// data (as opposed to malformed input): e.g. a decoder that does not
/// actually decode at the stated advantage.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Code C: {0,1}^n -> {+1,-1}^N, stored either as an explicit table or as a
/// generator list for a linear code. In the linear kind, codeword bit j is
/// (-1)^{<g_j, x>} over GF(2), with bit t of g_j multiplying x_t.
class CodeSpec {
 public:
  static CodeSpec linear(int n, std::vector<std::uint32_t> generators) {
    if (n < 1 || n > defaults::max_enumeration_bits) {
      throw guard_error("CodeSpec: linear codes need 1 <= n <= 20");
    }
    if (generators.empty()) {
      throw std::invalid_argument("CodeSpec: need at least one codeword position");
    }
    for (std::uint32_t g : generators) {
      if (g >= (std::uint32_t{1} << n)) {
        throw std::invalid_argument("CodeSpec: generator uses coordinates beyond n");
      }
    }
    CodeSpec c;
    c.n_ = n;
    c.length_ = static_cast<std::int64_t>(generators.size());
    c.generators_ = std::move(generators);
    return c;
  }

  static CodeSpec table(int n, std::int64_t length, std::vector<std::int8_t> entries) {
    if (n < 1 || n > defaults::max_enumeration_bits) {
      throw guard_error("CodeSpec: explicit tables need 1 <= n <= 20");
    }
    if (length < 1) throw std::invalid_argument("CodeSpec: need at least one codeword position");
    const std::size_t expected = (std::size_t{1} << n) * static_cast<std::size_t>(length);
    if (entries.size() != expected) {
      throw std::invalid_argument("CodeSpec: table must have 2^n rows of N entries");
    }
    for (std::int8_t e : entries) {
      if (e != 1 && e != -1) {
        throw std::invalid_argument("CodeSpec: table entries must be +1 or -1");
      }
    }
    CodeSpec c;
    c.n_ = n;
    c.length_ = length;
    c.entries_ = std::move(entries);
    return c;
  }

  /// The length-2^n linear code whose positions are all parities:
  /// position a holds prod_{t in a} (-1)^{x_t}.
  static CodeSpec hadamard(int n) {
    std::vector<std::uint32_t> generators(std::size_t{1} << n);
    std::iota(generators.begin(), generators.end(), 0u);
    return linear(n, std::move(generators));
  }

  int n() const { return n_; }
  std::int64_t length() const { return length_; }
  bool is_linear() const { return !generators_.empty(); }
  const std::vector<std::uint32_t>& generators() const { return generators_; }

  /// Codeword entry in {+1,-1} for message x at position j.
  int entry(std::uint32_t x, std::int64_t j) const {
    if (x >= (std::uint32_t{1} << n_) || j < 0 || j >= length_) {
      throw std::out_of_range("CodeSpec: index out of range");
    }
    if (is_linear()) {
      return (popcount32(generators_[static_cast<std::size_t>(j)] & x) & 1) ? -1 : 1;
    }
    return entries_[static_cast<std::size_t>(x) * static_cast<std::size_t>(length_) +
                    static_cast<std::size_t>(j)];
  }

  /// Writes the full codeword for x into out (length N).
  void codeword(std::uint32_t x, std::int8_t* out) const {
    if (x >= (std::uint32_t{1} << n_)) {
      throw std::out_of_range("CodeSpec: message out of range");
    }
    if (is_linear()) {
      for (std::int64_t j = 0; j < length_; ++j) {
        out[j] = (popcount32(generators_[static_cast<std::size_t>(j)] & x) & 1) ? -1 : 1;
      }
    } else {
      const std::int8_t* row =
          entries_.data() + static_cast<std::size_t>(x) * static_cast<std::size_t>(length_);
      std::copy(row, row + length_, out);
    }
  }

 private:
  CodeSpec() = default;
  int n_ = 0;
  std::int64_t length_ = 0;
  std::vector<std::uint32_t> generators_;
  std::vector<std::int8_t> entries_;
};

/// One weighted decoding option: query the positions in tuple, look the
/// answers up in table. Table index z has bit t set when the oracle answered
/// -1 at tuple[t]; entries are expected outputs in [-1, 1] (+/-1 when the
/// decoder is deterministic).
struct DecoderEntry {
  double weight = 0.0;
  std::vector<std::int32_t> tuple;
  std::vector<double> table;
};

/// Randomized non-adaptive decoder: per message index, a distribution over
/// (tuple, table) options. Tuples are canonicalized ascending at validation,
/// with tables re-indexed to match.
class DecoderSpec {
 public:
  static DecoderSpec validated(int q, std::int64_t codeword_length,
                               std::vector<std::vector<DecoderEntry>> per_index) {
    if (q < 1) throw std::invalid_argument("DecoderSpec: need q >= 1");
    if (codeword_length < 1) {
      throw std::invalid_argument("DecoderSpec: need codeword length >= 1");
    }
    if (per_index.empty()) {
      throw std::invalid_argument("DecoderSpec: need at least one message index");
    }
    for (auto& entries : per_index) {
      double weight_sum = 0.0;
      for (DecoderEntry& e : entries) {
        if (!(e.weight >= 0.0)) {
          throw std::invalid_argument("DecoderSpec: weights must be non-negative");
        }
        weight_sum += e.weight;
        if (e.tuple.size() > static_cast<std::size_t>(q)) {
          throw std::invalid_argument("DecoderSpec: tuple longer than q");
        }
        for (std::int32_t j : e.tuple) {
          if (j < 0 || j >= codeword_length) {
            throw std::invalid_argument("DecoderSpec: query index out of range");
          }
        }
        canonicalize(e);
        if (e.table.size() != (std::size_t{1} << e.tuple.size())) {
          throw std::invalid_argument("DecoderSpec: table size must be 2^|tuple|");
        }
        for (double v : e.table) {
          if (!(std::abs(v) <= 1.0 + 1e-12)) {
            throw std::invalid_argument("DecoderSpec: table entries must lie in [-1, 1]");
          }
        }
      }
      if (std::abs(weight_sum - 1.0) > 1e-12) {
        throw std::invalid_argument("DecoderSpec: weights must sum to 1 per index");
      }
    }
    DecoderSpec d;
    d.q_ = q;
    d.codeword_length_ = codeword_length;
    d.per_index_ = std::move(per_index);
    return d;
  }

  /// The standard 2-query decoder for the length-2^n parity code: pick a
  /// uniformly random position a and multiply the answers at a and
  /// a xor (1 << i).
  static DecoderSpec hadamard(int n) {
    const std::int64_t length = std::int64_t{1} << n;
    std::vector<std::vector<DecoderEntry>> per_index(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const std::uint32_t flip = std::uint32_t{1} << i;
      for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(length); ++a) {
        if (a & flip) continue;
        DecoderEntry e;
        e.weight = std::ldexp(1.0, -(n - 1));
        e.tuple = {static_cast<std::int32_t>(a), static_cast<std::int32_t>(a | flip)};
        e.table = {1.0, -1.0, -1.0, 1.0};
        per_index[static_cast<std::size_t>(i)].push_back(std::move(e));
      }
    }
    return validated(2, length, std::move(per_index));
  }

  int q() const { return q_; }
  std::int64_t codeword_length() const { return codeword_length_; }
  int message_bits() const { return static_cast<int>(per_index_.size()); }
  const std::vector<DecoderEntry>& index(int i) const {
    return per_index_.at(static_cast<std::size_t>(i));
  }
  const std::vector<std::vector<DecoderEntry>>& per_index() const { return per_index_; }

  /// Expected output in [-1, 1] for message index i on oracle string y
  /// (entries +/-1, length N).
  double output(int i, const std::int8_t* y) const {
    double out = 0.0;
    for (const DecoderEntry& e : index(i)) {
      std::size_t z = 0;
      for (std::size_t t = 0; t < e.tuple.size(); ++t) {
        if (y[e.tuple[t]] < 0) z |= std::size_t{1} << t;
      }
      out += e.weight * e.table[z];
    }
    return out;
  }

 private:
  static void canonicalize(DecoderEntry& e) {
    const std::size_t w = e.tuple.size();
    std::vector<std::size_t> order(w);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return e.tuple[a] < e.tuple[b]; });
    bool sorted = true;
    for (std::size_t t = 0; t < w; ++t) sorted = sorted && order[t] == t;
    if (!sorted) {
      std::vector<std::int32_t> tuple(w);
      std::vector<double> table(e.table.size());
      for (std::size_t t = 0; t < w; ++t) tuple[t] = e.tuple[order[t]];
      for (std::size_t z = 0; z < e.table.size() && z < (std::size_t{1} << w); ++z) {
        std::size_t sorted_z = 0;
        for (std::size_t t = 0; t < w; ++t) {
          if (z & (std::size_t{1} << order[t])) sorted_z |= std::size_t{1} << t;
        }
        table[sorted_z] = e.table[z];
      }
      e.tuple = std::move(tuple);
      e.table = std::move(table);
    }
    for (std::size_t t = 1; t < w; ++t) {
      if (e.tuple[t] == e.tuple[t - 1]) {
        throw std::invalid_argument("DecoderSpec: tuple has repeated positions");
      }
    }
  }

  int q_ = 0;
  std::int64_t codeword_length_ = 0;
  std::vector<std::vector<DecoderEntry>> per_index_;
};

namespace detail {

inline void require_code_decoder_match(const CodeSpec& code, const DecoderSpec& dec,
                                       const char* who) {
  if (dec.codeword_length() != code.length() || dec.message_bits() != code.n()) {
    throw std::invalid_argument(std::string(who) + ": code and decoder shapes do not match");
  }
}

/// All 2^n codewords as one contiguous +/-1 table.
inline std::vector<std::int8_t> codeword_table(const CodeSpec& code) {
  const std::uint32_t points = std::uint32_t{1} << code.n();
  std::vector<std::int8_t> words(static_cast<std::size_t>(points) *
                                 static_cast<std::size_t>(code.length()));
  for (std::uint32_t x = 0; x < points; ++x) {
    code.codeword(x, words.data() + static_cast<std::size_t>(x) *
                                        static_cast<std::size_t>(code.length()));
  }
  return words;
}

}  // namespace detail

/// Exact success probability (over +/-1 outputs: (1 + output * x_i^pm) / 2)
/// of the decoder for index i on the uncorrupted codeword of x.
inline double codeword_success(const CodeSpec& code, const DecoderSpec& dec, int i,
                               std::uint32_t x, const std::int8_t* word) {
  const double target = parity_sign(std::uint32_t{1} << i, x);
  return 0.5 * (1.0 + dec.output(i, word) * target);
}

struct SmoothReport {
  double delta = 0.0;
  double epsilon = 0.0;
  /// Marginal threshold q / (delta N) defining heavy positions.
  double threshold = 0.0;
  /// Smoothness guarantee q / delta for the returned decoder.
  double smooth_bound = 0.0;
  /// N * max marginal of the returned decoder.
  double c_effective = 0.0;
  /// Heavy position sets H_i that were dropped, per index.
  std::vector<std::vector<std::int64_t>> heavy;
  bool heavy_ok = true;      // |H_i| <= delta N for all i
  bool marginals_ok = true;  // new marginals <= q/(delta N) + 1e-12
  /// Min over (i, x) of codeword success, before and after smoothing.
  double min_success_before = 1.0;
  double min_success_after = 1.0;
  bool success_ok = true;  // min_success_after >= 1/2 + epsilon - 1e-12
};

struct SmoothResult {
  DecoderSpec decoder;
  double c = 0.0;
  SmoothReport report;
};

/// Converts a decoder that is correct on codewords into a smooth one by
/// dropping heavy query positions. Positions with marginal above
/// q / (delta N) are fixed to oracle value +1 inside the affected tables
/// (the neutral fill; some fixed value must be chosen and +1 is the
/// convention used throughout). The returned decoder's marginals are
/// bounded by q / (delta N), so its smoothness constant is at most
/// q / delta.
inline SmoothResult smooth_from_ldc(const CodeSpec& code, const DecoderSpec& dec,
                                    double delta, double epsilon) {
  detail::require_code_decoder_match(code, dec, "smooth_from_ldc");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("smooth_from_ldc: delta must lie in (0, 1)");
  }
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("smooth_from_ldc: epsilon must lie in [0, 1/2]");
  }
  const int n = code.n();
  const std::int64_t length = code.length();
  const double big_n = static_cast<double>(length);
  const double threshold = static_cast<double>(dec.q()) / (delta * big_n);

  SmoothReport report;
  report.delta = delta;
  report.epsilon = epsilon;
  report.threshold = threshold;
  report.smooth_bound = static_cast<double>(dec.q()) / delta;

  std::vector<std::vector<DecoderEntry>> new_entries(static_cast<std::size_t>(n));
  double max_marginal = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> marginal(static_cast<std::size_t>(length), 0.0);
    for (const DecoderEntry& e : dec.index(i)) {
      for (std::int32_t j : e.tuple) marginal[static_cast<std::size_t>(j)] += e.weight;
    }
    std::vector<std::int64_t> heavy;
    std::vector<char> is_heavy(static_cast<std::size_t>(length), 0);
    for (std::int64_t j = 0; j < length; ++j) {
      if (marginal[static_cast<std::size_t>(j)] > threshold) {
        heavy.push_back(j);
        is_heavy[static_cast<std::size_t>(j)] = 1;
      }
    }
    report.heavy_ok = report.heavy_ok &&
                      static_cast<double>(heavy.size()) <= delta * big_n + 1e-12;

    for (const DecoderEntry& e : dec.index(i)) {
      DecoderEntry reduced;
      reduced.weight = e.weight;
      std::vector<std::size_t> kept;
      for (std::size_t t = 0; t < e.tuple.size(); ++t) {
        if (!is_heavy[static_cast<std::size_t>(e.tuple[t])]) {
          kept.push_back(t);
          reduced.tuple.push_back(e.tuple[t]);
        }
      }
      reduced.table.resize(std::size_t{1} << kept.size());
      for (std::size_t z = 0; z < reduced.table.size(); ++z) {
        std::size_t full = 0;  // dropped positions read +1, i.e. bit 0
        for (std::size_t t = 0; t < kept.size(); ++t) {
          if (z & (std::size_t{1} << t)) full |= std::size_t{1} << kept[t];
        }
        reduced.table[z] = e.table[full];
      }
      new_entries[static_cast<std::size_t>(i)].push_back(std::move(reduced));
    }
    report.heavy.push_back(std::move(heavy));

    std::vector<double> new_marginal(static_cast<std::size_t>(length), 0.0);
    for (const DecoderEntry& e : new_entries[static_cast<std::size_t>(i)]) {
      for (std::int32_t j : e.tuple) new_marginal[static_cast<std::size_t>(j)] += e.weight;
    }
    for (double v : new_marginal) {
      max_marginal = std::max(max_marginal, v);
      report.marginals_ok = report.marginals_ok && v <= threshold + 1e-12;
    }
  }

  SmoothResult out{DecoderSpec::validated(dec.q(), length, std::move(new_entries)),
                   big_n * max_marginal, std::move(report)};
  out.report.c_effective = out.c;

  const std::uint32_t points = std::uint32_t{1} << n;
  std::vector<std::int8_t> word(static_cast<std::size_t>(length));
  for (std::uint32_t x = 0; x < points; ++x) {
    code.codeword(x, word.data());
    for (int i = 0; i < n; ++i) {
      out.report.min_success_before =
          std::min(out.report.min_success_before, codeword_success(code, dec, i, x, word.data()));
      out.report.min_success_after = std::min(
          out.report.min_success_after, codeword_success(code, out.decoder, i, x, word.data()));
    }
  }
  out.report.success_ok = out.report.min_success_after >= 0.5 + epsilon - 1e-12;
  return out;
}

/// One decoding option whose exact correlation with the target bit clears
/// the threshold.
struct GoodTuple {
  std::vector<std::int32_t> tuple;
  std::vector<double> table;
  double correlation = 0.0;
};

struct MatchingResult {
  /// All good options in canonical (tuple, table) order.
  std::vector<GoodTuple> good;
  /// Greedy maximal disjoint subfamily of the good tuples.
  std::vector<GoodTuple> matching;
  /// Guaranteed matching size epsilon N / (c q).
  double size_bound = 0.0;
  /// Smoothness constant used in the bound: N * max marginal over all (i, j).
  double c_effective = 0.0;
  bool size_ok = false;
  /// Min over x of codeword success for this index; the decodability
  /// precondition asks for >= 1/2 + epsilon.
  double min_success = 1.0;
  bool decodable = false;
};

/// Finds the decoding options for index i whose exact correlation
/// E_x[f_Q(C(x)_Q) x_i] reaches epsilon, and greedily packs a maximal
/// disjoint family among them in canonical order.
inline MatchingResult extract_matching(const CodeSpec& code, const DecoderSpec& dec,
                                       int i, double epsilon) {
  detail::require_code_decoder_match(code, dec, "extract_matching");
  if (i < 0 || i >= code.n()) {
    throw std::invalid_argument("extract_matching: index out of range");
  }
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("extract_matching: epsilon must lie in (0, 1/2]");
  }
  if (code.n() > defaults::max_matching_bits) {
    throw guard_error("extract_matching: exact expectations need n <= 16");
  }

  const std::uint32_t points = std::uint32_t{1} << code.n();
  const std::int64_t length = code.length();
  const std::vector<std::int8_t> words = detail::codeword_table(code);
  const std::uint32_t target_bit = std::uint32_t{1} << i;

  // Exact per-option correlations and the index's overall success floor.
  MatchingResult out;
  std::vector<GoodTuple> options;
  double max_marginal = 0.0;
  for (int idx = 0; idx < code.n(); ++idx) {
    std::vector<double> marginal(static_cast<std::size_t>(length), 0.0);
    for (const DecoderEntry& e : dec.index(idx)) {
      for (std::int32_t j : e.tuple) marginal[static_cast<std::size_t>(j)] += e.weight;
    }
    for (double v : marginal) max_marginal = std::max(max_marginal, v);
  }
  out.c_effective = static_cast<double>(length) * max_marginal;

  for (const DecoderEntry& e : dec.index(i)) {
    double corr = 0.0;
    for (std::uint32_t x = 0; x < points; ++x) {
      const std::int8_t* word =
          words.data() + static_cast<std::size_t>(x) * static_cast<std::size_t>(length);
      std::size_t z = 0;
      for (std::size_t t = 0; t < e.tuple.size(); ++t) {
        if (word[e.tuple[t]] < 0) z |= std::size_t{1} << t;
      }
      corr += e.table[z] * parity_sign(target_bit, x);
    }
    corr /= static_cast<double>(points);
    if (corr >= epsilon) {
      options.push_back({e.tuple, e.table, corr});
    }
  }
  std::stable_sort(options.begin(), options.end(), [](const GoodTuple& a, const GoodTuple& b) {
    if (a.tuple != b.tuple) return a.tuple < b.tuple;
    return a.table < b.table;
  });
  options.erase(std::unique(options.begin(), options.end(),
                            [](const GoodTuple& a, const GoodTuple& b) {
                              return a.tuple == b.tuple && a.table == b.table;
                            }),
                options.end());
  out.good = std::move(options);

  std::vector<char> used(static_cast<std::size_t>(length), 0);
  for (const GoodTuple& g : out.good) {
    bool free = true;
    for (std::int32_t j : g.tuple) free = free && !used[static_cast<std::size_t>(j)];
    if (!free) continue;
    for (std::int32_t j : g.tuple) used[static_cast<std::size_t>(j)] = 1;
    out.matching.push_back(g);
  }

  out.size_bound = epsilon * static_cast<double>(length) /
                   (out.c_effective * static_cast<double>(dec.q()));
  out.size_ok = static_cast<double>(out.matching.size()) >= out.size_bound - 1e-12;

  std::vector<std::int8_t> word(static_cast<std::size_t>(length));
  for (std::uint32_t x = 0; x < points; ++x) {
    code.codeword(x, word.data());
    out.min_success = std::min(out.min_success, codeword_success(code, dec, i, x, word.data()));
  }
  out.decodable = out.min_success >= 0.5 + epsilon - 1e-12;
  return out;
}

struct ParityResult {
  /// E_x[f_Q(C(x)_Q) x_i], the precondition quantity.
  double base_correlation = 0.0;
  /// Chosen sub-tuple, as a bitmask over tuple positions and as global
  /// codeword positions.
  std::uint32_t subset_mask = 0;
  std::vector<std::int32_t> subset;
  int sign = 1;
  /// |E_x[x_i prod_{j in subset} C(x)_j]|, guaranteed >= epsilon / 2^|Q|.
  double correlation = 0.0;
  double guarantee = 0.0;
  /// | base - sum_S fhat(S) corr_S |, an exact Fourier-expansion identity.
  double expansion_residual = 0.0;
};

/// Replaces an arbitrary good decoding rule by a single signed parity of a
/// sub-tuple: Fourier-expands the table over its query bits and picks the
/// sub-parity best correlated with the target bit.
inline ParityResult parity_extraction(const CodeSpec& code, int i,
                                      const std::vector<std::int32_t>& tuple,
                                      const std::vector<double>& table, double epsilon) {
  if (i < 0 || i >= code.n()) {
    throw std::invalid_argument("parity_extraction: index out of range");
  }
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("parity_extraction: epsilon must lie in (0, 1/2]");
  }
  if (code.n() > defaults::max_matching_bits) {
    throw guard_error("parity_extraction: exact expectations need n <= 16");
  }
  DecoderEntry entry;
  entry.weight = 1.0;
  entry.tuple = tuple;
  entry.table = table;
  DecoderSpec one = DecoderSpec::validated(
      static_cast<int>(std::max<std::size_t>(1, tuple.size())), code.length(),
      std::vector<std::vector<DecoderEntry>>(static_cast<std::size_t>(code.n()),
                                             std::vector<DecoderEntry>{entry}));
  const DecoderEntry& e = one.index(0).front();
  const std::size_t w = e.tuple.size();
  const std::uint32_t points = std::uint32_t{1} << code.n();
  const std::uint32_t target_bit = std::uint32_t{1} << i;

  // Correlation of every sub-parity of the tuple with the target bit.
  std::vector<double> sub_corr(std::size_t{1} << w, 0.0);
  double base = 0.0;
  std::vector<std::int8_t> word(static_cast<std::size_t>(code.length()));
  for (std::uint32_t x = 0; x < points; ++x) {
    code.codeword(x, word.data());
    const double sx = parity_sign(target_bit, x);
    std::size_t z = 0;
    for (std::size_t t = 0; t < w; ++t) {
      if (word[e.tuple[t]] < 0) z |= std::size_t{1} << t;
    }
    base += e.table[z] * sx;
    for (std::size_t s = 0; s < sub_corr.size(); ++s) {
      sub_corr[s] += parity_sign(static_cast<std::uint32_t>(s),
                                 static_cast<std::uint32_t>(z)) *
                     sx;
    }
  }
  base /= static_cast<double>(points);
  for (double& v : sub_corr) v /= static_cast<double>(points);

  ParityResult out;
  out.base_correlation = base;
  out.guarantee = epsilon / std::ldexp(1.0, static_cast<int>(w));
  if (base < epsilon) {
    throw precondition_error(
        "parity_extraction: decoder correlation " + std::to_string(base) +
        " is below epsilon " + std::to_string(epsilon));
  }

  // Fourier coefficients of the table over its w bits.
  CubeFunction tab(static_cast<int>(w), 1);
  for (std::size_t z = 0; z < e.table.size(); ++z) {
    tab.matrix(static_cast<std::uint32_t>(z))(0, 0) = e.table[z];
  }
  CubeFunction tab_hat = fourier_transform(tab);

  double expansion = 0.0;
  for (std::size_t s = 0; s < sub_corr.size(); ++s) {
    expansion += tab_hat.matrix(static_cast<std::uint32_t>(s))(0, 0).real() * sub_corr[s];
  }
  out.expansion_residual = std::abs(base - expansion);

  // Ties resolve to the largest sub-tuple.
  std::size_t best = 0;
  for (std::size_t s = 1; s < sub_corr.size(); ++s) {
    if (std::abs(sub_corr[s]) >= std::abs(sub_corr[best])) best = s;
  }
  out.subset_mask = static_cast<std::uint32_t>(best);
  for (std::size_t t = 0; t < w; ++t) {
    if (best & (std::size_t{1} << t)) out.subset.push_back(e.tuple[t]);
  }
  out.sign = sub_corr[best] >= 0.0 ? 1 : -1;
  out.correlation = std::abs(sub_corr[best]);
  return out;
}

/// Disjoint signed tuples per message index, the input to the certificate.
struct MatchedTuple {
  std::vector<std::int32_t> tuple;
  int sign = 1;
  double correlation = 0.0;
};

struct MatchingFamily {
  std::int64_t codeword_length = 0;
  std::vector<std::vector<MatchedTuple>> per_index;

  static MatchingFamily validated(std::int64_t codeword_length,
                                  std::vector<std::vector<MatchedTuple>> per_index) {
    if (codeword_length < 1) {
      throw std::invalid_argument("MatchingFamily: need codeword length >= 1");
    }
    for (auto& tuples : per_index) {
      std::vector<char> used(static_cast<std::size_t>(codeword_length), 0);
      for (auto& t : tuples) {
        if (t.sign != 1 && t.sign != -1) {
          throw std::invalid_argument("MatchingFamily: signs must be +1 or -1");
        }
        if (t.tuple.empty()) {
          throw std::invalid_argument("MatchingFamily: empty tuple");
        }
        std::sort(t.tuple.begin(), t.tuple.end());
        for (std::int32_t j : t.tuple) {
          if (j < 0 || j >= codeword_length) {
            throw std::invalid_argument("MatchingFamily: position out of range");
          }
          if (used[static_cast<std::size_t>(j)]) {
            throw std::invalid_argument("MatchingFamily: tuples overlap");
          }
          used[static_cast<std::size_t>(j)] = 1;
        }
      }
    }
    MatchingFamily f;
    f.codeword_length = codeword_length;
    f.per_index = std::move(per_index);
    return f;
  }
};

/// Pinching gap ||A||_p - ||diag(A)||_p, non-negative for every p >= 1
/// (zeroing off-diagonal entries never increases a Schatten norm).
inline double pinch_diag_gap(const ComplexMatrix& a, double p) {
  require_square(a, "pinch_diag_gap");
  const double full = schatten_norm(a, p);
  const double diag = normalized_vector_norm(a.diagonal().cwiseAbs(), p);
  return full - diag;
}

/// The constructive route to the pinching bound: averaging A with
/// D A D over sign matrices D = diag((-1)^{bit t of index}) kills all
/// off-diagonal entries in ceil(log2 d) halving steps, each of which cannot
/// increase the norm. Returns the sequence ending at diag(A).
inline std::vector<ComplexMatrix> diagonal_halving_sequence(const ComplexMatrix& a) {
  require_square(a, "diagonal_halving_sequence");
  std::vector<ComplexMatrix> steps;
  steps.push_back(a);
  const Eigen::Index d = a.rows();
  for (int bit = 0; (Eigen::Index{1} << bit) < d; ++bit) {
    const ComplexMatrix& prev = steps.back();
    ComplexMatrix next = prev;
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        const bool flip = (((r >> bit) ^ (c >> bit)) & 1) != 0;
        if (flip) next(r, c) = 0.0;
      }
    }
    steps.push_back(std::move(next));
  }
  return steps;
}

struct CertificateIndexReport {
  int index = 0;
  std::int64_t pairs = 0;
  std::int64_t singletons = 0;
  /// Positions covered by pairs (2 * pairs); singletons sit on the exact
  /// zero diagonal and are excluded from the lower bound.
  std::int64_t matched_positions = 0;
  bool coefficient_symmetric = false;
  bool coefficient_zero_diagonal = false;
  /// Normalized Schatten p-norm of the first-level coefficient, computed
  /// from its singular values.
  double norm_spectral = 0.0;
  /// Same norm bounded from below through the aligned diagonal.
  double norm_diag_route = 0.0;
  /// norm_spectral - norm_diag_route, >= 0 up to rounding.
  double pinch_margin = 0.0;
  /// ((1/N) matched_positions (eps/4)^p)^{1/p}.
  double diag_lower_bound = 0.0;
  /// Smallest |diagonal entry| over pair-covered positions.
  double min_matched_abs = 0.0;
  /// Whether every pair's exact correlation reaches eps/4.
  bool pair_correlations_ok = false;
  /// Whether norm_diag_route >= diag_lower_bound - 1e-12.
  bool lower_bound_ok = false;
  /// Whether matched_positions >= delta eps N / 2.
  bool size_condition_ok = false;
};

struct CertificateReport {
  int n = 0;
  std::int64_t length = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  /// Interpolation exponent 1 + 1/log2(N).
  double p = 0.0;
  std::vector<CertificateIndexReport> per_index;
  bool has_singletons = false;
  /// Final chain: n (p-1) (delta eps / 2)^{2/p} (eps/4)^2
  ///                <= sum_i (p-1) ||fhat({i})||_p^2  <=  N^{2(p-1)/p}.
  double chain_lhs = 0.0;
  double chain_middle = 0.0;
  double chain_rhs = 0.0;
  bool chain_ok = false;
  bool chain_middle_ok = false;
  /// Largest n the right side admits at these delta, eps, N:
  /// chain_rhs / ((p-1) (delta eps/2)^{2/p} (eps/4)^2).
  double implied_n_max = 0.0;
  /// Max relative error of ||f(x)||_p^p against N^{p-1} on sample points.
  double point_norm_max_err = 0.0;
};

/// Quadratic lower-bound certificate for 2-query decodable codes. For each
/// message index i it accumulates the first-level Fourier coefficient
///   F_i = 2^{-n} sum_x (-1)^{x_i} C(x) C(x)^T
/// exactly (integer partial sums), aligns the matched pairs onto the
/// diagonal with a pair-swapping permutation, and certifies the chain of
/// norm inequalities that forces N to be exponential in n.
inline CertificateReport ldc_certificate(const CodeSpec& code,
                                         const MatchingFamily& matchings,
                                         double delta, double epsilon) {
  if (code.length() > defaults::max_certificate_length) {
    throw guard_error("ldc_certificate: codeword length capped at 4096");
  }
  if (code.length() < 2) {
    throw std::invalid_argument("ldc_certificate: need N >= 2");
  }
  if (matchings.codeword_length != code.length() ||
      matchings.per_index.size() != static_cast<std::size_t>(code.n())) {
    throw std::invalid_argument("ldc_certificate: matching family shape does not match code");
  }
  if (!(delta > 0.0 && delta < 1.0) || !(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("ldc_certificate: need delta in (0,1), epsilon in (0, 1/2]");
  }
  for (const auto& tuples : matchings.per_index) {
    for (const MatchedTuple& t : tuples) {
      if (t.tuple.size() > 2) {
        throw std::invalid_argument(
            "ldc_certificate: quadratic certificate accepts pairs and singletons only");
      }
    }
  }

  const int n = code.n();
  const std::size_t length = static_cast<std::size_t>(code.length());
  const double big_n = static_cast<double>(code.length());
  const std::uint32_t points = std::uint32_t{1} << n;
  const std::vector<std::int8_t> words = detail::codeword_table(code);

  CertificateReport report;
  report.n = n;
  report.length = code.length();
  report.delta = delta;
  report.epsilon = epsilon;
  report.p = 1.0 + 1.0 / std::log2(big_n);
  const double p = report.p;
  const double quarter = epsilon / 4.0;

  for (int i = 0; i < n; ++i) {
    // Exact integer accumulation of 2^n F_i.
    std::vector<std::int64_t> acc = parallel_chunk_reduce(
        points, std::max<std::size_t>(1, points / (4 * thread_count())),
        std::vector<std::int64_t>(length * length, 0),
        [&](std::size_t begin, std::size_t end) {
          std::vector<std::int64_t> local(length * length, 0);
          for (std::size_t x = begin; x < end; ++x) {
            const std::int8_t* word = words.data() + x * length;
            const int sx =
                (popcount32((std::uint32_t{1} << i) & static_cast<std::uint32_t>(x)) & 1)
                    ? -1
                    : 1;
            for (std::size_t a = 0; a < length; ++a) {
              const std::int64_t va = static_cast<std::int64_t>(sx) * word[a];
              std::int64_t* row = local.data() + a * length;
              for (std::size_t b = a; b < length; ++b) {
                row[b] += va * word[b];
              }
            }
          }
          return local;
        },
        [&](std::vector<std::int64_t> lhs, const std::vector<std::int64_t>& rhs) {
          for (std::size_t e = 0; e < lhs.size(); ++e) lhs[e] += rhs[e];
          return lhs;
        });

    CertificateIndexReport idx;
    idx.index = i;
    idx.coefficient_symmetric = true;
    idx.coefficient_zero_diagonal = true;
    for (std::size_t a = 0; a < length; ++a) {
      idx.coefficient_zero_diagonal =
          idx.coefficient_zero_diagonal && acc[a * length + a] == 0;
      for (std::size_t b = a + 1; b < length; ++b) {
        acc[b * length + a] = acc[a * length + b];
      }
    }

    ComplexMatrix coeff(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(length));
    const double scale = std::ldexp(1.0, -n);
    for (std::size_t a = 0; a < length; ++a) {
      for (std::size_t b = 0; b < length; ++b) {
        coeff(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            static_cast<double>(acc[a * length + b]) * scale;
      }
    }

    // Pair-swapping permutation: row r of P coeff is row perm[r] of coeff.
    std::vector<std::size_t> perm(length);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    bool first_pair = true;
    for (const MatchedTuple& t : matchings.per_index[static_cast<std::size_t>(i)]) {
      if (t.tuple.size() == 2) {
        const std::size_t a = static_cast<std::size_t>(t.tuple[0]);
        const std::size_t b = static_cast<std::size_t>(t.tuple[1]);
        perm[a] = b;
        perm[b] = a;
        ++idx.pairs;
        const double mag =
            std::abs(static_cast<double>(acc[a * length + b])) * scale;
        if (first_pair || mag < idx.min_matched_abs) idx.min_matched_abs = mag;
        first_pair = false;
      } else {
        ++idx.singletons;
        report.has_singletons = true;
      }
    }
    idx.matched_positions = 2 * idx.pairs;

    Eigen::VectorXd aligned_diag(static_cast<Eigen::Index>(length));
    for (std::size_t r = 0; r < length; ++r) {
      aligned_diag(static_cast<Eigen::Index>(r)) =
          static_cast<double>(acc[perm[r] * length + r]) * scale;
    }

    idx.norm_spectral = schatten_norm(coeff, p);
    idx.norm_diag_route = normalized_vector_norm(aligned_diag, p);
    idx.pinch_margin = idx.norm_spectral - idx.norm_diag_route;
    idx.diag_lower_bound =
        idx.matched_positions == 0
            ? 0.0
            : std::pow(static_cast<double>(idx.matched_positions) / big_n *
                           std::pow(quarter, p),
                       1.0 / p);
    idx.pair_correlations_ok = idx.pairs > 0 && idx.min_matched_abs >= quarter - 1e-12;
    idx.lower_bound_ok = idx.norm_diag_route >= idx.diag_lower_bound - 1e-12;
    idx.size_condition_ok =
        static_cast<double>(idx.matched_positions) >= delta * epsilon * big_n / 2.0 - 1e-12;

    report.chain_middle += (p - 1.0) * idx.norm_spectral * idx.norm_spectral;
    report.per_index.push_back(std::move(idx));
  }

  report.chain_lhs = n * (p - 1.0) * std::pow(delta * epsilon / 2.0, 2.0 / p) *
                     quarter * quarter;
  report.chain_rhs = std::pow(big_n, 2.0 * (p - 1.0) / p);
  report.chain_ok = report.chain_lhs <= report.chain_rhs + 1e-9 * (1.0 + report.chain_rhs);
  report.chain_middle_ok =
      report.chain_middle <= report.chain_rhs + 1e-9 * (1.0 + report.chain_rhs);
  report.implied_n_max =
      report.chain_rhs /
      ((p - 1.0) * std::pow(delta * epsilon / 2.0, 2.0 / p) * quarter * quarter);

  // Every point value C(x) C(x)^T is rank one with singular value N, so
  // ||f(x)||_p^p = N^{p-1}; spot-check a few points.
  const double expected = std::pow(big_n, p - 1.0);
  for (std::uint32_t x = 0; x < points; x += std::max<std::uint32_t>(1, points / 3)) {
    const std::int8_t* word = words.data() + static_cast<std::size_t>(x) * length;
    double sq = 0.0;
    for (std::size_t a = 0; a < length; ++a) {
      sq += static_cast<double>(word[a]) * static_cast<double>(word[a]);
    }
    // Rank-one spectrum: singular values (sq, 0, ..., 0).
    const double norm_p = std::pow(std::pow(sq, p) / big_n, 1.0 / p);
    report.point_norm_max_err = std::max(
        report.point_norm_max_err, std::abs(std::pow(norm_p, p) - expected) / expected);
  }
  return report;
}

}  // namespace matcube

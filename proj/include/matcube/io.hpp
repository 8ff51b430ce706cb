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
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "matcube/common.hpp"
#include "matcube/cube.hpp"
#include "matcube/ldc.hpp"
#include "matcube/qrac.hpp"

// File formats (documented in docs/formats.md):
//
//  * Cube binary: magic "MCUBEv1\n", then u32 n, u32 d, then 2^n * d * d
//    complex entries in x order, each matrix row-major, each entry two
//    IEEE-754 doubles (re, im). All integers and doubles little-endian.
//  * Cube JSON: {"format": "matcube-cube", "n", "d", "values"} with values
//    a list over x of row-major matrices whose entries are [re, im].
//  * Code text: either "linear <n> <N>" followed by N hex generator masks
//    (bit t of the mask multiplies message bit t), or a headerless CSV of
//    2^n rows with N entries of +-1 per row.
//  * Decoder JSON: {"format": "matcube-decoder", "q", "codeword_length",
//    "per_index": [[{"weight", "tuple", "table" | "values"}]]} where
//    "table" is a bit string indexed by the oracle pattern z (char '1'
//    means output -1) and "values" is a list of reals in [-1, 1].
//  * Matching JSON: {"format": "matcube-matching", "codeword_length",
//    "per_index": [[{"tuple", "sign", "correlation"}]]}.
//  * Qrac JSON: {"format": "matcube-qrac", "manifest": {n, k, m,
//    tolerance}, "encoding": cube values for f, "measurements":
//    {"<S mask>": [outcome matrices]}}; "measurements" may be omitted when
//    only the parity view is needed.

namespace matcube {

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(b, 4);
}

inline void put_f64(std::ostream& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(b, 8);
}

inline std::uint32_t get_u32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw io_error(path + ": truncated header");
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline double get_f64(std::istream& in, const std::string& path) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) {
    throw io_error(path + ": truncated payload");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

inline constexpr char kCubeMagic[8] = {'M', 'C', 'U', 'B', 'E', 'v', '1', '\n'};

}  // namespace detail

using ordered_json = nlohmann::ordered_json;

inline void write_cube_binary(const CubeFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path + ": cannot open for writing");
  out.write(detail::kCubeMagic, 8);
  detail::put_u32(out, static_cast<std::uint32_t>(f.n()));
  detail::put_u32(out, static_cast<std::uint32_t>(f.d()));
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const auto m = f.matrix(x);
    for (int r = 0; r < f.d(); ++r) {
      for (int c = 0; c < f.d(); ++c) {
        detail::put_f64(out, m(r, c).real());
        detail::put_f64(out, m(r, c).imag());
      }
    }
  }
  if (!out) throw io_error(path + ": write failed");
}

inline CubeFunction read_cube_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path + ": cannot open");
  char magic[8];
  if (!in.read(magic, 8) || !std::equal(magic, magic + 8, detail::kCubeMagic)) {
    throw io_error(path + ": not a cube binary (bad magic)");
  }
  const std::uint32_t n = detail::get_u32(in, path);
  const std::uint32_t d = detail::get_u32(in, path);
  if (n > static_cast<std::uint32_t>(defaults::max_cube_bits) || d < 1 || d > 1u << 12) {
    throw io_error(path + ": unreasonable dimensions in header");
  }
  CubeFunction f(static_cast<int>(n), static_cast<int>(d));
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    auto m = f.matrix(x);
    for (int r = 0; r < f.d(); ++r) {
      for (int c = 0; c < f.d(); ++c) {
        const double re = detail::get_f64(in, path);
        const double im = detail::get_f64(in, path);
        m(r, c) = {re, im};
      }
    }
  }
  in.peek();
  if (!in.eof()) throw io_error(path + ": trailing bytes after payload");
  return f;
}

inline ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw io_error(where + ": matrix must be a row list");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw io_error(where + ": ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row.at(static_cast<std::size_t>(c));
      if (!e.is_array() || e.size() != 2) {
        throw io_error(where + ": entries must be [re, im]");
      }
      m(r, c) = {e.at(0).get<double>(), e.at(1).get<double>()};
    }
  }
  return m;
}

inline ordered_json cube_to_json(const CubeFunction& f) {
  ordered_json j;
  j["format"] = "matcube-cube";
  j["n"] = f.n();
  j["d"] = f.d();
  ordered_json values = ordered_json::array();
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    values.push_back(matrix_to_json(f.matrix(x)));
  }
  j["values"] = std::move(values);
  return j;
}

inline CubeFunction cube_from_json(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.value("format", "") != "matcube-cube") {
      throw io_error(where + ": missing format tag matcube-cube");
    }
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    CubeFunction f(n, d);
    const auto& values = j.at("values");
    if (values.size() != f.size()) throw io_error(where + ": wrong number of points");
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      ComplexMatrix m = matrix_from_json(values.at(x), where);
      if (m.rows() != d || m.cols() != d) throw io_error(where + ": matrix shape mismatch");
      f.matrix(x) = m;
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(where + ": " + e.what());
  }
}

inline void write_cube_json(const CubeFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << cube_to_json(f).dump(2) << '\n';
}

inline CubeFunction read_cube_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
  return cube_from_json(j, path);
}

inline void write_code(const CodeSpec& code, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  if (code.is_linear()) {
    out << "linear " << code.n() << ' ' << code.length() << '\n';
    out << std::hex;
    for (std::uint32_t g : code.generators()) out << g << '\n';
  } else {
    const std::uint32_t points = std::uint32_t{1} << code.n();
    for (std::uint32_t x = 0; x < points; ++x) {
      for (std::int64_t jj = 0; jj < code.length(); ++jj) {
        if (jj) out << ',';
        out << code.entry(x, jj);
      }
      out << '\n';
    }
  }
  if (!out) throw io_error(path + ": write failed");
}

inline CodeSpec read_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open");
  std::string first;
  if (!std::getline(in, first)) throw io_error(path + ": empty file");
  std::istringstream head(first);
  std::string kind;
  head >> kind;
  if (kind == "linear") {
    int n = 0;
    std::int64_t length = 0;
    if (!(head >> n >> length)) throw io_error(path + ": linear header needs n and N");
    std::vector<std::uint32_t> generators;
    std::string line;
    while (std::getline(in, line)) {
      std::string token;
      std::istringstream(line) >> token;
      if (token.empty()) continue;
      const bool hex = token.size() <= 8 &&
                       token.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos;
      if (!hex) throw io_error(path + ": bad hex mask '" + token + "'");
      generators.push_back(static_cast<std::uint32_t>(std::stoul(token, nullptr, 16)));
    }
    if (static_cast<std::int64_t>(generators.size()) != length) {
      throw io_error(path + ": expected " + std::to_string(length) + " generator rows");
    }
    try {
      return CodeSpec::linear(n, std::move(generators));
    } catch (const std::exception& e) {
      throw io_error(path + ": " + e.what());
    }
  }

  // Headerless +-1 CSV; n is inferred from the row count.
  std::vector<std::int8_t> entries;
  std::int64_t length = -1;
  std::int64_t rows = 0;
  std::string line = first;
  do {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::int64_t cols = 0;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      std::istringstream cs(cell);
      int v = 0;
      if (!(cs >> v) || (v != 1 && v != -1)) {
        throw io_error(path + ": table entries must be +1 or -1");
      }
      entries.push_back(static_cast<std::int8_t>(v));
      ++cols;
    }
    if (length < 0) length = cols;
    if (cols != length) throw io_error(path + ": ragged CSV rows");
    ++rows;
  } while (std::getline(in, line));
  if (rows < 2 || (rows & (rows - 1)) != 0) {
    throw io_error(path + ": row count must be a power of two (one row per message)");
  }
  int n = 0;
  while ((std::int64_t{1} << n) < rows) ++n;
  try {
    return CodeSpec::table(n, length, std::move(entries));
  } catch (const std::exception& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline ordered_json decoder_to_json(const DecoderSpec& dec) {
  ordered_json j;
  j["format"] = "matcube-decoder";
  j["q"] = dec.q();
  j["codeword_length"] = dec.codeword_length();
  ordered_json per_index = ordered_json::array();
  for (int i = 0; i < dec.message_bits(); ++i) {
    ordered_json entries = ordered_json::array();
    for (const DecoderEntry& e : dec.index(i)) {
      ordered_json je;
      je["weight"] = e.weight;
      je["tuple"] = e.tuple;
      bool deterministic = true;
      for (double v : e.table) deterministic = deterministic && (v == 1.0 || v == -1.0);
      if (deterministic) {
        std::string bits(e.table.size(), '0');
        for (std::size_t z = 0; z < e.table.size(); ++z) {
          if (e.table[z] < 0) bits[z] = '1';
        }
        je["table"] = bits;
      } else {
        je["values"] = e.table;
      }
      entries.push_back(std::move(je));
    }
    per_index.push_back(std::move(entries));
  }
  j["per_index"] = std::move(per_index);
  return j;
}

inline DecoderSpec decoder_from_json(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.value("format", "") != "matcube-decoder") {
      throw io_error(where + ": missing format tag matcube-decoder");
    }
    const int q = j.at("q").get<int>();
    const std::int64_t length = j.at("codeword_length").get<std::int64_t>();
    std::vector<std::vector<DecoderEntry>> per_index;
    for (const auto& entries : j.at("per_index")) {
      std::vector<DecoderEntry> list;
      for (const auto& je : entries) {
        DecoderEntry e;
        e.weight = je.at("weight").get<double>();
        e.tuple = je.at("tuple").get<std::vector<std::int32_t>>();
        if (je.contains("table")) {
          const std::string bits = je.at("table").get<std::string>();
          e.table.reserve(bits.size());
          for (char ch : bits) {
            if (ch != '0' && ch != '1') {
              throw io_error(where + ": truth table strings use only 0 and 1");
            }
            e.table.push_back(ch == '1' ? -1.0 : 1.0);
          }
        } else {
          e.table = je.at("values").get<std::vector<double>>();
        }
        list.push_back(std::move(e));
      }
      per_index.push_back(std::move(list));
    }
    return DecoderSpec::validated(q, length, std::move(per_index));
  } catch (const nlohmann::json::exception& e) {
    throw io_error(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw io_error(where + ": " + e.what());
  }
}

inline void write_decoder(const DecoderSpec& dec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << decoder_to_json(dec).dump(2) << '\n';
}

inline DecoderSpec read_decoder(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
  return decoder_from_json(j, path);
}

inline ordered_json matching_to_json(const MatchingFamily& fam) {
  ordered_json j;
  j["format"] = "matcube-matching";
  j["codeword_length"] = fam.codeword_length;
  ordered_json per_index = ordered_json::array();
  for (const auto& tuples : fam.per_index) {
    ordered_json list = ordered_json::array();
    for (const MatchedTuple& t : tuples) {
      ordered_json jt;
      jt["tuple"] = t.tuple;
      jt["sign"] = t.sign;
      jt["correlation"] = t.correlation;
      list.push_back(std::move(jt));
    }
    per_index.push_back(std::move(list));
  }
  j["per_index"] = std::move(per_index);
  return j;
}

inline MatchingFamily matching_from_json(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.value("format", "") != "matcube-matching") {
      throw io_error(where + ": missing format tag matcube-matching");
    }
    const std::int64_t length = j.at("codeword_length").get<std::int64_t>();
    std::vector<std::vector<MatchedTuple>> per_index;
    for (const auto& tuples : j.at("per_index")) {
      std::vector<MatchedTuple> list;
      for (const auto& jt : tuples) {
        MatchedTuple t;
        t.tuple = jt.at("tuple").get<std::vector<std::int32_t>>();
        t.sign = jt.at("sign").get<int>();
        t.correlation = jt.value("correlation", 0.0);
        list.push_back(std::move(t));
      }
      per_index.push_back(std::move(list));
    }
    return MatchingFamily::validated(length, std::move(per_index));
  } catch (const nlohmann::json::exception& e) {
    throw io_error(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw io_error(where + ": " + e.what());
  }
}

inline void write_matching(const MatchingFamily& fam, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << matching_to_json(fam).dump(2) << '\n';
}

inline MatchingFamily read_matching(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
  return matching_from_json(j, path);
}

inline ordered_json qrac_to_json(const Qrac& q) {
  ordered_json j;
  j["format"] = "matcube-qrac";
  j["manifest"] = {{"n", q.n()}, {"k", q.k()}, {"m", q.m()}, {"tolerance", q.tolerance()}};
  ordered_json values = ordered_json::array();
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << q.n()); ++x) {
    values.push_back(matrix_to_json(q.encoding().matrix(x)));
  }
  j["encoding"] = std::move(values);
  ordered_json meas;
  for (const auto& [s, povm] : q.measurements()) {
    ordered_json outcomes = ordered_json::array();
    for (std::size_t w = 0; w < povm.size(); ++w) {
      outcomes.push_back(matrix_to_json(povm.outcome(w)));
    }
    meas[std::to_string(s)] = std::move(outcomes);
  }
  j["measurements"] = std::move(meas);
  return j;
}

inline ordered_json xor_qrac_to_json(const XorQrac& q) {
  ordered_json j;
  j["format"] = "matcube-qrac";
  j["manifest"] = {{"n", q.n()}, {"k", q.k()}, {"m", q.m()}, {"tolerance", q.tolerance()}};
  ordered_json values = ordered_json::array();
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << q.n()); ++x) {
    values.push_back(matrix_to_json(q.encoding().matrix(x)));
  }
  j["encoding"] = std::move(values);
  return j;
}

namespace detail {

struct QracParts {
  int n = 0, k = 0, m = 0;
  double tolerance = 0.0;
  CubeFunction encoding{0, 1};
};

inline QracParts qrac_parts_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.value("format", "") != "matcube-qrac") {
    throw io_error(where + ": missing format tag matcube-qrac");
  }
  const auto& man = j.at("manifest");
  QracParts parts;
  parts.n = man.at("n").get<int>();
  parts.k = man.at("k").get<int>();
  parts.m = man.at("m").get<int>();
  parts.tolerance = man.value("tolerance", defaults::tolerance);
  if (parts.n < 1 || parts.n > defaults::max_cube_bits || parts.m < 0 || parts.m > 12) {
    throw io_error(where + ": unreasonable manifest dimensions");
  }
  const auto& values = j.at("encoding");
  if (values.size() != (std::size_t{1} << parts.n)) {
    throw io_error(where + ": encoding must list one state per input");
  }
  const Eigen::Index d = Eigen::Index{1} << parts.m;
  parts.encoding = CubeFunction(parts.n, static_cast<int>(d));
  for (std::size_t x = 0; x < values.size(); ++x) {
    ComplexMatrix mat = matrix_from_json(values.at(x), where);
    if (mat.rows() != d || mat.cols() != d) {
      throw io_error(where + ": encoding matrices must be 2^m x 2^m");
    }
    parts.encoding.matrix(static_cast<std::uint32_t>(x)) = mat;
  }
  return parts;
}

}  // namespace detail

inline XorQrac read_xor_qrac(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
  try {
    auto parts = detail::qrac_parts_from_json(j, path);
    return XorQrac::validated(parts.n, parts.k, parts.m, std::move(parts.encoding),
                              parts.tolerance);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline Qrac read_qrac(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
  try {
    auto parts = detail::qrac_parts_from_json(j, path);
    std::map<std::uint32_t, Povm> measurements;
    for (const auto& [key, outcomes] : j.at("measurements").items()) {
      if (key.empty() || key.size() > 9 ||
          key.find_first_not_of("0123456789") != std::string::npos) {
        throw io_error(path + ": measurement keys must be decimal subset masks");
      }
      const std::uint32_t s = static_cast<std::uint32_t>(std::stoul(key));
      std::vector<ComplexMatrix> effects;
      for (const auto& jm : outcomes) effects.push_back(matrix_from_json(jm, path));
      measurements.emplace(s, Povm::validated(std::move(effects), parts.tolerance));
    }
    return Qrac::validated(parts.n, parts.k, parts.m, std::move(parts.encoding),
                           std::move(measurements), parts.tolerance);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  } catch (const std::logic_error& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline void write_qrac(const Qrac& q, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << qrac_to_json(q).dump(2) << '\n';
}

inline void write_xor_qrac(const XorQrac& q, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << xor_qrac_to_json(q).dump(2) << '\n';
}

inline ordered_json smooth_report_to_json(const SmoothReport& r) {
  ordered_json j;
  j["delta"] = r.delta;
  j["epsilon"] = r.epsilon;
  j["threshold"] = r.threshold;
  j["smooth_bound"] = r.smooth_bound;
  j["c_effective"] = r.c_effective;
  j["heavy"] = r.heavy;
  j["heavy_ok"] = r.heavy_ok;
  j["marginals_ok"] = r.marginals_ok;
  j["min_success_before"] = r.min_success_before;
  j["min_success_after"] = r.min_success_after;
  j["success_ok"] = r.success_ok;
  return j;
}

inline ordered_json matching_result_to_json(const MatchingResult& r) {
  auto tuples = [](const std::vector<GoodTuple>& list) {
    ordered_json out = ordered_json::array();
    for (const GoodTuple& g : list) {
      ordered_json jt;
      jt["tuple"] = g.tuple;
      jt["table"] = g.table;
      jt["correlation"] = g.correlation;
      out.push_back(std::move(jt));
    }
    return out;
  };
  ordered_json j;
  j["good"] = tuples(r.good);
  j["matching"] = tuples(r.matching);
  j["size_bound"] = r.size_bound;
  j["c_effective"] = r.c_effective;
  j["size_ok"] = r.size_ok;
  j["min_success"] = r.min_success;
  j["decodable"] = r.decodable;
  return j;
}

inline ordered_json parity_result_to_json(const ParityResult& r) {
  ordered_json j;
  j["base_correlation"] = r.base_correlation;
  j["subset_mask"] = r.subset_mask;
  j["subset"] = r.subset;
  j["sign"] = r.sign;
  j["correlation"] = r.correlation;
  j["guarantee"] = r.guarantee;
  j["expansion_residual"] = r.expansion_residual;
  return j;
}

inline ordered_json certificate_to_json(const CertificateReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["length"] = r.length;
  j["delta"] = r.delta;
  j["epsilon"] = r.epsilon;
  j["p"] = r.p;
  ordered_json per_index = ordered_json::array();
  for (const CertificateIndexReport& idx : r.per_index) {
    ordered_json ji;
    ji["index"] = idx.index;
    ji["pairs"] = idx.pairs;
    ji["singletons"] = idx.singletons;
    ji["matched_positions"] = idx.matched_positions;
    ji["coefficient_symmetric"] = idx.coefficient_symmetric;
    ji["coefficient_zero_diagonal"] = idx.coefficient_zero_diagonal;
    ji["norm_spectral"] = idx.norm_spectral;
    ji["norm_diag_route"] = idx.norm_diag_route;
    ji["pinch_margin"] = idx.pinch_margin;
    ji["diag_lower_bound"] = idx.diag_lower_bound;
    ji["min_matched_abs"] = idx.min_matched_abs;
    ji["pair_correlations_ok"] = idx.pair_correlations_ok;
    ji["lower_bound_ok"] = idx.lower_bound_ok;
    ji["size_condition_ok"] = idx.size_condition_ok;
    per_index.push_back(std::move(ji));
  }
  j["per_index"] = std::move(per_index);
  j["has_singletons"] = r.has_singletons;
  j["chain_lhs"] = r.chain_lhs;
  j["chain_middle"] = r.chain_middle;
  j["chain_rhs"] = r.chain_rhs;
  j["chain_ok"] = r.chain_ok;
  j["chain_middle_ok"] = r.chain_middle_ok;
  j["implied_n_max"] = r.implied_n_max;
  j["point_norm_max_err"] = r.point_norm_max_err;
  return j;
}

inline ordered_json reduction_to_json(const QracReduction& r) {
  ordered_json j;
  ordered_json beta;
  for (const auto& [s, v] : r.beta) beta[std::to_string(s)] = v;
  ordered_json norms;
  for (const auto& [s, v] : r.coefficient_trace_norm) norms[std::to_string(s)] = v;
  j["beta"] = std::move(beta);
  j["coefficient_trace_norm"] = std::move(norms);
  j["lhs_identity"] = r.lhs_identity;
  j["rhs_identity"] = r.rhs_identity;
  j["chain_beta_mean"] = r.chain_beta_mean;
  j["chain_trace_norm_mean"] = r.chain_trace_norm_mean;
  j["max_domination_gap"] = r.max_domination_gap;
  return j;
}

inline ordered_json classical_search_to_json(const ClassicalSearchResult& r) {
  ordered_json j;
  j["p_star"] = r.p_star;
  j["wins"] = r.wins;
  j["trials"] = r.trials;
  j["encoding"] = r.encoding;
  ordered_json dec;
  for (const auto& [s, answers] : r.decoding) dec[std::to_string(s)] = answers;
  j["decoding"] = std::move(dec);
  return j;
}

}  // namespace matcube

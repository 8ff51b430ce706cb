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

// Command-line front end. Exit codes: 0 success, 2 usage, 3 guard
// violation, 4 numerical violation detected, 5 I/O failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "matcube/bounds.hpp"
#include "matcube/cube.hpp"
#include "matcube/hyper.hpp"
#include "matcube/io.hpp"
#include "matcube/ldc.hpp"
#include "matcube/parallel.hpp"
#include "matcube/qrac.hpp"
#include "matcube/rng.hpp"

namespace {

using matcube::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 4;

/// Shortest round-trip decimal for a double, shared by CSV and JSON output.
std::string num(double v) { return ordered_json(v).dump(); }

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw matcube::io_error(out_path + ": cannot open for writing");
  f << text;
  if (!f) throw matcube::io_error(out_path + ": write failed");
}

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

/// Grid syntax: either "lo:step:hi" (inclusive) or a comma list "1,1.5,2".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  const auto parse_one = [&](const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad grid value '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("bad grid value '" + tok + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    std::string lo, step, hi;
    if (!std::getline(in, lo, ':') || !std::getline(in, step, ':') ||
        !std::getline(in, hi)) {
      throw std::invalid_argument("grid must be lo:step:hi or a comma list");
    }
    const double a = parse_one(lo), s = parse_one(step), b = parse_one(hi);
    if (!(s > 0.0) || b < a) throw std::invalid_argument("grid needs step > 0 and hi >= lo");
    for (double v = a; v <= b + s * 1e-9; v += s) grid.push_back(std::min(v, b));
  } else {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) grid.push_back(parse_one(tok));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

ordered_json config_json(const std::string& command, ordered_json inputs) {
  ordered_json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  return j;
}

struct CommonOpts {
  std::string out;
  bool show_config = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
  cmd->add_flag("--show-config", c.show_config,
                "Print the effective configuration as JSON and exit");
}

// ---------------------------------------------------------------------------
// verify-two-point

const std::vector<int>& dims_check(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("--dims must list at least one dimension");
  for (int d : dims) {
    if (d < 1 || d > 64) throw std::invalid_argument("--dims entries must lie in [1, 64]");
  }
  return dims;
}

struct TwoPointOpts {
  CommonOpts common;
  int trials = 100;
  std::vector<int> dims = {2, 3, 4};
  std::string p_grid = "1,1.2,1.5,1.8,2";
  std::uint64_t seed = 0;
  double tol = matcube::defaults::tolerance;
};

int run_verify_two_point(const TwoPointOpts& o) {
  const std::vector<double> grid = parse_grid(o.p_grid);
  ordered_json inputs{{"trials", o.trials}, {"dims", o.dims},      {"p_grid", grid},
                      {"seed", o.seed},     {"tolerance", o.tol}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("verify-two-point", inputs).dump(2) + "\n");
    return kExitOk;
  }
  if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  for (int d : dims_check(o.dims)) (void)d;

  std::ostringstream csv;
  csv << "# matcube verify-two-point seed=" << o.seed << "\n";
  csv << "trial,d,p,lhs,rhs,margin\n";
  matcube::Philox rng(o.seed, 0);
  std::uint64_t violations = 0;
  for (int trial = 0; trial < o.trials; ++trial) {
    for (int d : o.dims) {
      const matcube::ComplexMatrix a = matcube::ginibre_matrix(rng, d);
      const matcube::ComplexMatrix b = matcube::ginibre_matrix(rng, d);
      for (double p : grid) {
        const matcube::Sides s = matcube::two_point_sides(a, b, p);
        const double margin = s.margin();
        if (margin < -o.tol * (1.0 + std::abs(s.rhs))) ++violations;
        csv << trial << ',' << d << ',' << num(p) << ',' << num(s.lhs) << ','
            << num(s.rhs) << ',' << num(margin) << "\n";
      }
    }
  }
  csv << "# violations=" << violations << "\n";
  emit(o.common.out, csv.str());
  return violations == 0 ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// verify-hyper

struct HyperOpts {
  CommonOpts common;
  int trials = 25;
  int n = 3;
  int d = 2;
  std::string ensemble = "ginibre";
  std::string p_grid = "1,1.2,1.5,1.8,2";
  std::uint64_t seed = 0;
  double tol = matcube::defaults::tolerance;
};

int run_verify_hyper(const HyperOpts& o) {
  const std::vector<double> grid = parse_grid(o.p_grid);
  ordered_json inputs{{"trials", o.trials}, {"n", o.n},       {"d", o.d},
                      {"ensemble", o.ensemble}, {"p_grid", grid}, {"seed", o.seed},
                      {"tolerance", o.tol}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("verify-hyper", inputs).dump(2) + "\n");
    return kExitOk;
  }
  if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  const matcube::Ensemble ens = matcube::parse_ensemble(o.ensemble);

  std::ostringstream csv;
  csv << "# matcube verify-hyper seed=" << o.seed << "\n";
  csv << "trial,n,d,ensemble,p,lhs,rhs,margin\n";
  matcube::Philox rng(o.seed, 0);
  std::uint64_t violations = 0;
  for (int trial = 0; trial < o.trials; ++trial) {
    const matcube::CubeFunction f = matcube::random_cube(rng, o.n, o.d, ens);
    const matcube::SpectralTable coeffs =
        matcube::spectral_table(matcube::fourier_transform(f));
    const matcube::SpectralTable values = matcube::spectral_table(f);
    for (double p : grid) {
      const double lhs = matcube::hc_lhs_from_spectra(coeffs, p);
      const double rhs = matcube::hc_rhs_from_spectra(values, p);
      const double margin = rhs - lhs;
      if (margin < -o.tol * (1.0 + std::abs(rhs))) ++violations;
      csv << trial << ',' << o.n << ',' << o.d << ',' << o.ensemble << ','
          << num(p) << ',' << num(lhs) << ',' << num(rhs) << ',' << num(margin)
          << "\n";
    }
  }
  csv << "# violations=" << violations << "\n";
  emit(o.common.out, csv.str());
  return violations == 0 ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// qrac subcommands

struct QracBiasOpts {
  CommonOpts common;
  std::string qrac_file;
  bool check_helstrom = false;
  double tol = matcube::defaults::tolerance;
};

int run_qrac_bias(const QracBiasOpts& o) {
  ordered_json inputs{{"qrac", basename_of(o.qrac_file)},
                      {"check_helstrom", o.check_helstrom},
                      {"tolerance", o.tol}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("qrac bias", inputs).dump(2) + "\n");
    return kExitOk;
  }
  const matcube::XorQrac xq = matcube::read_xor_qrac(o.qrac_file);
  const matcube::CubeFunction fhat = matcube::fourier_transform(xq.encoding());

  ordered_json j = config_json("qrac bias", inputs);
  j["n"] = xq.n();
  j["k"] = xq.k();
  j["m"] = xq.m();
  j["bias"] = matcube::xor_bias(xq);
  ordered_json per_subset;
  double max_gap = 0.0;
  matcube::for_each_subset_of_size(xq.n(), xq.k(), [&](std::uint32_t s) {
    ordered_json entry;
    const double tn = matcube::trace_norm(fhat.matrix(s));
    entry["trace_norm"] = tn;
    if (o.check_helstrom) {
      const double hb = matcube::helstrom_xor_measurement(xq, s).bias;
      entry["helstrom_bias"] = hb;
      max_gap = std::max(max_gap, std::abs(hb - tn));
    }
    per_subset[std::to_string(s)] = std::move(entry);
  });
  j["per_subset"] = std::move(per_subset);
  int rc = kExitOk;
  if (o.check_helstrom) {
    j["max_helstrom_gap"] = max_gap;
    if (max_gap > o.tol) rc = kExitViolation;
  }
  emit(o.common.out, j.dump(2) + "\n");
  return rc;
}

struct QracMassOpts {
  CommonOpts common;
  std::string qrac_file;
  double delta = 0.5;
  double tol = matcube::defaults::tolerance;
};

int run_qrac_mass(const QracMassOpts& o) {
  ordered_json inputs{{"qrac", basename_of(o.qrac_file)},
                      {"delta", o.delta},
                      {"tolerance", o.tol}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("qrac mass", inputs).dump(2) + "\n");
    return kExitOk;
  }
  const matcube::XorQrac xq = matcube::read_xor_qrac(o.qrac_file);
  const matcube::Sides s = matcube::coefficient_mass_sides(xq, o.delta);
  ordered_json j = config_json("qrac mass", inputs);
  j["lhs"] = s.lhs;
  j["rhs"] = s.rhs;
  j["margin"] = s.margin();
  emit(o.common.out, j.dump(2) + "\n");
  return s.margin() < -o.tol * (1.0 + std::abs(s.rhs)) ? kExitViolation : kExitOk;
}

struct QracReduceOpts {
  CommonOpts common;
  std::string qrac_file;
  double identity_tol = 1e-12;
  double domination_tol = 1e-9;
};

int run_qrac_reduce(const QracReduceOpts& o) {
  ordered_json inputs{{"qrac", basename_of(o.qrac_file)},
                      {"identity_tolerance", o.identity_tol},
                      {"domination_tolerance", o.domination_tol}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("qrac reduce", inputs).dump(2) + "\n");
    return kExitOk;
  }
  const matcube::Qrac q = matcube::read_qrac(o.qrac_file);
  const matcube::QracReduction r = matcube::reduce_qrac_to_xor(q);
  ordered_json j = config_json("qrac reduce", inputs);
  j.update(matcube::reduction_to_json(r));
  const double identity_residual = std::abs(r.lhs_identity - r.rhs_identity);
  j["identity_residual"] = identity_residual;
  emit(o.common.out, j.dump(2) + "\n");
  const bool bad = identity_residual > o.identity_tol * (1.0 + std::abs(r.rhs_identity)) ||
                   r.max_domination_gap > o.domination_tol;
  return bad ? kExitViolation : kExitOk;
}

struct QracSearchOpts {
  CommonOpts common;
  int n = 2;
  int k = 1;
  int m = 1;
};

int run_qrac_search(const QracSearchOpts& o) {
  ordered_json inputs{{"n", o.n}, {"k", o.k}, {"m", o.m}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("qrac search", inputs).dump(2) + "\n");
    return kExitOk;
  }
  const matcube::ClassicalSearchResult r = matcube::best_classical_qrac(o.n, o.k, o.m);
  ordered_json j = config_json("qrac search", inputs);
  j.update(matcube::classical_search_to_json(r));
  emit(o.common.out, j.dump(2) + "\n");
  return kExitOk;
}

struct QracBoundOpts {
  CommonOpts common;
  int k = 1;
  int n = 1;
  int m = 1;
  std::optional<double> eta;
  double c_eta = 1.0;
};

int run_qrac_bound(const QracBoundOpts& o) {
  ordered_json inputs{{"k", o.k}, {"n", o.n}, {"m", o.m}, {"c_eta", o.c_eta}};
  if (o.eta) inputs["eta"] = *o.eta;
  if (o.common.show_config) {
    emit(o.common.out, config_json("qrac bound", inputs).dump(2) + "\n");
    return kExitOk;
  }
  ordered_json j = config_json("qrac bound", inputs);
  const double bias_bound = matcube::xor_bias_bound(o.k, o.n, o.m);
  j["xor_bias_bound"] = bias_bound;
  j["xor_bias_bound_vacuous"] = !(bias_bound < 1.0);
  if (o.eta) {
    const double p_bound = matcube::qrac_success_bound(o.k, o.n, o.m, *o.eta, o.c_eta);
    j["qrac_success_bound"] = p_bound;
    j["qrac_success_bound_vacuous"] = !(p_bound < 1.0);
  }
  emit(o.common.out, j.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ldc subcommands

struct LdcSmoothOpts {
  CommonOpts common;
  std::string code_file;
  std::string decoder_file;
  double delta = 0.25;
  double epsilon = 0.25;
  std::string out_decoder;
};

int run_ldc_smooth(const LdcSmoothOpts& o) {
  ordered_json inputs{{"code", basename_of(o.code_file)},
                      {"decoder", basename_of(o.decoder_file)},
                      {"delta", o.delta},
                      {"epsilon", o.epsilon}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("ldc smooth", inputs).dump(2) + "\n");
    return kExitOk;
  }
  const matcube::CodeSpec code = matcube::read_code(o.code_file);
  const matcube::DecoderSpec dec = matcube::read_decoder(o.decoder_file);
  const matcube::SmoothResult r = matcube::smooth_from_ldc(code, dec, o.delta, o.epsilon);
  if (!o.out_decoder.empty()) matcube::write_decoder(r.decoder, o.out_decoder);
  ordered_json j = config_json("ldc smooth", inputs);
  j["c"] = r.c;
  j["report"] = matcube::smooth_report_to_json(r.report);
  emit(o.common.out, j.dump(2) + "\n");
  return (r.report.heavy_ok && r.report.marginals_ok) ? kExitOk : kExitViolation;
}

struct LdcMatchOpts {
  CommonOpts common;
  std::string code_file;
  std::string decoder_file;
  int index = -1;  // -1: all indices
  double epsilon = 0.25;
};

int run_ldc_match(const LdcMatchOpts& o) {
  ordered_json inputs{{"code", basename_of(o.code_file)},
                      {"decoder", basename_of(o.decoder_file)},
                      {"index", o.index},
                      {"epsilon", o.epsilon}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("ldc match", inputs).dump(2) + "\n");
    return kExitOk;
  }
  const matcube::CodeSpec code = matcube::read_code(o.code_file);
  const matcube::DecoderSpec dec = matcube::read_decoder(o.decoder_file);
  ordered_json j = config_json("ldc match", inputs);
  ordered_json per_index = ordered_json::array();
  bool violation = false;
  const int lo = o.index < 0 ? 0 : o.index;
  const int hi = o.index < 0 ? code.n() - 1 : o.index;
  for (int i = lo; i <= hi; ++i) {
    const matcube::MatchingResult r = matcube::extract_matching(code, dec, i, o.epsilon);
    ordered_json ji = matcube::matching_result_to_json(r);
    ji["index"] = i;
    violation = violation || (r.decodable && !r.size_ok);
    per_index.push_back(std::move(ji));
  }
  j["per_index"] = std::move(per_index);
  emit(o.common.out, j.dump(2) + "\n");
  return violation ? kExitViolation : kExitOk;
}

struct LdcParityOpts {
  CommonOpts common;
  std::string code_file;
  int index = 0;
  std::vector<std::int32_t> tuple;
  std::string table_bits;
  std::vector<double> table_values;
  double epsilon = 0.25;
};

int run_ldc_parity(const LdcParityOpts& o) {
  ordered_json inputs{{"code", basename_of(o.code_file)}, {"index", o.index},
                      {"tuple", o.tuple},                 {"epsilon", o.epsilon}};
  if (!o.table_bits.empty()) inputs["table"] = o.table_bits;
  if (!o.table_values.empty()) inputs["values"] = o.table_values;
  if (o.common.show_config) {
    emit(o.common.out, config_json("ldc parity", inputs).dump(2) + "\n");
    return kExitOk;
  }
  if (o.table_bits.empty() == o.table_values.empty()) {
    throw std::invalid_argument("give exactly one of --table or --values");
  }
  std::vector<double> table;
  if (!o.table_bits.empty()) {
    for (char ch : o.table_bits) {
      if (ch != '0' && ch != '1') {
        throw std::invalid_argument("--table must be a bit string like 0110");
      }
      table.push_back(ch == '1' ? -1.0 : 1.0);
    }
  } else {
    table = o.table_values;
  }
  const matcube::CodeSpec code = matcube::read_code(o.code_file);
  const matcube::ParityResult r =
      matcube::parity_extraction(code, o.index, o.tuple, table, o.epsilon);
  ordered_json j = config_json("ldc parity", inputs);
  j.update(matcube::parity_result_to_json(r));
  emit(o.common.out, j.dump(2) + "\n");
  const bool bad = r.expansion_residual > 1e-9 || r.correlation < r.guarantee - 1e-12;
  return bad ? kExitViolation : kExitOk;
}

struct LdcCertifyOpts {
  CommonOpts common;
  std::string code_file;
  std::string decoder_file;
  std::string matching_file;
  double delta = 0.25;
  double epsilon = 0.25;
  std::string out_matching;
};

std::vector<std::string> certificate_violations(const matcube::CertificateReport& r) {
  std::vector<std::string> bad;
  bool preconditions = true;
  for (const matcube::CertificateIndexReport& idx : r.per_index) {
    if (idx.pinch_margin < -1e-9) {
      bad.push_back("pinch inequality violated at index " + std::to_string(idx.index));
    }
    if (!idx.coefficient_zero_diagonal || !idx.coefficient_symmetric) {
      bad.push_back("coefficient structure broken at index " + std::to_string(idx.index));
    }
    if (idx.pair_correlations_ok && !idx.lower_bound_ok) {
      bad.push_back("diagonal lower bound failed at index " + std::to_string(idx.index));
    }
    preconditions =
        preconditions && idx.pair_correlations_ok && idx.size_condition_ok;
  }
  if (!r.chain_middle_ok) bad.push_back("level-1 mass exceeds hypercontractive budget");
  if (preconditions && !r.chain_ok) bad.push_back("final chain inequality violated");
  return bad;
}

int run_ldc_certify(const LdcCertifyOpts& o) {
  ordered_json inputs{{"code", basename_of(o.code_file)},
                      {"delta", o.delta},
                      {"epsilon", o.epsilon}};
  if (!o.decoder_file.empty()) inputs["decoder"] = basename_of(o.decoder_file);
  if (!o.matching_file.empty()) inputs["matching"] = basename_of(o.matching_file);
  if (o.common.show_config) {
    emit(o.common.out, config_json("ldc certify", inputs).dump(2) + "\n");
    return kExitOk;
  }
  if (o.decoder_file.empty() == o.matching_file.empty()) {
    throw std::invalid_argument("give exactly one of --decoder or --matching");
  }
  const matcube::CodeSpec code = matcube::read_code(o.code_file);
  ordered_json j = config_json("ldc certify", inputs);

  matcube::MatchingFamily family;
  if (!o.matching_file.empty()) {
    family = matcube::read_matching(o.matching_file);
  } else {
    const matcube::DecoderSpec dec = matcube::read_decoder(o.decoder_file);
    const matcube::SmoothResult sm =
        matcube::smooth_from_ldc(code, dec, o.delta, o.epsilon);
    j["smooth"] = matcube::smooth_report_to_json(sm.report);
    std::vector<std::vector<matcube::MatchedTuple>> per_index;
    ordered_json sizes = ordered_json::array();
    for (int i = 0; i < code.n(); ++i) {
      const matcube::MatchingResult mr =
          matcube::extract_matching(code, sm.decoder, i, o.epsilon);
      std::vector<matcube::MatchedTuple> tuples;
      for (const matcube::GoodTuple& g : mr.matching) {
        const matcube::ParityResult pr =
            matcube::parity_extraction(code, i, g.tuple, g.table, o.epsilon);
        tuples.push_back({pr.subset, pr.sign, pr.correlation});
      }
      sizes.push_back(static_cast<std::int64_t>(tuples.size()));
      per_index.push_back(std::move(tuples));
    }
    j["matching_sizes"] = std::move(sizes);
    family = matcube::MatchingFamily::validated(code.length(), std::move(per_index));
  }
  if (!o.out_matching.empty()) matcube::write_matching(family, o.out_matching);

  const matcube::CertificateReport report =
      matcube::ldc_certificate(code, family, o.delta, o.epsilon);
  j["certificate"] = matcube::certificate_to_json(report);
  emit(o.common.out, j.dump(2) + "\n");

  const std::vector<std::string> bad = certificate_violations(report);
  if (!bad.empty()) {
    std::cerr << "error: " << bad.front() << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds subcommands

struct BlockDisjointOpts {
  CommonOpts common;
  int k = 1;
  int n = 1;
  int ell = 0;
  bool grid = false;
  bool csv = false;
};

int run_block_disjoint(const BlockDisjointOpts& o) {
  ordered_json inputs{{"k", o.k}, {"n", o.n}, {"ell", o.ell}, {"grid", o.grid}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("bounds block-disjoint", inputs).dump(2) + "\n");
    return kExitOk;
  }
  if (o.grid) {
    std::ostringstream csv;
    csv << "k,n,ell,exact,lower_bound\n";
    for (int l = 0; l <= o.k; ++l) {
      const matcube::BlockDisjointResult r = matcube::block_disjoint_probability(o.k, o.n, l);
      csv << o.k << ',' << o.n << ',' << l << ',' << num(r.exact) << ','
          << num(r.lower_bound) << "\n";
    }
    emit(o.common.out, csv.str());
    return kExitOk;
  }
  const matcube::BlockDisjointResult r = matcube::block_disjoint_probability(o.k, o.n, o.ell);
  if (o.csv) {
    std::ostringstream csv;
    csv << "k,n,ell,exact,lower_bound\n"
        << o.k << ',' << o.n << ',' << o.ell << ',' << num(r.exact) << ','
        << num(r.lower_bound) << "\n";
    emit(o.common.out, csv.str());
  } else {
    ordered_json j = config_json("bounds block-disjoint", inputs);
    j["exact"] = r.exact;
    j["lower_bound"] = r.lower_bound;
    j["margin"] = r.exact - r.lower_bound;
    emit(o.common.out, j.dump(2) + "\n");
  }
  return r.exact + 1e-12 >= r.lower_bound ? kExitOk : kExitViolation;
}

struct RacSuccessOpts {
  CommonOpts common;
  double sigma = 1.0;
  int k = 1;
  int ell = 0;
};

int run_rac_success(const RacSuccessOpts& o) {
  ordered_json inputs{{"sigma", o.sigma}, {"k", o.k}, {"ell", o.ell}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("bounds rac-success", inputs).dump(2) + "\n");
    return kExitOk;
  }
  ordered_json j = config_json("bounds rac-success", inputs);
  j["value"] = matcube::rac_from_protocol_success(o.sigma, o.k, o.ell);
  emit(o.common.out, j.dump(2) + "\n");
  return kExitOk;
}

struct EpsConvertOpts {
  CommonOpts common;
  double gamma = 1.0;
  double eps = 0.0;
};

int run_eps_convert(const EpsConvertOpts& o) {
  ordered_json inputs{{"gamma", o.gamma}, {"eps", o.eps}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("bounds eps-convert", inputs).dump(2) + "\n");
    return kExitOk;
  }
  ordered_json j = config_json("bounds eps-convert", inputs);
  j["value"] = matcube::eps_error_conversion(o.gamma, o.eps);
  emit(o.common.out, j.dump(2) + "\n");
  return kExitOk;
}

struct OnewayOpts {
  CommonOpts common;
  double c = 0.0;
  int k = 2;
  int n = 1;
  double eta = 1.5;
  int ell = 1;
  double c_eta = 1.0;
  double overhead = 0.0;
};

int run_oneway(const OnewayOpts& o) {
  ordered_json inputs{{"c", o.c},     {"k", o.k},         {"n", o.n},
                      {"eta", o.eta}, {"ell", o.ell},     {"c_eta", o.c_eta},
                      {"overhead", o.overhead}};
  if (o.common.show_config) {
    emit(o.common.out, config_json("bounds oneway", inputs).dump(2) + "\n");
    return kExitOk;
  }
  const matcube::OnewayBoundResult r =
      matcube::oneway_sdpt_bound(o.c, o.k, o.n, o.eta, o.ell, o.c_eta, o.overhead);
  ordered_json j = config_json("bounds oneway", inputs);
  j["value"] = r.value;
  j["vacuous"] = r.vacuous;
  emit(o.common.out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifiers and pipelines for matrix-valued Boolean analysis"};
  app.require_subcommand(1);

  TwoPointOpts two_point;
  CLI::App* cmd_tp = app.add_subcommand(
      "verify-two-point", "Sweep the two-matrix interpolation inequality");
  cmd_tp->add_option("--trials", two_point.trials, "Random pairs per dimension");
  cmd_tp->add_option("--dims", two_point.dims, "Matrix dimensions")->delimiter(',');
  cmd_tp->add_option("--p-grid", two_point.p_grid, "Exponents: lo:step:hi or comma list");
  cmd_tp->add_option("--seed", two_point.seed, "Random seed");
  cmd_tp->add_option("--tol", two_point.tol, "Violation tolerance");
  add_common(cmd_tp, two_point.common);

  HyperOpts hyper;
  CLI::App* cmd_hy = app.add_subcommand(
      "verify-hyper", "Sweep the tensorized hypercontractive inequality");
  cmd_hy->add_option("--trials", hyper.trials, "Random functions to draw");
  cmd_hy->add_option("--n", hyper.n, "Cube dimension");
  cmd_hy->add_option("--d", hyper.d, "Matrix dimension");
  cmd_hy->add_option("--ensemble", hyper.ensemble,
                     "ginibre | density | pm1-scalar | rank1");
  cmd_hy->add_option("--p-grid", hyper.p_grid, "Exponents: lo:step:hi or comma list");
  cmd_hy->add_option("--seed", hyper.seed, "Random seed");
  cmd_hy->add_option("--tol", hyper.tol, "Violation tolerance");
  add_common(cmd_hy, hyper.common);

  CLI::App* cmd_qrac = app.add_subcommand("qrac", "Random access code operations");
  cmd_qrac->require_subcommand(1);

  QracBiasOpts qbias;
  CLI::App* cmd_qb = cmd_qrac->add_subcommand("bias", "XOR bias of an encoding");
  cmd_qb->add_option("--qrac", qbias.qrac_file, "Qrac JSON file")->required();
  cmd_qb->add_flag("--check-helstrom", qbias.check_helstrom,
                   "Cross-check each trace norm against the optimal measurement");
  cmd_qb->add_option("--tol", qbias.tol, "Cross-check tolerance");
  add_common(cmd_qb, qbias.common);

  QracMassOpts qmass;
  CLI::App* cmd_qm = cmd_qrac->add_subcommand("mass", "Weighted coefficient mass bound");
  cmd_qm->add_option("--qrac", qmass.qrac_file, "Qrac JSON file")->required();
  cmd_qm->add_option("--delta", qmass.delta, "Level weight in [0, 1]")->required();
  cmd_qm->add_option("--tol", qmass.tol, "Violation tolerance");
  add_common(cmd_qm, qmass.common);

  QracReduceOpts qreduce;
  CLI::App* cmd_qr = cmd_qrac->add_subcommand(
      "reduce", "Reduce a full decoder to per-subset parity biases");
  cmd_qr->add_option("--qrac", qreduce.qrac_file, "Qrac JSON file with measurements")
      ->required();
  cmd_qr->add_option("--identity-tol", qreduce.identity_tol, "Identity residual tolerance");
  cmd_qr->add_option("--domination-tol", qreduce.domination_tol,
                     "Domination gap tolerance");
  add_common(cmd_qr, qreduce.common);

  QracSearchOpts qsearch;
  CLI::App* cmd_qs = cmd_qrac->add_subcommand(
      "search", "Exhaustive optimum over deterministic classical encodings");
  cmd_qs->add_option("--n", qsearch.n, "Message bits")->required();
  cmd_qs->add_option("--k", qsearch.k, "Recovered substring size")->required();
  cmd_qs->add_option("--m", qsearch.m, "Stored bits")->required();
  add_common(cmd_qs, qsearch.common);

  QracBoundOpts qbound;
  CLI::App* cmd_qd = cmd_qrac->add_subcommand("bound", "Closed-form bias and success bounds");
  cmd_qd->add_option("--k", qbound.k, "Parity size")->required();
  cmd_qd->add_option("--n", qbound.n, "Message bits")->required();
  cmd_qd->add_option("--m", qbound.m, "Stored bits (qubits)")->required();
  double eta_value = 0.0;
  CLI::Option* eta_opt =
      cmd_qd->add_option("--eta", eta_value, "Rate parameter, must exceed 2 ln 2");
  cmd_qd->add_option("--c-eta", qbound.c_eta, "Caller-supplied constant factor");
  add_common(cmd_qd, qbound.common);
  cmd_qd->callback([&] {
    if (eta_opt->count()) qbound.eta = eta_value;
  });

  CLI::App* cmd_ldc = app.add_subcommand("ldc", "Locally decodable code pipeline");
  cmd_ldc->require_subcommand(1);

  LdcSmoothOpts lsmooth;
  CLI::App* cmd_ls = cmd_ldc->add_subcommand("smooth", "Drop heavy queries from a decoder");
  cmd_ls->add_option("--code", lsmooth.code_file, "Code file")->required();
  cmd_ls->add_option("--decoder", lsmooth.decoder_file, "Decoder JSON file")->required();
  cmd_ls->add_option("--delta", lsmooth.delta, "Corruption budget in (0, 1)")->required();
  cmd_ls->add_option("--epsilon", lsmooth.epsilon, "Decoding advantage")->required();
  cmd_ls->add_option("--out-decoder", lsmooth.out_decoder,
                     "Write the smoothed decoder to this file");
  add_common(cmd_ls, lsmooth.common);

  LdcMatchOpts lmatch;
  CLI::App* cmd_lm = cmd_ldc->add_subcommand("match", "Extract disjoint good tuples");
  cmd_lm->add_option("--code", lmatch.code_file, "Code file")->required();
  cmd_lm->add_option("--decoder", lmatch.decoder_file, "Decoder JSON file")->required();
  cmd_lm->add_option("--index", lmatch.index, "Message index (default: all)");
  cmd_lm->add_option("--epsilon", lmatch.epsilon, "Goodness threshold")->required();
  add_common(cmd_lm, lmatch.common);

  LdcParityOpts lparity;
  CLI::App* cmd_lp = cmd_ldc->add_subcommand(
      "parity", "Replace one decoding rule by its best signed sub-parity");
  cmd_lp->add_option("--code", lparity.code_file, "Code file")->required();
  cmd_lp->add_option("--index", lparity.index, "Message index")->required();
  cmd_lp->add_option("--tuple", lparity.tuple, "Query positions")->delimiter(',')->required();
  cmd_lp->add_option("--table", lparity.table_bits, "Truth table bits, e.g. 0110");
  cmd_lp->add_option("--values", lparity.table_values, "Expected outputs in [-1, 1]")
      ->delimiter(',');
  cmd_lp->add_option("--epsilon", lparity.epsilon, "Precondition threshold")->required();
  add_common(cmd_lp, lparity.common);

  LdcCertifyOpts lcert;
  CLI::App* cmd_lc = cmd_ldc->add_subcommand(
      "certify", "Full lower-bound certificate for a 2-query code");
  cmd_lc->add_option("--code", lcert.code_file, "Code file")->required();
  cmd_lc->add_option("--decoder", lcert.decoder_file,
                     "Decoder JSON file (runs the whole pipeline)");
  cmd_lc->add_option("--matching", lcert.matching_file,
                     "Pre-extracted matching family JSON file");
  cmd_lc->add_option("--delta", lcert.delta, "Corruption budget in (0, 1)")->required();
  cmd_lc->add_option("--epsilon", lcert.epsilon, "Decoding advantage")->required();
  cmd_lc->add_option("--out-matching", lcert.out_matching,
                     "Write the extracted matching family to this file");
  add_common(cmd_lc, lcert.common);

  CLI::App* cmd_bounds = app.add_subcommand("bounds", "Closed-form bound evaluations");
  cmd_bounds->require_subcommand(1);

  BlockDisjointOpts bdis;
  CLI::App* cmd_bd = cmd_bounds->add_subcommand(
      "block-disjoint", "Distinct-block probability, exact and lower bound");
  cmd_bd->add_option("--k", bdis.k, "Number of blocks")->required();
  cmd_bd->add_option("--n", bdis.n, "Positions per block")->required();
  cmd_bd->add_option("--ell", bdis.ell, "Draws");
  cmd_bd->add_flag("--grid", bdis.grid, "CSV over ell = 0..k");
  cmd_bd->add_flag("--csv", bdis.csv, "CSV instead of JSON");
  add_common(cmd_bd, bdis.common);

  RacSuccessOpts brac;
  CLI::App* cmd_br = cmd_bounds->add_subcommand(
      "rac-success", "Success retained by block-disjoint recovery");
  cmd_br->add_option("--sigma", brac.sigma, "Per-call success")->required();
  cmd_br->add_option("--k", brac.k, "Number of blocks")->required();
  cmd_br->add_option("--ell", brac.ell, "Recovered indices")->required();
  add_common(cmd_br, brac.common);

  EpsConvertOpts beps;
  CLI::App* cmd_be = cmd_bounds->add_subcommand(
      "eps-convert", "Zero-error exponent to eps-error exponent");
  cmd_be->add_option("--gamma", beps.gamma, "Zero-error exponent")->required();
  cmd_be->add_option("--eps", beps.eps, "Allowed error in [0, 1/2]")->required();
  add_common(cmd_be, beps.common);

  OnewayOpts bone;
  CLI::App* cmd_bo = cmd_bounds->add_subcommand(
      "oneway", "One-way communication success bound");
  cmd_bo->add_option("--c", bone.c, "Transmitted bits")->required();
  cmd_bo->add_option("--k", bone.k, "Blocks")->required();
  cmd_bo->add_option("--n", bone.n, "Bits per block")->required();
  cmd_bo->add_option("--eta", bone.eta, "Rate parameter, must exceed 2 ln 2")->required();
  cmd_bo->add_option("--ell", bone.ell, "Recovered indices")->required();
  cmd_bo->add_option("--c-eta", bone.c_eta, "Constant factor");
  cmd_bo->add_option("--overhead", bone.overhead, "Extra transmitted bits");
  add_common(cmd_bo, bone.common);

  try {
    app.parse(argc, argv);

    if (cmd_tp->parsed()) return run_verify_two_point(two_point);
    if (cmd_hy->parsed()) return run_verify_hyper(hyper);
    if (cmd_qrac->parsed()) {
      if (cmd_qb->parsed()) return run_qrac_bias(qbias);
      if (cmd_qm->parsed()) return run_qrac_mass(qmass);
      if (cmd_qr->parsed()) return run_qrac_reduce(qreduce);
      if (cmd_qs->parsed()) return run_qrac_search(qsearch);
      if (cmd_qd->parsed()) return run_qrac_bound(qbound);
    }
    if (cmd_ldc->parsed()) {
      if (cmd_ls->parsed()) return run_ldc_smooth(lsmooth);
      if (cmd_lm->parsed()) return run_ldc_match(lmatch);
      if (cmd_lp->parsed()) return run_ldc_parity(lparity);
      if (cmd_lc->parsed()) return run_ldc_certify(lcert);
    }
    if (cmd_bounds->parsed()) {
      if (cmd_bd->parsed()) return run_block_disjoint(bdis);
      if (cmd_br->parsed()) return run_rac_success(brac);
      if (cmd_be->parsed()) return run_eps_convert(beps);
      if (cmd_bo->parsed()) return run_oneway(bone);
    }
    std::cerr << "error: no subcommand selected\n";
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const matcube::guard_error& e) {
    std::cerr << "error: guard: " << e.what() << "\n";
    return 3;
  } catch (const matcube::precondition_error& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return kExitViolation;
  } catch (const matcube::io_error& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}

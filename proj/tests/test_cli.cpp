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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "matcube/io.hpp"

using matcube::ordered_json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch_root() {
  static const std::filesystem::path root = [] {
    auto p = std::filesystem::temp_directory_path() /
             ("matcube_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
  }();
  return root;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return {};
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

CliResult run_cli(const std::string& args) {
  static int seq = 0;
  const std::string out = (scratch_root() / ("out" + std::to_string(seq))).string();
  const std::string err = (scratch_root() / ("err" + std::to_string(seq))).string();
  ++seq;
  const std::string cmd = std::string("'") + MATCUBE_CLI_PATH + "' " + args +
                          " > '" + out + "' 2> '" + err + "'";
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(MATCUBE_FIXTURE_DIR) + "/" + name;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  REQUIRE(run_cli("frobnicate").code == 2);
  REQUIRE(run_cli("verify-two-point --bogus-flag").code == 2);
  REQUIRE(run_cli("verify-two-point --p-grid 1:0:2 --trials 1").code == 2);
  REQUIRE(run_cli("verify-two-point --p-grid nonsense --trials 1").code == 2);
  REQUIRE(run_cli("qrac search --n 2 --k 1").code == 2);
  REQUIRE(run_cli("ldc parity --code '" + fixture("hadamard_n4.code") +
                  "' --index 0 --tuple 0,1 --epsilon 0.25")
              .code == 2);
}

TEST_CASE("search guard exits 3") {
  const CliResult r = run_cli("qrac search --n 5 --k 1 --m 1");
  REQUIRE(r.code == 3);
  REQUIRE(r.err.find("guard") != std::string::npos);
}

TEST_CASE("constant-table parity precondition exits 4") {
  const CliResult r =
      run_cli("ldc parity --code '" + fixture("hadamard_n4.code") +
              "' --index 0 --tuple 1,2 --values 1,1,1,1 --epsilon 0.1");
  REQUIRE(r.code == 4);
  REQUIRE(r.err.find("precondition") != std::string::npos);
}

TEST_CASE("missing input file exits 5") {
  const CliResult r = run_cli("qrac bias --qrac /nonexistent/q.json");
  REQUIRE(r.code == 5);
  REQUIRE(r.err.find("io") != std::string::npos);
}

TEST_CASE("two-point sweep emits a clean deterministic table") {
  const std::string args =
      "verify-two-point --trials 3 --dims 2,3 --p-grid 1,1.5,2 --seed 7";
  const CliResult a = run_cli(args);
  REQUIRE(a.code == 0);
  const auto lines = lines_of(a.out);
  REQUIRE(lines.size() == 2 + 3 * 2 * 3 + 1);
  REQUIRE(lines.front() == "# matcube verify-two-point seed=7");
  REQUIRE(lines[1] == "trial,d,p,lhs,rhs,margin");
  REQUIRE(lines.back() == "# violations=0");
  const CliResult b = run_cli(args);
  REQUIRE(b.code == 0);
  REQUIRE(b.out == a.out);
}

TEST_CASE("hypercontractive sweep holds across ensembles") {
  for (const std::string ens : {"ginibre", "density", "rank1"}) {
    const CliResult r = run_cli(
        "verify-hyper --trials 4 --n 3 --d 2 --ensemble " + ens +
        " --p-grid 1:0.5:2 --seed 3");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2 + 4 * 3 + 1);
    REQUIRE(lines.back() == "# violations=0");
  }
  const CliResult scalar = run_cli(
      "verify-hyper --trials 6 --n 4 --d 1 --ensemble pm1-scalar --seed 5");
  REQUIRE(scalar.code == 0);
  REQUIRE(lines_of(scalar.out).back() == "# violations=0");
}

TEST_CASE("bias of the majority strategy with measurement cross-check") {
  const CliResult r = run_cli("qrac bias --qrac '" +
                              fixture("qrac_n3_majority.json") +
                              "' --check-helstrom");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("n") == 3);
  REQUIRE(j.at("k") == 1);
  REQUIRE(j.at("m") == 1);
  REQUIRE(j.at("bias").get<double>() == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(j.at("per_subset").size() == 3);
  for (const std::string key : {"1", "2", "4"}) {
    const auto& entry = j.at("per_subset").at(key);
    REQUIRE(entry.at("trace_norm").get<double>() ==
            Catch::Approx(0.5).margin(1e-12));
  }
  REQUIRE(j.at("max_helstrom_gap").get<double>() <= 1e-9);
}

TEST_CASE("coefficient mass of the majority strategy") {
  const CliResult r = run_cli("qrac mass --qrac '" +
                              fixture("qrac_n3_majority.json") +
                              "' --delta 0");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("lhs").get<double>() == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(j.at("rhs").get<double>() == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(run_cli("qrac mass --qrac '" + fixture("qrac_n3_majority.json") +
                  "' --delta 1.5")
              .code == 2);
}

TEST_CASE("reduction of the majority strategy closes the identity") {
  const CliResult r =
      run_cli("qrac reduce --qrac '" + fixture("qrac_n3_majority.json") + "'");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("lhs_identity").get<double>() ==
          Catch::Approx(0.75).margin(1e-12));
  REQUIRE(j.at("rhs_identity").get<double>() ==
          Catch::Approx(0.75).margin(1e-12));
  REQUIRE(j.at("identity_residual").get<double>() <= 1e-12);
  REQUIRE(j.at("max_domination_gap").get<double>() <= 1e-9);
}

TEST_CASE("classical search over two bits") {
  const CliResult r = run_cli("qrac search --n 2 --k 2 --m 1");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("p_star").get<double>() == 0.5);
  REQUIRE(j.at("wins") == 2);
  REQUIRE(j.at("trials") == 4);
  REQUIRE(j.at("encoding").size() == 4);
}

TEST_CASE("closed-form bound values") {
  const CliResult one = run_cli("qrac bound --k 1 --n 8 --m 1");
  REQUIRE(one.code == 0);
  const ordered_json j1 = ordered_json::parse(one.out);
  REQUIRE(j1.at("xor_bias_bound").get<double>() ==
          Catch::Approx(0.686325248217585266).margin(1e-13));
  REQUIRE(j1.at("xor_bias_bound_vacuous") == false);

  const CliResult two = run_cli("qrac bound --k 5 --n 16 --m 2 --eta 2 --c-eta 0.9");
  REQUIRE(two.code == 0);
  const ordered_json j2 = ordered_json::parse(two.out);
  REQUIRE(j2.at("qrac_success_bound").get<double>() ==
          Catch::Approx(0.21357421875).margin(1e-13));
  REQUIRE(j2.at("qrac_success_bound_vacuous") == false);

  REQUIRE(run_cli("qrac bound --k 1 --n 8 --m 1 --eta 1.3").code == 2);
}

TEST_CASE("smoothing the standard decoder changes nothing") {
  const CliResult r = run_cli(
      "ldc smooth --code '" + fixture("hadamard_n4.code") + "' --decoder '" +
      fixture("hadamard_n4.decoder.json") + "' --delta 0.25 --epsilon 0.25");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("c").get<double>() == 2.0);
  const auto& rep = j.at("report");
  REQUIRE(rep.at("heavy_ok") == true);
  REQUIRE(rep.at("marginals_ok") == true);
  REQUIRE(rep.at("success_ok") == true);
  REQUIRE(rep.at("min_success_before").get<double>() == 1.0);
  REQUIRE(rep.at("min_success_after").get<double>() == 1.0);
  for (const auto& heavy : rep.at("heavy")) REQUIRE(heavy.empty());
}

TEST_CASE("matching extraction on one index") {
  const CliResult r = run_cli(
      "ldc match --code '" + fixture("hadamard_n4.code") + "' --decoder '" +
      fixture("hadamard_n4.decoder.json") + "' --index 0 --epsilon 0.25");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("per_index").size() == 1);
  const auto& ji = j.at("per_index")[0];
  REQUIRE(ji.at("index") == 0);
  REQUIRE(ji.at("matching").size() == 8);
  REQUIRE(ji.at("c_effective").get<double>() == 2.0);
  REQUIRE(ji.at("size_ok") == true);
  REQUIRE(ji.at("decodable") == true);
  REQUIRE(ji.at("min_success").get<double>() == 1.0);
}

TEST_CASE("parity extraction from a product table") {
  const CliResult r =
      run_cli("ldc parity --code '" + fixture("hadamard_n4.code") +
              "' --index 0 --tuple 2,3 --table 0110 --epsilon 0.25");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("base_correlation").get<double>() ==
          Catch::Approx(1.0).margin(1e-12));
  REQUIRE(j.at("subset_mask") == 3);
  REQUIRE(j.at("subset") == ordered_json::array({2, 3}));
  REQUIRE(j.at("sign") == 1);
  REQUIRE(j.at("correlation").get<double>() == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(j.at("expansion_residual").get<double>() <= 1e-12);
  REQUIRE(j.at("correlation").get<double>() >=
          j.at("guarantee").get<double>() - 1e-12);
}

TEST_CASE("certificate pipeline reproduces the frozen report") {
  const std::string args =
      "ldc certify --code '" + fixture("hadamard_n4.code") + "' --decoder '" +
      fixture("hadamard_n4.decoder.json") + "' --delta 0.25 --epsilon 0.25";
  const CliResult a = run_cli(args);
  REQUIRE(a.code == 0);
  const std::string golden =
      slurp(std::string(MATCUBE_GOLDEN_DIR) + "/hadamard_n4_certificate.json");
  REQUIRE(!golden.empty());
  REQUIRE(a.out == golden);

  const std::string out_matching = (scratch_root() / "matching.json").string();
  const CliResult b = run_cli(args + " --out-matching '" + out_matching + "'");
  REQUIRE(b.code == 0);
  REQUIRE(b.out == golden);
  const matcube::MatchingFamily fam = matcube::read_matching(out_matching);
  REQUIRE(fam.codeword_length == 16);
  REQUIRE(fam.per_index.size() == 4);

  const CliResult c = run_cli(
      "ldc certify --code '" + fixture("hadamard_n4.code") + "' --matching '" +
      out_matching + "' --delta 0.25 --epsilon 0.25");
  REQUIRE(c.code == 0);
  const ordered_json jc = ordered_json::parse(c.out);
  REQUIRE(jc.at("certificate").at("chain_ok") == true);
  REQUIRE(jc.at("certificate").at("chain_middle_ok") == true);
  const ordered_json ja = ordered_json::parse(a.out);
  REQUIRE(jc.at("certificate") == ja.at("certificate"));
}

TEST_CASE("block-disjoint grid table") {
  const CliResult r = run_cli("bounds block-disjoint --k 3 --n 2 --grid");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  REQUIRE(lines[0] == "k,n,ell,exact,lower_bound");
  std::istringstream row(lines[3]);
  std::string tok;
  std::vector<std::string> cells;
  while (std::getline(row, tok, ',')) cells.push_back(tok);
  REQUIRE(cells.size() == 5);
  REQUIRE(cells[2] == "2");
  REQUIRE(std::stod(cells[3]) == Catch::Approx(0.8).margin(1e-15));
  REQUIRE(std::stod(cells[4]) == Catch::Approx(1.0 / 9.0).margin(1e-15));

  const CliResult single = run_cli("bounds block-disjoint --k 3 --n 2 --ell 2");
  REQUIRE(single.code == 0);
  const ordered_json j = ordered_json::parse(single.out);
  REQUIRE(j.at("exact").get<double>() == Catch::Approx(0.8).margin(1e-15));
}

TEST_CASE("scalar bound subcommands") {
  const CliResult rac = run_cli("bounds rac-success --sigma 1 --k 4 --ell 2");
  REQUIRE(rac.code == 0);
  REQUIRE(ordered_json::parse(rac.out).at("value").get<double>() ==
          Catch::Approx(0.25).margin(1e-15));

  const CliResult eps = run_cli("bounds eps-convert --gamma 0.8 --eps 0.1");
  REQUIRE(eps.code == 0);
  REQUIRE(ordered_json::parse(eps.out).at("value").get<double>() ==
          Catch::Approx(0.331004406410718779).margin(1e-15));

  const CliResult one = run_cli(
      "bounds oneway --c 0 --k 10 --n 4 --eta 2 --ell 5");
  REQUIRE(one.code == 0);
  const ordered_json j = ordered_json::parse(one.out);
  REQUIRE(j.at("value").get<double>() == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(j.at("vacuous") == true);
}

TEST_CASE("show-config reports inputs without running") {
  const CliResult r = run_cli("verify-two-point --show-config --seed 9 --trials 50000");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.at("command") == "verify-two-point");
  REQUIRE(j.at("inputs").at("seed") == 9);
  REQUIRE(j.at("inputs").at("trials") == 50000);
  REQUIRE(!j.contains("per_subset"));
}

TEST_CASE("out flag writes the same bytes as stdout") {
  const std::string out_file = (scratch_root() / "search.json").string();
  const CliResult direct = run_cli("qrac search --n 2 --k 1 --m 1");
  REQUIRE(direct.code == 0);
  const CliResult filed =
      run_cli("qrac search --n 2 --k 1 --m 1 --out '" + out_file + "'");
  REQUIRE(filed.code == 0);
  REQUIRE(filed.out.empty());
  REQUIRE(slurp(out_file) == direct.out);
}

TEST_CASE("reruns are byte identical") {
  const std::vector<std::string> invocations = {
      "verify-hyper --trials 2 --n 3 --d 2 --seed 11",
      "qrac search --n 3 --k 1 --m 1",
      "qrac bias --qrac '" + fixture("qrac_n3_majority.json") + "'",
      "bounds block-disjoint --k 4 --n 3 --grid",
      "ldc match --code '" + fixture("hadamard_n4.code") + "' --decoder '" +
          fixture("hadamard_n4.decoder.json") + "' --epsilon 0.25",
  };
  for (const std::string& args : invocations) {
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    REQUIRE(a.out == b.out);
  }
}

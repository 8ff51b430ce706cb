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

// Regenerates the checked-in test fixtures. Run from the repo root:
//   build/make_fixtures [output-dir]
// The golden certificate is produced separately by the command-line tool
// and frozen; this program only materializes the inputs.

#include <iostream>
#include <string>

#include "matcube/io.hpp"
#include "matcube/ldc.hpp"
#include "matcube/qrac.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "tests/fixtures";

  const matcube::CodeSpec code = matcube::CodeSpec::hadamard(4);
  const matcube::DecoderSpec decoder = matcube::DecoderSpec::hadamard(4);
  matcube::write_code(code, dir + "/hadamard_n4.code");
  matcube::write_decoder(decoder, dir + "/hadamard_n4.decoder.json");

  // Classical majority strategy for n=3, k=1, m=1, embedded as a diagonal
  // quantum code; its exact success probability is 3/4.
  const matcube::ClassicalSearchResult best = matcube::best_classical_qrac(3, 1, 1);
  const matcube::Qrac majority =
      matcube::qrac_from_classical(3, 1, 1, best.encoding, best.decoding);
  matcube::write_qrac(majority, dir + "/qrac_n3_majority.json");

  std::cout << "wrote fixtures to " << dir << "\n";
  return 0;
}

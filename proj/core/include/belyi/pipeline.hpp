#pragma once

#include <iosfwd>

#include "belyi/formats.hpp"
#include "belyi/monodromy.hpp"

namespace belyi {

// One CLI invocation, fully specified. Defaults match `--help`.
struct PipelineConfig {
  std::string subcommand;  // analyze|ansatz|solve|recognize|verify|monodromy|roundtrip
  std::string input_path;  // triple file, or certified map file (verify/monodromy)
  std::string cycles;      // analyze/ansatz without a file: "1^12 2^132 / 3^92 / 1^3 7^39"
  std::string guess_path;  // solution file: initial guess (solve) / input (recognize)
  std::string out_path;    // artifact destination; roundtrip treats it as a prefix
  long prec_bits = 256;
  unsigned long seed = 1;
  long starts = 200;
  mpq_class lll_delta = mpq_class(99, 100);
  int threads = 1;
  int max_monodromy_degree = 64;
};

// Runs one subcommand, writes artifacts and a summary to `out`, errors to
// `err`. Exit codes: 0 success, 2 input error, 3 solve failure,
// 4 recognition failure, 5 verification failure, 6 round-trip mismatch.
int run_pipeline(const PipelineConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace belyi

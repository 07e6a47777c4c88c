#include <iostream>

#include <CLI11.hpp>

#include "belyi/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Genus-zero Belyi maps of modular subgroups: combinatorial analysis, "
               "high-precision solving, algebraic recognition, exact certification, "
               "and monodromy round-trips."};
  app.require_subcommand(1);

  belyi::PipelineConfig cfg;
  std::string delta_str = "99/100";

  auto add_common = [&](CLI::App* sub, bool takes_input) {
    if (takes_input)
      sub->add_option("input", cfg.input_path, "input file (triple or certified map)");
    sub->add_option("--prec-bits", cfg.prec_bits, "working precision in bits")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "deterministic multistart seed")
        ->capture_default_str();
    sub->add_option("--starts", cfg.starts, "multistart budget")->capture_default_str();
    sub->add_option("--delta", delta_str, "LLL reduction parameter (rational in (1/4,1])")
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads for multistart")
        ->capture_default_str();
    sub->add_option("--out", cfg.out_path,
                    "artifact path (roundtrip: prefix for .solution/.map/.triple)");
    sub->add_option("--guess", cfg.guess_path, "solution file used as the initial guess");
    sub->add_option("--max-monodromy-degree", cfg.max_monodromy_degree,
                    "degree guard for monodromy tracking")
        ->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "subgroup profile report from a triple");
  analyze->add_option("--cycles", cfg.cycles,
                      "three '/'-separated cycle types instead of a triple file");
  add_common(analyze, true);
  auto* ansatz = app.add_subcommand("ansatz", "factor structure and normalization dump");
  ansatz->add_option("--cycles", cfg.cycles, "cycle types instead of a triple file");
  add_common(ansatz, true);
  add_common(app.add_subcommand("solve", "numeric solve; writes a solution file"), true);
  add_common(app.add_subcommand("recognize", "certify a solution over a number field"), true);
  add_common(app.add_subcommand("verify", "re-check a certified map file"), true);
  add_common(app.add_subcommand("monodromy", "recover the triple from a certified map"),
             true);
  add_common(app.add_subcommand("roundtrip",
                                "analyze, solve, recognize, verify, monodromy, and "
                                "compare against the input triple"),
             true);

  CLI11_PARSE(app, argc, argv);

  cfg.subcommand = app.get_subcommands().front()->get_name();
  mpq_class delta;
  if (mpq_set_str(delta.get_mpq_t(), delta_str.c_str(), 10) != 0) {
    std::cerr << "input error: --delta wants a rational like 99/100\n";
    return 2;
  }
  delta.canonicalize();
  cfg.lll_delta = delta;

  return belyi::run_pipeline(cfg, std::cout, std::cerr);
}

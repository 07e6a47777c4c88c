#include "belyi/pipeline.hpp"

#include <ostream>
#include <sstream>

#include "belyi/congruence.hpp"
#include "belyi/errors.hpp"

namespace belyi {

namespace {

struct Inputs {
  std::string raw;              // input bytes (file or cycles string), digested
  SubgroupProfile prof;
  BelyiAnsatz ansatz;
  std::optional<PermutationTriple> triple;  // absent in --cycles mode
};

Inputs load_profile(const PipelineConfig& cfg) {
  Inputs in;
  if (!cfg.cycles.empty()) {
    if (!cfg.input_path.empty())
      throw InputError("give either an input file or --cycles, not both");
    in.raw = cfg.cycles;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : cfg.cycles) {
      if (c == '/') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
      throw InputError("--cycles wants three '/'-separated cycle types, e.g. "
                       "\"1^12 2^132 / 3^92 / 1^3 7^39\"");
    in.prof = profile_from_cycle_types(parse_cycle_type(parts[0]), parse_cycle_type(parts[1]),
                                       parse_cycle_type(parts[2]));
  } else {
    if (cfg.input_path.empty()) throw InputError("missing input triple file (or --cycles)");
    in.raw = read_file(cfg.input_path);
    PermutationTriple t = parse_triple_text(in.raw);
    in.prof = profile(t);
    in.prof.congruence = hsu_congruence_test(t);
    in.triple = std::move(t);
  }
  in.ansatz = build_ansatz(in.prof);
  return in;
}

ReproHeader header_for(const PipelineConfig& cfg, const std::string& raw_input) {
  ReproHeader h;
  h.seed = cfg.seed;
  h.precision_bits = cfg.prec_bits;
  h.input_digest = fnv1a_digest(raw_input);
  return h;
}

void emit(const PipelineConfig& cfg, std::ostream& out, const std::string& artifact,
          const std::string& path_override = "") {
  const std::string& path = path_override.empty() ? cfg.out_path : path_override;
  if (path.empty()) {
    out << artifact;
  } else {
    write_file(path, artifact);
    out << "wrote " << path << "\n";
  }
}

SolveOptions solve_options(const PipelineConfig& cfg) {
  SolveOptions so;
  so.start_bits = std::min<mpfr_prec_t>(128, cfg.prec_bits);
  so.target_bits = cfg.prec_bits;
  so.budget = cfg.starts;
  so.seed = cfg.seed;
  so.threads = cfg.threads;
  return so;
}

std::string ansatz_dump(const BelyiAnsatz& a) {
  std::ostringstream os;
  for (const auto& f : a.factors)
    os << to_string(f.role) << " " << f.degree << " " << f.multiplicity << " " << f.symbol
       << "\n";
  os << "unknowns " << a.unknowns << "\n";
  os << "equations " << a.equations() << "\n";
  os << "normalization " << normalization_string(a) << "\n";
  return os.str();
}

std::vector<NumericSolution> obtain_solutions(const PipelineConfig& cfg, const Inputs& in) {
  if (!cfg.guess_path.empty()) {
    NumericSolution guess =
        parse_solution_text(read_file(cfg.guess_path), in.ansatz);
    SolveOptions so = solve_options(cfg);
    so.start_bits = std::min<mpfr_prec_t>(guess.precision_bits, cfg.prec_bits);
    return {newton_refine(in.ansatz, guess.coeffs, so)};
  }
  auto sols = multistart_search(in.ansatz, solve_options(cfg));
  if (sols.empty())
    throw SolveError("multistart found no solution (budget " + std::to_string(cfg.starts) +
                     ", seed " + std::to_string(cfg.seed) + ")");
  return sols;
}

int cmd_analyze(const PipelineConfig& cfg, std::ostream& out) {
  Inputs in = load_profile(cfg);
  ReproHeader h = header_for(cfg, in.raw);
  emit(cfg, out, render_header(h) + analyze_report(in.prof, in.ansatz));
  return 0;
}

int cmd_ansatz(const PipelineConfig& cfg, std::ostream& out) {
  Inputs in = load_profile(cfg);
  ReproHeader h = header_for(cfg, in.raw);
  emit(cfg, out, render_header(h) + ansatz_dump(in.ansatz));
  return 0;
}

int cmd_solve(const PipelineConfig& cfg, std::ostream& out) {
  Inputs in = load_profile(cfg);
  auto sols = obtain_solutions(cfg, in);
  ReproHeader h = header_for(cfg, in.raw);
  out << "solution classes: " << sols.size() << "\n";
  emit(cfg, out, serialize_solution(in.ansatz, sols.front(), &h));
  return 0;
}

int cmd_recognize(const PipelineConfig& cfg, std::ostream& out) {
  Inputs in = load_profile(cfg);
  auto sols = obtain_solutions(cfg, in);
  CertifyOptions co;
  co.lll_delta = cfg.lll_delta;
  RecognitionError last("no solution class");
  for (const auto& sol : sols) {
    try {
      CertifiedBelyiMap m = certify_map(in.ansatz, sol, co);
      ReproHeader h = header_for(cfg, in.raw);
      emit(cfg, out, serialize_certified_map(m, &h));
      return 0;
    } catch (const RecognitionError& e) {
      last = e;
    }
  }
  throw last;
}

int cmd_verify(const PipelineConfig& cfg, std::ostream& out) {
  if (cfg.input_path.empty()) throw InputError("verify wants a certified map file");
  std::string raw = read_file(cfg.input_path);
  CertifiedBelyiMap m = parse_certified_map_text(raw);
  auto cert = verify_map(m);
  std::ostringstream os;
  os << render_header(header_for(cfg, raw));
  for (const auto& [k, v] : cert) os << k << ": " << v << "\n";
  emit(cfg, out, os.str());
  return 0;
}

int cmd_monodromy(const PipelineConfig& cfg, std::ostream& out) {
  if (cfg.input_path.empty()) throw InputError("monodromy wants a certified map file");
  std::string raw = read_file(cfg.input_path);
  CertifiedBelyiMap m = parse_certified_map_text(raw);
  MonodromyOptions mo;
  mo.prec = cfg.prec_bits;
  mo.max_degree = cfg.max_monodromy_degree;
  PermutationTriple t = monodromy_triple(numeric_map(m, cfg.prec_bits), mo);
  ReproHeader h = header_for(cfg, raw);
  emit(cfg, out, serialize_triple(t, &h));
  return 0;
}

int cmd_roundtrip(const PipelineConfig& cfg, std::ostream& out) {
  if (cfg.input_path.empty()) throw InputError("roundtrip wants an input triple file");
  Inputs in = load_profile(cfg);
  if (!in.triple) throw InputError("roundtrip wants a triple file, not --cycles");
  auto sols = obtain_solutions(cfg, in);

  CertifyOptions co;
  co.lll_delta = cfg.lll_delta;
  MonodromyOptions mo;
  mo.prec = cfg.prec_bits;
  mo.max_degree = cfg.max_monodromy_degree;
  ReproHeader h = header_for(cfg, in.raw);

  std::vector<Permutation> want{in.triple->s0, in.triple->s1, in.triple->sinf};
  std::string why;
  bool certified_any = false;
  for (size_t i = 0; i < sols.size(); ++i) {
    CertifiedBelyiMap m;
    try {
      m = certify_map(in.ansatz, sols[i], co);
    } catch (const Error& e) {
      why += "class " + std::to_string(i) + ": " + e.what() + "\n";
      continue;
    }
    certified_any = true;
    verify_map(m);
    PermutationTriple rec;
    try {
      rec = monodromy_triple(numeric_map(m, cfg.prec_bits), mo);
    } catch (const Error& e) {
      why += "class " + std::to_string(i) + ": " + e.what() + "\n";
      continue;
    }
    std::vector<Permutation> got{rec.s0, rec.s1, rec.sinf};
    if (simultaneously_conjugate(want, got)) {
      out << "roundtrip ok: class " << i << " of " << sols.size() << "\n";
      if (cfg.out_path.empty()) {
        out << serialize_certified_map(m, &h);
        out << serialize_triple(rec, &h);
      } else {
        write_file(cfg.out_path + ".solution", serialize_solution(in.ansatz, sols[i], &h));
        write_file(cfg.out_path + ".map", serialize_certified_map(m, &h));
        write_file(cfg.out_path + ".triple", serialize_triple(rec, &h));
        out << "wrote " << cfg.out_path << ".solution/.map/.triple\n";
      }
      return 0;
    }
    why += "class " + std::to_string(i) + ": monodromy triple not conjugate to input\n";
  }
  if (!certified_any)
    throw RecognitionError("no solution class certified:\n" + why);
  throw MismatchError("no certified class reproduces the input triple:\n" + why);
}

}  // namespace

int run_pipeline(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "analyze") return cmd_analyze(cfg, out);
    if (cfg.subcommand == "ansatz") return cmd_ansatz(cfg, out);
    if (cfg.subcommand == "solve") return cmd_solve(cfg, out);
    if (cfg.subcommand == "recognize") return cmd_recognize(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    if (cfg.subcommand == "monodromy") return cmd_monodromy(cfg, out);
    if (cfg.subcommand == "roundtrip") return cmd_roundtrip(cfg, out);
    throw InputError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SolveError& e) {
    err << "solve error: " << e.what() << "\n";
    return 3;
  } catch (const RecognitionError& e) {
    err << "recognition error: " << e.what() << "\n";
    return 4;
  } catch (const VerificationError& e) {
    err << "verification error: " << e.what() << "\n";
    return 5;
  } catch (const MismatchError& e) {
    err << "round-trip mismatch: " << e.what() << "\n";
    return 6;
  } catch (const TimeoutError& e) {
    err << "timeout: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace belyi

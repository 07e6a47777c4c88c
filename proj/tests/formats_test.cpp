#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <belyi/ansatz.hpp>
#include <belyi/certify.hpp>
#include <belyi/errors.hpp>
#include <belyi/formats.hpp>
#include <belyi/solve.hpp>
#include <belyi/triple.hpp>

using namespace belyi;

namespace {

CertifiedBelyiMap level2_certified(mpfr_prec_t prec) {
  BelyiAnsatz a = build_ansatz(profile(gamma0_triple(2)));
  NumericSolution sol;
  for (long v : {232L, 40L, -536L, -24L})
    sol.coeffs.emplace_back(Real(v, prec), Real(0L, prec));
  sol.precision_bits = prec;
  sol.residual_norm = relative_residual(a, sol.coeffs, prec);
  sol.jacobian_rank = jacobian_rank_estimate(a, sol.coeffs, prec);
  return certify_map(a, sol);
}

}  // namespace

TEST_CASE("fnv1a digest is stable and collision-visible") {
  CHECK(fnv1a_digest("") == "fnv1a:cbf29ce484222325");
  CHECK(fnv1a_digest("a") == "fnv1a:af63dc4c8601ec8c");
  CHECK(fnv1a_digest("belyi") != fnv1a_digest("belyj"));
  // stability across calls
  CHECK(fnv1a_digest("n 3\ns0 1 3 2\n") == fnv1a_digest("n 3\ns0 1 3 2\n"));
}

TEST_CASE("reproducibility header round trip") {
  ReproHeader h;
  h.seed = 42;
  h.precision_bits = 320;
  h.input_digest = fnv1a_digest("payload");
  std::string text = render_header(h) + "n 1\ns0 1\ns1 1\n";
  auto back = parse_header(text);
  REQUIRE(back.has_value());
  CHECK(back->version == h.version);
  CHECK(back->seed == 42);
  CHECK(back->precision_bits == 320);
  CHECK(back->input_digest == h.input_digest);
  CHECK_FALSE(parse_header("n 1\n").has_value());
}

TEST_CASE("triple file round trip") {
  PermutationTriple t = gamma0_triple(7);
  std::string text = serialize_triple(t);
  PermutationTriple back = parse_triple_text(text);
  CHECK(back.s0 == t.s0);
  CHECK(back.s1 == t.s1);
  CHECK(back.sinf == t.sinf);
  // byte-identical re-serialization
  CHECK(serialize_triple(back) == text);

  // sinf line is optional
  PermutationTriple implied = parse_triple_text("n 3\ns0 1 3 2\ns1 3 1 2\n");
  CHECK(implied.sinf == inverse(compose(implied.s0, implied.s1)));
}

TEST_CASE("triple file rejects malformed input with line numbers") {
  CHECK_THROWS_AS(parse_triple_text("s0 1 2\ns1 1 2\n"), InputError);
  CHECK_THROWS_AS(parse_triple_text("n 3\ns0 1 3 2\n"), InputError);
  CHECK_THROWS_AS(parse_triple_text("n 3\ns0 1 3 5\ns1 1 2 3\n"), InputError);
  CHECK_THROWS_AS(parse_triple_text("n 2\ns0 1 2\ns1 1 2\n"), InputError);  // not transitive

  // a wrong sinf is caught, and the message carries the offending line
  try {
    parse_triple_text("n 3\ns0 2 1 3\ns1 2 3 1\nsinf 1 2 3\n");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("sinf") != std::string::npos);
  }

  try {
    parse_triple_text("n 3\ns0 1 3 2\ns1 bogus 1 2\n");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("solution file round trip") {
  mpfr_prec_t prec = 192;
  BelyiAnsatz a = build_ansatz(profile(gamma0_triple(2)));
  NumericSolution s;
  s.precision_bits = prec;
  s.residual_norm = Real(0L, prec);
  s.jacobian_rank = 4;
  // non-integer values so digit rendering is actually exercised
  s.coeffs.emplace_back(Real(mpq_class(232, 7), prec), Real(mpq_class(1, 3), prec));
  s.coeffs.emplace_back(Real(mpq_class(40, 9), prec), Real(0L, prec));
  s.coeffs.emplace_back(Real(mpq_class(-536, 11), prec), Real(mpq_class(-2, 7), prec));
  s.coeffs.emplace_back(Real(mpq_class(-24, 13), prec), Real(0L, prec));

  std::string text = serialize_solution(a, s);
  NumericSolution back = parse_solution_text(text, a);
  CHECK(back.precision_bits == prec);
  REQUIRE(back.coeffs.size() == 4);
  for (size_t i = 0; i < 4; ++i)
    CHECK(abs(back.coeffs[i] - s.coeffs[i]) < pow2(-170, prec));
  // serialized form is a fixed point of parse + serialize
  CHECK(serialize_solution(a, back) == text);

  NumericSolution wrong = s;
  wrong.coeffs.pop_back();
  CHECK_THROWS_AS(serialize_solution(a, wrong), InputError);
  CHECK_THROWS_AS(parse_solution_text("precision_bits 64\nunknowns 4\n", a), InputError);
  CHECK_THROWS_AS(parse_solution_text(text + "z9 1 0\n", a), InputError);
}

TEST_CASE("certified map file round trip") {
  CertifiedBelyiMap m = level2_certified(320);
  ReproHeader h;
  h.seed = 1;
  h.precision_bits = 320;
  std::string text = serialize_certified_map(m, &h);

  CertifiedBelyiMap back = parse_certified_map_text(text);
  CHECK(back.field.degree == m.field.degree);
  CHECK(back.field.poly == m.field.poly);
  CHECK(back.twist == m.twist);
  CHECK(back.ansatz.n == m.ansatz.n);
  CHECK(back.ansatz.unknowns == m.ansatz.unknowns);
  CHECK(normalization_string(back.ansatz) == normalization_string(m.ansatz));
  REQUIRE(back.factors.size() == m.factors.size());
  for (size_t i = 0; i < m.factors.size(); ++i) {
    REQUIRE(back.factors[i].size() == m.factors[i].size());
    for (size_t k = 0; k < m.factors[i].size(); ++k)
      CHECK(fe_equal(back.factors[i][k], m.factors[i][k]));
  }
  CHECK(abs(back.embedding - m.embedding) < pow2(-250, 320));

  // the parsed map verifies exactly, and re-serialization is byte-identical
  auto cert = verify_map(back);
  bool identity_pass = false;
  for (const auto& [k, v] : cert)
    if (k == "identity_exact" && v == "pass") identity_pass = true;
  CHECK(identity_pass);
  CHECK(serialize_certified_map(back, &h) == text);

  // header survives
  auto hh = parse_header(text);
  REQUIRE(hh.has_value());
  CHECK(hh->seed == 1);
}

TEST_CASE("certified map tampering is rejected") {
  CertifiedBelyiMap m = level2_certified(256);
  std::string text = serialize_certified_map(m);

  SUBCASE("corrupted factor coefficient fails verification") {
    std::string bad = text;
    size_t pos = bad.find("232/1");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 5, "233/1");
    CertifiedBelyiMap back = parse_certified_map_text(bad);
    CHECK_THROWS_AS(verify_map(back), VerificationError);
  }
  SUBCASE("missing blocks are named") {
    CHECK_THROWS_AS(parse_certified_map_text("field deg 1\n0\n1\n"), InputError);
  }
  SUBCASE("garbage line carries its number") {
    std::string bad = "field deg 1\n0\n1\nn x\n";
    try {
      parse_certified_map_text(bad);
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }
}

TEST_CASE("analyze report is stable") {
  PermutationTriple t = gamma0_triple(5);
  SubgroupProfile p = profile(t);
  BelyiAnsatz a = build_ansatz(p);
  std::string r1 = analyze_report(p, a);
  std::string r2 = analyze_report(p, a);
  CHECK(r1 == r2);
  CHECK(r1.find("index 6") != std::string::npos);
  CHECK(r1.find("genus 0") != std::string::npos);
  CHECK(r1.find("normalization") != std::string::npos);
}

TEST_CASE("file helpers") {
  std::string path = "formats_test_scratch.txt";
  write_file(path, "alpha\nbeta\n");
  CHECK(read_file(path) == "alpha\nbeta\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely_missing_file.txt"), InputError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <belyi/ansatz.hpp>
#include <belyi/certify.hpp>
#include <belyi/errors.hpp>
#include <belyi/solve.hpp>
#include <belyi/triple.hpp>

using namespace belyi;

namespace {

// Wraps exact integer coefficients as a numeric solution at `bits`.
NumericSolution exact_solution(const BelyiAnsatz& a, const std::vector<long>& vals,
                               mpfr_prec_t bits) {
  NumericSolution s;
  s.precision_bits = bits;
  for (long v : vals) s.coeffs.emplace_back(Real(v, bits), Real(0L, bits));
  s.residual_norm = relative_residual(a, s.coeffs, bits);
  s.jacobian_rank = jacobian_rank_estimate(a, s.coeffs, bits);
  return s;
}

mpq_class coeff_q(const CertifiedBelyiMap& m, const char* symbol) {
  int idx = m.ansatz.index_of(symbol);
  for (size_t fi = 0; fi < m.factors.size(); ++fi) {
    int off = m.ansatz.offsets[fi];
    int deg = m.ansatz.factors[fi].degree;
    if (idx >= off && idx < off + deg)
      return fe_to_q(m.factors[fi][static_cast<size_t>(idx - off)]);
  }
  throw std::logic_error("symbol not inside any factor");
}

std::string cert_value(const std::vector<std::pair<std::string, std::string>>& cert,
                       const std::string& key) {
  for (const auto& [k, v] : cert)
    if (k == key) return v;
  return "<missing>";
}

}  // namespace

TEST_CASE("certification of the degree-one map") {
  PermutationTriple t = gamma0_triple(1);
  BelyiAnsatz a = build_ansatz(profile(t));
  REQUIRE(a.unknowns == 2);
  NumericSolution sol = exact_solution(a, {744, -984}, 256);
  CertifiedBelyiMap m = certify_map(a, sol);

  CHECK(m.field.degree == 1);
  CHECK(coeff_q(m, "b0") == 744);
  CHECK(coeff_q(m, "d0") == -984);
  REQUIRE(fp_degree(m.p3) == 1);
  CHECK(fe_to_q(m.p3[0]) == 744);
  REQUIRE(fp_degree(m.pc) == 0);
  CHECK(fe_to_q(m.pc[0]) == 1);
  CHECK(cert_value(m.certificate, "identity_exact") == "pass");
}

TEST_CASE("certification of the level-two map over the rationals") {
  PermutationTriple t = gamma0_triple(2);
  BelyiAnsatz a = build_ansatz(profile(t));
  NumericSolution sol = exact_solution(a, {232, 40, -536, -24}, 320);
  CertifiedBelyiMap m = certify_map(a, sol);

  CHECK(m.field.degree == 1);
  CHECK(m.twist == 0);
  CHECK(coeff_q(m, "a0") == 232);
  CHECK(coeff_q(m, "d0") == 40);
  CHECK(coeff_q(m, "e0") == -536);
  CHECK(coeff_q(m, "c0") == -24);

  // p3 = (x + 232)^3 expanded
  REQUIRE(fp_degree(m.p3) == 3);
  CHECK(fe_to_q(m.p3[0]) == 12487168);
  CHECK(fe_to_q(m.p3[1]) == 161472);
  CHECK(fe_to_q(m.p3[2]) == 696);

  for (const char* key : {"factor_shape", "products_match", "degrees_exact",
                          "identity_exact", "normalization_exact", "factors_squarefree",
                          "factors_disjoint", "gcd_p3_pc_trivial", "gcd_p2_pc_trivial",
                          "jacobian_full_rank"})
    CHECK(cert_value(m.certificate, key) == "pass");
  CHECK(cert_value(m.certificate, "field_degree") == "1");

  // verification is self-contained and repeatable
  auto cert = verify_map(m);
  CHECK(cert_value(cert, "identity_exact") == "pass");

  // tampering with one coefficient must be caught
  CertifiedBelyiMap bad = m;
  bad.p3[0] = fe_add(bad.field, bad.p3[0], fe_one(bad.field));
  CHECK_THROWS_AS(verify_map(bad), VerificationError);

  CertifiedBelyiMap bad2 = m;
  bad2.factors[0][0] = fe_add(bad2.field, bad2.factors[0][0], fe_one(bad2.field));
  CHECK_THROWS_AS(verify_map(bad2), VerificationError);
}

TEST_CASE("certification over a quadratic field from a numeric search") {
  Permutation s0 = Permutation::from_images1({1, 2, 3, 5, 4, 7, 6});
  Permutation s1 = Permutation::from_images1({2, 4, 5, 1, 6, 3, 7});
  PermutationTriple t = validate_triple(s0, s1);
  BelyiAnsatz a = build_ansatz(profile(t));
  REQUIRE(a.normalization.kind == NormalizationSpec::Kind::Affine);

  SolveOptions opt;
  opt.budget = 120;
  opt.seed = 1;
  opt.target_bits = 320;
  opt.threads = 1;
  auto classes = multistart_search(a, opt);
  REQUIRE(!classes.empty());

  CertifiedBelyiMap m = certify_map(a, classes.front());
  CHECK(m.field.degree == 2);
  CHECK(m.field.poly == ZPoly{98, 7, 1});
  CHECK(zpoly_discriminant(m.field.poly) == -343);
  CHECK(cert_value(m.certificate, "identity_exact") == "pass");
  CHECK(cert_value(m.certificate, "normalization_exact") == "pass");
  CHECK(cert_value(m.certificate, "jacobian_full_rank") == "pass");

  // embedding is an honest root of the defining polynomial
  Complex r = zpoly_eval(m.field.poly, m.embedding, 320);
  CHECK(abs(r) < pow2(-250, 320));

  auto cert = verify_map(m);
  CHECK(cert_value(cert, "field_degree") == "2");
}

TEST_CASE("moebius action on coefficients") {
  NumberField K = make_field(ZPoly{0, 1});
  Moebius w{fe_one(K), fe_one(K), fe_one(K), fe_neg(fe_one(K))};  // (x+1)/(x-1)
  FieldPoly p{fe_from_q(K, 3), fe_from_q(K, 0)};
  FieldPoly q = moebius_coeff_action(K, p, w);
  CHECK(fe_to_q(q[0]) == 2);
  CHECK(fe_to_q(q[1]) == -1);  // (0+1)/(0-1)

  FieldPoly pole{fe_one(K)};  // coefficient 1 sits on the pole of w
  CHECK_THROWS_AS(moebius_coeff_action(K, pole, w), InputError);
}

TEST_CASE("descent mechanics") {
  NumberField L = make_field(ZPoly{-2, 0, 1});
  FieldElement y = fe_from_coords(L, {0, 1});

  SUBCASE("planted rational dependency") {
    NumberField K = make_field(ZPoly{-1, 1});  // Q, generator 1
    FieldElement rho = fe_one(L);
    FieldPoly p3t = fp_from_q(L, QPoly{1, 0, 1});   // x^2 + 1
    FieldPoly p2t = fp_from_q(L, QPoly{-1, 0, 1});  // x^2 - 1
    FieldPoly pct = fp_from_q(L, QPoly{1});
    auto k = descent_check(L, p3t, p2t, pct, K, rho);
    REQUIRE(k.has_value());
    // nullspace is one-dimensional, spanned by (1, -1, -2)
    const auto& [k3, k2, kc] = *k;
    REQUIRE(!fe_is_zero(k3));
    FieldElement r2 = fe_div(K, k2, k3);
    FieldElement rc = fe_div(K, kc, k3);
    CHECK(fe_to_q(r2) == -1);
    CHECK(fe_to_q(rc) == -2);
  }

  SUBCASE("coefficients outside the subfield") {
    NumberField K = make_field(ZPoly{-1, 1});
    FieldPoly p3t{fe_neg(y), fe_one(L)};  // x - sqrt(2) leaves Q
    FieldPoly p2t = fp_from_q(L, QPoly{-1, 1});
    FieldPoly pct = fp_from_q(L, QPoly{1});
    CHECK_FALSE(descent_check(L, p3t, p2t, pct, K, fe_one(L)).has_value());
  }

  SUBCASE("trivial nullspace") {
    NumberField K = make_field(ZPoly{-1, 1});
    FieldPoly p3t = fp_from_q(L, QPoly{0, 0, 1});
    FieldPoly p2t = fp_from_q(L, QPoly{0, 1});
    FieldPoly pct = fp_from_q(L, QPoly{1});
    CHECK_FALSE(descent_check(L, p3t, p2t, pct, K, fe_one(L)).has_value());
  }

  SUBCASE("identity descent within the same field") {
    FieldPoly p3t{y, fe_one(L)};
    FieldPoly p2t{fe_neg(y), fe_one(L)};
    FieldPoly pct = fp_sub(L, p3t, p2t);  // constant 2y
    // k3 (x+y) + k2 (x-y) + kc 2y = 0 forces k2 = -k3 and kc = -k3
    auto k = descent_check(L, p3t, p2t, pct, L, y);
    REQUIRE(k.has_value());
    const auto& [k3, k2, kc] = *k;
    REQUIRE(!fe_is_zero(k3));
    CHECK(fe_equal(fe_div(L, k2, k3), fe_from_q(L, -1)));
    CHECK(fe_equal(fe_div(L, kc, k3), fe_from_q(L, -1)));
  }

  SUBCASE("rho must be a root of the subfield polynomial") {
    NumberField K = make_field(ZPoly{-3, 0, 1});
    FieldPoly one = fp_from_q(L, QPoly{1});
    CHECK_THROWS_AS(descent_check(L, one, one, one, K, y), InputError);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <belyi/errors.hpp>
#include <belyi/solve.hpp>
#include <belyi/triple.hpp>

using namespace belyi;

namespace {

Complex c_of(long v, mpfr_prec_t prec) { return Complex(Real(v, prec), Real(0, prec)); }

std::vector<Complex> gamma0_2_solution(mpfr_prec_t prec) {
  return {c_of(232, prec), c_of(40, prec), c_of(-536, prec), c_of(-24, prec)};
}

}  // namespace

TEST_CASE("linear_solve on a square system") {
  mpfr_prec_t prec = 128;
  CMatrix A(2, 2, prec);
  A.at(0, 0) = c_of(2, prec);
  A.at(0, 1) = c_of(1, prec);
  A.at(1, 0) = c_of(1, prec);
  A.at(1, 1) = c_of(3, prec);
  std::vector<Complex> b{c_of(5, prec), c_of(10, prec)};
  auto r = linear_solve(A, b, prec);
  CHECK(abs(r.x[0] - c_of(1, prec)) < pow2(-100, prec));
  CHECK(abs(r.x[1] - c_of(3, prec)) < pow2(-100, prec));
}

TEST_CASE("newton converges quadratically from a perturbed exact solution") {
  BelyiAnsatz a = build_ansatz(profile(gamma0_triple(2)));
  mpfr_prec_t prec = 256;
  std::vector<Complex> exact = gamma0_2_solution(prec);
  std::vector<Complex> x0 = exact;
  for (auto& c : x0) c = c + Complex(Real::from_double(0.125, prec), Real::from_double(-0.0625, prec));

  SolveOptions opt;
  opt.start_bits = 64;
  opt.target_bits = prec;
  NumericSolution s = newton_refine(a, x0, opt);
  CHECK(s.precision_bits == prec);
  CHECK(s.residual_norm < pow2(-230, prec));
  for (size_t i = 0; i < exact.size(); ++i) CHECK(abs(s.coeffs[i] - exact[i]) < pow2(-200, prec));
  CHECK(s.jacobian_rank == 4);
}

TEST_CASE("relative residual is zero on the exact solution") {
  BelyiAnsatz a = build_ansatz(profile(gamma0_triple(2)));
  mpfr_prec_t prec = 256;
  CHECK(relative_residual(a, gamma0_2_solution(prec), prec).is_zero());
  CHECK(jacobian_rank_estimate(a, gamma0_2_solution(prec), prec) == 4);
}

TEST_CASE("newton reports divergence from garbage") {
  BelyiAnsatz a = build_ansatz(profile(gamma0_triple(2)));
  mpfr_prec_t prec = 128;
  std::vector<Complex> x0(static_cast<size_t>(a.unknowns), c_of(1, prec));
  SolveOptions opt;
  opt.start_bits = opt.target_bits = prec;
  opt.max_iter = 8;  // too few for this start
  CHECK_THROWS_AS(newton_refine(a, x0, opt), SolveError);
}

TEST_CASE("multistart finds the level-2 map and is thread-deterministic") {
  BelyiAnsatz a = build_ansatz(profile(gamma0_triple(2)));
  SolveOptions opt;
  opt.start_bits = 128;
  opt.target_bits = 256;
  opt.budget = 40;
  opt.seed = 1;

  auto run = [&](int threads) {
    SolveOptions o = opt;
    o.threads = threads;
    return multistart_search(a, o);
  };
  std::vector<NumericSolution> s1 = run(1), s4 = run(4);
  REQUIRE(s1.size() == 1);
  REQUIRE(s4.size() == s1.size());
  mpfr_prec_t prec = 256;
  std::vector<Complex> exact = gamma0_2_solution(prec);
  for (size_t i = 0; i < exact.size(); ++i) {
    CHECK(abs(s1[0].coeffs[i] - exact[i]) < pow2(-200, prec));
    CHECK(s1[0].coeffs[i] == s4[0].coeffs[i]);  // bitwise reproducible
  }
}

TEST_CASE("gauge twists permute solutions within a class") {
  Permutation s0 = Permutation::from_images1({1, 2, 3, 5, 4, 7, 6});
  Permutation s1 = Permutation::from_images1({2, 4, 5, 1, 6, 3, 7});
  BelyiAnsatz a = build_ansatz(profile(validate_triple(s0, s1)));
  REQUIRE(a.principal_width == 7);

  mpfr_prec_t prec = 192;
  SolveOptions opt;
  opt.start_bits = 128;
  opt.target_bits = prec;
  opt.budget = 200;
  std::vector<NumericSolution> sols = multistart_search(a, opt);
  REQUIRE(sols.size() == 2);  // a complex-conjugate pair of classes

  const std::vector<Complex>& x = sols[0].coeffs;
  std::vector<Complex> tw = apply_twist(a, x, 3, prec);
  CHECK(same_solution_class(a, x, tw, 20));
  // twisting back by the complementary power restores the coefficients
  std::vector<Complex> back = apply_twist(a, tw, 4, prec);
  for (size_t i = 0; i < x.size(); ++i) CHECK(abs(back[i] - x[i]) < pow2(-150, prec));
  // twisted coefficients still solve the system
  CHECK(relative_residual(a, tw, prec) < pow2(-140, prec));
  // the two classes are genuinely distinct
  CHECK_FALSE(same_solution_class(a, sols[0].coeffs, sols[1].coeffs, 20));
}

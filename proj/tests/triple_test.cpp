#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include <belyi/congruence.hpp>
#include <belyi/errors.hpp>
#include <belyi/triple.hpp>

using namespace belyi;

namespace {

// Classical invariants of Gamma0(N), computed independently of the library.
long g0_index(int N) {
  long mu = N;
  for (int p = 2; p <= N; ++p)
    if (N % p == 0) {
      bool prime = true;
      for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (prime) mu = mu / p * (p + 1);
    }
  return mu;
}

int g0_e2(int N) {
  if (N % 4 == 0) return 0;
  int v = 1;
  for (int p = 3; p <= N; p += 2)
    if (N % p == 0) {
      bool prime = true;
      for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (!prime) continue;
      v *= (p % 4 == 1) ? 2 : 0;
    }
  return v;
}

int g0_e3(int N) {
  if (N % 9 == 0) return 0;
  int v = 1;
  for (int p = 2; p <= N; ++p)
    if (N % p == 0) {
      bool prime = true;
      for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (!prime) continue;
      if (p == 3) continue;  // (-3 | 3) = 0 contributes a factor 1
      v *= (p % 3 == 1) ? 2 : 0;
    }
  return v;
}

int g0_cusps(int N) {
  int c = 0;
  for (int d = 1; d <= N; ++d)
    if (N % d == 0) {
      int g = std::gcd(d, N / d), phi = 0;
      for (int k = 1; k <= g; ++k)
        if (std::gcd(k, g) == 1) ++phi;
      c += phi;
    }
  return c;
}

int g0_genus(int N) {
  // 12(g - 1) = mu - 3 e2 - 4 e3 - 6 cusps, rearranged without division
  long v = g0_index(N) - 3L * g0_e2(N) - 4L * g0_e3(N) - 6L * g0_cusps(N);
  return static_cast<int>(v / 12 + 1);
}

}  // namespace

TEST_CASE("validate_triple enforces orders, product and transitivity") {
  Permutation s0 = Permutation::from_images1({2, 1, 3});
  Permutation s1 = Permutation::from_images1({2, 3, 1});
  PermutationTriple t = validate_triple(s0, s1);
  CHECK(t.n == 3);
  CHECK(t.sinf == inverse(compose(s0, s1)));

  // s0 with a 3-cycle is not an involution
  CHECK_THROWS_AS(validate_triple(s1, s1), InputError);
  // wrong sinf
  CHECK_THROWS_AS(validate_triple(s0, s1, Permutation::identity(3)), InputError);
  // intransitive: everything trivial on 2 points
  CHECK_THROWS_AS(
      validate_triple(Permutation::identity(2), Permutation::identity(2)),
      InputError);
}

TEST_CASE("profile of Gamma0(N) matches the classical formulas") {
  for (int N = 2; N <= 25; ++N) {
    CAPTURE(N);
    PermutationTriple t = gamma0_triple(N);
    SubgroupProfile p = profile(t);
    CHECK(p.index == g0_index(N));
    CHECK(p.e2 == g0_e2(N));
    CHECK(p.e3 == g0_e3(N));
    CHECK(p.num_cusps == g0_cusps(N));
    CHECK(p.level == N);
    CHECK(p.genus == g0_genus(N));
    long width_sum = 0;
    for (const auto& [w, c] : p.cusp_widths) width_sum += static_cast<long>(w) * c;
    CHECK(width_sum == p.index);
  }
}

TEST_CASE("known genus values beyond zero") {
  CHECK(profile(gamma0_triple(11)).genus == 1);
  CHECK(profile(gamma0_triple(22)).genus == 2);
  CHECK(profile(gamma0_triple(23)).genus == 2);
  CHECK(profile(gamma0_triple(25)).genus == 0);
}

TEST_CASE("profile from cycle types alone") {
  SubgroupProfile p = profile_from_cycle_types(parse_cycle_type("1^12 2^132"),
                                               parse_cycle_type("3^92"),
                                               parse_cycle_type("1^3 7^39"));
  CHECK(p.index == 276);
  CHECK(p.e2 == 12);
  CHECK(p.e3 == 0);
  CHECK(p.num_cusps == 42);
  CHECK(p.level == 7);
  CHECK(p.genus == 0);
  CHECK(p.principal_width == 1);

  // degree mismatch between the three types
  CHECK_THROWS_AS(profile_from_cycle_types(parse_cycle_type("2^2"), parse_cycle_type("3^1"),
                                           parse_cycle_type("4^1")),
                  InputError);
  // parts outside {1,2} for s0
  CHECK_THROWS_AS(profile_from_cycle_types(parse_cycle_type("4^1"), parse_cycle_type("1^1 3^1"),
                                           parse_cycle_type("4^1")),
                  InputError);
}

TEST_CASE("riemann-hurwitz rejects inconsistent data") {
  // index 2 with all points elliptic of order 2 and a single width-2 cusp
  // would force negative genus
  CHECK_THROWS_AS(profile_from_cycle_types(parse_cycle_type("1^2"), parse_cycle_type("1^2"),
                                           parse_cycle_type("1^2")),
                  InputError);
}

TEST_CASE("hsu congruence verdicts for Gamma0") {
  for (int N = 2; N <= 10; ++N) {
    CAPTURE(N);
    CHECK(hsu_congruence_test(gamma0_triple(N)) == CongruenceVerdict::Congruence);
  }
}

TEST_CASE("hsu congruence flags a noncongruence subgroup") {
  Permutation s0 = Permutation::from_images1({1, 3, 2, 5, 4, 7, 6});
  Permutation s1 = Permutation::from_images1({2, 4, 3, 1, 6, 7, 5});
  PermutationTriple t = validate_triple(s0, s1);
  CHECK(hsu_congruence_test(t) == CongruenceVerdict::Noncongruence);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <belyi/errors.hpp>
#include <belyi/perm.hpp>

using namespace belyi;

namespace {

Permutation random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> img(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images0(img);
}

// Closure of <gens> by breadth-first multiplication; oracle for group_order.
std::set<Permutation> brute_force_group(const std::vector<Permutation>& gens, int n) {
  std::set<Permutation> g;
  std::vector<Permutation> frontier{Permutation::identity(n)};
  g.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier)
      for (const auto& s : gens) {
        Permutation q = compose(s, p);
        if (g.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return g;
}

}  // namespace

TEST_CASE("images round trip and validation") {
  Permutation p = Permutation::from_images1({3, 1, 2});
  CHECK(p.degree() == 3);
  CHECK(p(0) == 2);
  CHECK(p(1) == 0);
  CHECK(p.images1() == std::vector<int>{3, 1, 2});
  CHECK_THROWS_AS(Permutation::from_images1({1, 1, 3}), InputError);
  CHECK_THROWS_AS(Permutation::from_images1({0, 1, 2}), InputError);
  CHECK(Permutation::identity(4).is_identity());
}

TEST_CASE("compose applies the right factor first") {
  Permutation p = Permutation::from_images1({2, 1, 3});
  Permutation q = Permutation::from_images1({2, 3, 1});
  // compose(p, q)(x) = p(q(x)): 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2.
  CHECK(compose(p, q).images1() == std::vector<int>{1, 3, 2});
  CHECK(compose(q, p).images1() == std::vector<int>{3, 2, 1});
}

TEST_CASE("inverse, powers and order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Permutation p = random_perm(rng, 9);
    CHECK(compose(p, inverse(p)).is_identity());
    CHECK(perm_power(p, perm_order(p)).is_identity());
    CHECK(compose(perm_power(p, 3), perm_power(p, -3)).is_identity());
    CHECK(perm_power(p, -1) == inverse(p));
  }
  Permutation c = Permutation::from_images1({2, 3, 4, 5, 6, 1});
  CHECK(perm_order(c) == 6);
}

TEST_CASE("cycles are canonical") {
  Permutation p = Permutation::from_images1({2, 1, 4, 5, 3, 6});
  auto cs = cycles(p);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0] == std::vector<int>{0, 1});
  CHECK(cs[1] == std::vector<int>{2, 3, 4});
  CHECK(cs[2] == std::vector<int>{5});
}

TEST_CASE("cycle type string round trip") {
  Permutation p = Permutation::from_images1({2, 1, 4, 5, 3, 6});
  CycleType t = cycle_type(p);
  CHECK(cycle_type_string(t) == "1^1 2^1 3^1");
  CHECK(parse_cycle_type("1^1 2^1 3^1") == t);
  CHECK(parse_cycle_type("2") == CycleType{{2, 1}});
  CHECK(cycle_type_degree(parse_cycle_type("1^3 7^39")) == 276);
  CHECK(cycle_type_string(cycle_type(Permutation::identity(5))) == "1^5");
  CHECK_THROWS_AS(parse_cycle_type("0^2"), InputError);
}

TEST_CASE("transitivity") {
  Permutation c = Permutation::from_images1({2, 3, 4, 1});
  CHECK(is_transitive({c}, 4));
  Permutation t = Permutation::from_images1({2, 1, 4, 3});
  CHECK_FALSE(is_transitive({t}, 4));
  CHECK(is_transitive({t, c}, 4));
}

TEST_CASE("group order matches brute-force closure") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);  // degrees 4..7
    std::vector<Permutation> gens{random_perm(rng, n), random_perm(rng, n)};
    auto g = brute_force_group(gens, n);
    CHECK(group_order(gens) == mpz_class(static_cast<unsigned long>(g.size())));
  }
}

TEST_CASE("group order of full symmetric group") {
  Permutation c = Permutation::from_images1({2, 3, 4, 5, 6, 7, 8, 1});
  Permutation t = Permutation::from_images1({2, 1, 3, 4, 5, 6, 7, 8});
  CHECK(group_order({t, c}) == mpz_class(40320));  // 8!
}

TEST_CASE("simultaneous conjugation finds a witness") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + static_cast<int>(rng() % 3);
    Permutation g = random_perm(rng, n);
    std::vector<Permutation> a{random_perm(rng, n), random_perm(rng, n)};
    std::vector<Permutation> b;
    for (const auto& p : a) b.push_back(compose(g, compose(p, inverse(g))));
    auto w = simultaneously_conjugate(a, b);
    REQUIRE(w.has_value());
    for (size_t i = 0; i < a.size(); ++i)
      CHECK(compose(*w, compose(a[i], inverse(*w))) == b[i]);
  }
}

TEST_CASE("simultaneous conjugation rejects non-conjugate inputs") {
  // Same cycle types pairwise, but no single element aligns both pairs:
  // the centralizer of (1 2) cannot move (3 4) onto (2 3).
  Permutation a0 = Permutation::from_images1({2, 1, 3, 4});
  Permutation a1 = Permutation::from_images1({1, 2, 4, 3});
  Permutation b0 = Permutation::from_images1({2, 1, 3, 4});
  Permutation b1 = Permutation::from_images1({1, 3, 2, 4});
  auto w = simultaneously_conjugate({a0, a1}, {b0, b1});
  CHECK_FALSE(w.has_value());
  // Distinct cycle types are rejected outright.
  CHECK_FALSE(simultaneously_conjugate({a0}, {Permutation::from_images1({2, 3, 1, 4})})
                  .has_value());
}

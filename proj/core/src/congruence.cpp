#include "belyi/congruence.hpp"

#include <numeric>

#include "belyi/errors.hpp"

namespace belyi {

namespace {

long inv_mod(long a, long n) {
  if (n == 1) return 0;
  long t = 0, newt = 1, r = n, newr = ((a % n) + n) % n;
  while (newr != 0) {
    long q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw InputError("inv_mod: not invertible");
  return ((t % n) + n) % n;
}

using P = Permutation;

bool all_identity(std::initializer_list<P> words) {
  for (const auto& w : words)
    if (!w.is_identity()) return false;
  return true;
}

// Relation set for odd N: (R^2 L^{-1/2})^3 = 1, with 1/2 = inv(2, N).
bool odd_branch(const P& L, const P& R, long N) {
  P w = compose(compose(R, R), perm_power(L, -inv_mod(2, N)));
  return perm_power(w, 3).is_identity();
}

// Relation set for N = 2^k. S = L^20 R^{1/5} L^{-4} R^{-1}, 1/5 = inv(5, N).
bool two_power_branch(const P& L, const P& R, long N) {
  P S = compose(compose(perm_power(L, 20), perm_power(R, inv_mod(5, N))),
                compose(perm_power(L, -4), inverse(R)));
  P lrl = compose(L, compose(inverse(R), L));  // L R^{-1} L
  return all_identity({
      compose(compose(inverse(lrl), S), compose(lrl, S)),
      compose(compose(inverse(S), R), compose(S, perm_power(R, -25))),
      perm_power(compose(S, compose(perm_power(R, 5), lrl)), 3),
  });
}

// General N = e * m, e = 2^k >= 2, m odd > 1: odd and 2-power components
// a = L^c, b = R^c (order m) and l = L^d, r = R^d (order e) with CRT
// exponents c = 1 (mod m), 0 (mod e) and d = 0 (mod m), 1 (mod e).
bool general_branch(const P& L, const P& R, long e, long m) {
  long c = e * inv_mod(e % m, m);
  long d = m * inv_mod(m % e, e);
  P a = perm_power(L, c), b = perm_power(R, c);
  P l = perm_power(L, d), r = perm_power(R, d);
  P s = compose(compose(perm_power(l, 20), perm_power(r, inv_mod(5, e))),
                compose(perm_power(l, -4), inverse(r)));
  P aba = compose(a, compose(inverse(b), a));  // a b^{-1} a
  P lrl = compose(l, compose(inverse(r), l));  // l r^{-1} l
  P aba2 = compose(aba, aba);
  return all_identity({
      compose(compose(a, r), compose(inverse(a), inverse(r))),
      perm_power(aba, 4),
      compose(aba2, inverse(perm_power(compose(inverse(b), a), 3))),
      compose(aba2, inverse(perm_power(
                        compose(compose(b, b), perm_power(a, -inv_mod(2, m))), 3))),
      compose(compose(inverse(lrl), s), compose(lrl, s)),
      compose(compose(inverse(s), r), compose(s, perm_power(r, -25))),
      compose(compose(lrl, lrl),
              inverse(perm_power(
                  compose(s, compose(perm_power(r, 5), lrl)), 3))),
  });
}

}  // namespace

CongruenceVerdict hsu_congruence_test(const PermutationTriple& t) {
  const P& L = t.sinf;
  long N = 1;
  for (const auto& [len, cnt] : cycle_type(L)) {
    N = std::lcm(N, static_cast<long>(len));
    if (N > (1L << 40)) return CongruenceVerdict::Undecided;  // level impractical
  }
  if (N == 1) return CongruenceVerdict::Congruence;

  P R = compose(t.s0, compose(inverse(L), t.s0));

  long e = 1;
  long m = N;
  while (m % 2 == 0) {
    e *= 2;
    m /= 2;
  }

  bool ok;
  if (e == 1)
    ok = odd_branch(L, R, N);
  else if (m == 1)
    ok = two_power_branch(L, R, N);
  else
    ok = general_branch(L, R, e, m);
  return ok ? CongruenceVerdict::Congruence : CongruenceVerdict::Noncongruence;
}

}  // namespace belyi

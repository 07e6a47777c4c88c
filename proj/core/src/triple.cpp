#include "belyi/triple.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "belyi/errors.hpp"

namespace belyi {

std::string to_string(CongruenceVerdict v) {
  switch (v) {
    case CongruenceVerdict::Congruence: return "congruence";
    case CongruenceVerdict::Noncongruence: return "noncongruence";
    default: return "undecided";
  }
}

namespace {

void check_orders(const Permutation& s0, const Permutation& s1) {
  if (!compose(s0, s0).is_identity())
    throw InputError("triple: s0^2 != identity (s0 must have order dividing 2)");
  if (!compose(s1, compose(s1, s1)).is_identity())
    throw InputError("triple: s1^3 != identity (s1 must have order dividing 3)");
}

std::string orbit_partition_string(const std::vector<Permutation>& gens, int n) {
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] != -1) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        if (comp[g(x)] == -1) {
          comp[g(x)] = ncomp;
          stack.push_back(g(x));
        }
      }
    }
    ++ncomp;
  }
  std::ostringstream os;
  for (int c = 0; c < ncomp; ++c) {
    os << (c ? " | " : "") << "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) {
        os << (first ? "" : " ") << i + 1;
        first = false;
      }
    os << "}";
  }
  return os.str();
}

}  // namespace

PermutationTriple validate_triple(const Permutation& s0, const Permutation& s1) {
  if (s0.degree() != s1.degree()) throw InputError("triple: degree mismatch");
  check_orders(s0, s1);
  if (!is_transitive({s0, s1}, s0.degree()))
    throw InputError("triple: <s0,s1> not transitive; orbits: " +
                     orbit_partition_string({s0, s1}, s0.degree()));
  PermutationTriple t;
  t.n = s0.degree();
  t.s0 = s0;
  t.s1 = s1;
  t.sinf = inverse(compose(s0, s1));
  return t;
}

PermutationTriple validate_triple(const Permutation& s0, const Permutation& s1,
                                  const Permutation& sinf) {
  PermutationTriple t = validate_triple(s0, s1);
  if (!(sinf == t.sinf))
    throw InputError("triple: supplied sinf differs from (s0*s1)^{-1}");
  return t;
}

namespace {

SubgroupProfile profile_common(const CycleType& s0t, const CycleType& s1t,
                               const CycleType& sinft) {
  const int n = cycle_type_degree(s0t);
  if (cycle_type_degree(s1t) != n || cycle_type_degree(sinft) != n)
    throw InputError("profile: cycle types have different degrees");

  SubgroupProfile p;
  p.index = n;
  p.s0_type = s0t;
  p.s1_type = s1t;
  p.cusp_widths = sinft;
  for (const auto& [len, cnt] : s0t) {
    if (len == 1)
      p.e2 = cnt;
    else if (len != 2)
      throw InputError("profile: s0 has a cycle of length " + std::to_string(len));
  }
  for (const auto& [len, cnt] : s1t) {
    if (len == 1)
      p.e3 = cnt;
    else if (len != 3)
      throw InputError("profile: s1 has a cycle of length " + std::to_string(len));
  }
  p.level = 1;
  for (const auto& [w, cnt] : sinft) {
    p.num_cusps += cnt;
    p.level = std::lcm(p.level, static_cast<long>(w));
  }
  p.principal_width = sinft.front().first;

  // g = 1 + n/12 - e2/4 - e3/3 - c/2, exactly.
  mpq_class g = 1 + mpq_class(n, 12) - mpq_class(p.e2, 4) - mpq_class(p.e3, 3) -
                mpq_class(p.num_cusps, 2);
  g.canonicalize();
  if (g.get_den() != 1 || g < 0)
    throw InputError("profile: genus " + g.get_str() + " is not a nonnegative integer");
  p.genus = static_cast<int>(g.get_num().get_si());
  return p;
}

}  // namespace

SubgroupProfile profile(const PermutationTriple& t) {
  SubgroupProfile p =
      profile_common(cycle_type(t.s0), cycle_type(t.s1), cycle_type(t.sinf));
  // Principal cusp: smallest width, ties by smallest point label.
  int best = -1;
  for (const auto& c : cycles(t.sinf)) {
    if (static_cast<int>(c.size()) != p.principal_width) continue;
    int label = *std::min_element(c.begin(), c.end()) + 1;
    if (best == -1 || label < best) best = label;
  }
  p.principal_label = best;
  return p;
}

SubgroupProfile profile_from_cycle_types(const CycleType& s0t, const CycleType& s1t,
                                         const CycleType& sinft) {
  return profile_common(s0t, s1t, sinft);
}

namespace {

// P^1(Z/N) bookkeeping: points are pairs (c:d) with gcd(c,d,N)=1 up to
// multiplication by units; canonical representative minimizes (uc, ud) over
// units u, lexicographically.
struct P1 {
  int N;
  std::vector<std::pair<int, int>> pts;
  std::map<std::pair<int, int>, int> idx;
  std::vector<int> units;

  explicit P1(int N) : N(N) {
    for (int u = 1; u < N; ++u)
      if (std::gcd(u, N) == 1) units.push_back(u);
    if (N == 1) units.push_back(0);  // the single unit class mod 1
    for (int c = 0; c < N; ++c)
      for (int d = 0; d < N; ++d) {
        if (std::gcd(std::gcd(c, d), N) != 1) continue;
        auto can = canon(c, d);
        if (idx.find(can) == idx.end()) {
          idx[can] = static_cast<int>(pts.size());
          pts.push_back(can);
        }
      }
  }

  std::pair<int, int> canon(int c, int d) const {
    c = ((c % N) + N) % N;
    d = ((d % N) + N) % N;
    if (N == 1) return {0, 0};
    std::pair<int, int> best{N, N};
    for (int u : units) best = std::min(best, {u * c % N, u * d % N});
    return best;
  }

  int index_of(int c, int d) const { return idx.at(canon(c, d)); }
};

}  // namespace

PermutationTriple gamma0_triple(int N) {
  if (N < 1) throw InputError("gamma0_triple: N must be positive");
  if (N > 512) throw InputError("gamma0_triple: N too large (limit 512)");
  P1 p1(N);
  const int deg = static_cast<int>(p1.pts.size());

  // Cosets Gamma0(N)g correspond to bottom rows (c:d). The coset action
  // g -> (right multiplication by g^{-1}) is a homomorphism under our
  // apply-right-first composition; sigma0, sigma1 are the images of
  // S = [[0,-1],[1,0]] and ST (T = [[1,1],[0,1]]), so sinf comes out as
  // right multiplication by T and its cycle lengths are the cusp widths.
  auto act = [&](int a, int b, int c, int d) {
    // (r, s) -> (r, s) * [[a,b],[c,d]]
    std::vector<int> images(deg);
    for (int i = 0; i < deg; ++i) {
      auto [r, s] = p1.pts[i];
      images[i] = p1.index_of(r * a + s * c, r * b + s * d);
    }
    return Permutation::from_images0(std::move(images));
  };

  Permutation s0 = act(0, 1, -1, 0);   // S^{-1}
  Permutation s1 = act(1, 1, -1, 0);   // (ST)^{-1} = T^{-1} S^{-1}
  return validate_triple(s0, s1);
}

}  // namespace belyi

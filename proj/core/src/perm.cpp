#include "belyi/perm.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include "belyi/errors.hpp"

namespace belyi {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.img_.resize(n);
  std::iota(p.img_.begin(), p.img_.end(), 0);
  return p;
}

Permutation Permutation::from_images0(std::vector<int> images0) {
  const int n = static_cast<int>(images0.size());
  std::vector<char> seen(n, 0);
  for (int v : images0) {
    if (v < 0 || v >= n || seen[v])
      throw InputError("permutation images are not a bijection on {1..n}");
    seen[v] = 1;
  }
  Permutation p;
  p.img_ = std::move(images0);
  return p;
}

Permutation Permutation::from_images1(const std::vector<int>& images1) {
  std::vector<int> v(images1.size());
  for (size_t i = 0; i < images1.size(); ++i) v[i] = images1[i] - 1;
  return from_images0(std::move(v));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<int> Permutation::images1() const {
  std::vector<int> v(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) v[i] = img_[i] + 1;
  return v;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw InputError("compose: degree mismatch");
  std::vector<int> r(p.degree());
  for (int i = 0; i < p.degree(); ++i) r[i] = p(q(i));
  return Permutation::from_images0(std::move(r));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> r(p.degree());
  for (int i = 0; i < p.degree(); ++i) r[p(i)] = i;
  return Permutation::from_images0(std::move(r));
}

Permutation perm_power(const Permutation& p, long e) {
  Permutation base = e < 0 ? inverse(p) : p;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
  Permutation acc = Permutation::identity(p.degree());
  while (k) {
    if (k & 1) acc = compose(acc, base);
    base = compose(base, base);
    k >>= 1;
  }
  return acc;
}

long perm_order(const Permutation& p) {
  long ord = 1;
  for (const auto& [len, cnt] : cycle_type(p)) ord = std::lcm(ord, static_cast<long>(len));
  return ord;
}

std::vector<std::vector<int>> cycles(const Permutation& p) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(p.degree(), 0);
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    for (int j = i; !seen[j]; j = p(j)) {
      seen[j] = 1;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

CycleType cycle_type(const Permutation& p) {
  std::map<int, int> counts;
  for (const auto& c : cycles(p)) counts[static_cast<int>(c.size())]++;
  return CycleType(counts.begin(), counts.end());
}

std::string cycle_type_string(const CycleType& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) os << ' ';
    os << t[i].first << '^' << t[i].second;
  }
  return os.str();
}

CycleType parse_cycle_type(const std::string& s) {
  std::map<int, int> counts;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    size_t caret = tok.find('^');
    try {
      int len = std::stoi(tok.substr(0, caret));
      int cnt = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
      if (len < 1 || cnt < 1) throw InputError("cycle type parts must be positive");
      counts[len] += cnt;
    } catch (const std::logic_error&) {
      throw InputError("malformed cycle type token '" + tok + "'");
    }
  }
  if (counts.empty()) throw InputError("empty cycle type");
  return CycleType(counts.begin(), counts.end());
}

int cycle_type_degree(const CycleType& t) {
  int n = 0;
  for (const auto& [len, cnt] : t) n += len * cnt;
  return n;
}

bool is_transitive(const std::vector<Permutation>& gens, int n) {
  if (n <= 1) return true;
  if (gens.empty()) throw InputError("is_transitive: no generators for degree > 1");
  for (const auto& g : gens)
    if (g.degree() != n) throw InputError("is_transitive: degree mismatch");
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      int y = g(x);
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n;
}

namespace {

// Stabilizer chain with deterministic base selection (smallest moved point)
// and breadth-first Schreier trees in generator order.
class StabChain {
 public:
  explicit StabChain(const std::vector<Permutation>& gens) {
    if (gens.empty()) throw InputError("group_order: empty generator list");
    n_ = gens[0].degree();
    for (const auto& g : gens) {
      if (g.degree() != n_) throw InputError("group_order: degree mismatch");
      if (!g.is_identity()) add_generator(g);
    }
    build();
  }

  mpz_class order() {
    mpz_class ord = 1;
    for (size_t i = 0; i < bases_.size(); ++i) {
      recompute_orbit(i);
      ord *= static_cast<long>(orbits_[i].size());
    }
    return ord;
  }

 private:
  int n_ = 0;
  std::vector<Permutation> S_;
  std::vector<int> bases_;
  // Per level: orbit in discovery order; Schreier tree (parent point and
  // generator index into S_), parent[base] = base.
  std::vector<std::vector<int>> orbits_;
  std::vector<std::vector<int>> parent_, via_;

  bool fixes_prefix(const Permutation& g, size_t i) const {
    for (size_t k = 0; k < i; ++k)
      if (g(bases_[k]) != bases_[k]) return false;
    return true;
  }

  void add_generator(const Permutation& g) {
    size_t lvl = 0;
    while (lvl < bases_.size() && g(bases_[lvl]) == bases_[lvl]) ++lvl;
    if (lvl == bases_.size()) {
      int b = 0;
      while (g(b) == b) ++b;
      bases_.push_back(b);
      orbits_.emplace_back();
      parent_.emplace_back();
      via_.emplace_back();
    }
    S_.push_back(g);
  }

  void recompute_orbit(size_t i) {
    parent_[i].assign(n_, -1);
    via_[i].assign(n_, -1);
    orbits_[i].clear();
    int b = bases_[i];
    parent_[i][b] = b;
    orbits_[i].push_back(b);
    for (size_t head = 0; head < orbits_[i].size(); ++head) {
      int x = orbits_[i][head];
      for (size_t si = 0; si < S_.size(); ++si) {
        if (!fixes_prefix(S_[si], i)) continue;
        int y = S_[si](x);
        if (parent_[i][y] == -1) {
          parent_[i][y] = x;
          via_[i][y] = static_cast<int>(si);
          orbits_[i].push_back(y);
        }
      }
    }
  }

  // Coset representative u with u(base_i) = p, from the Schreier tree. The
  // walk meets the tree edges leaf-first, and compose applies its right
  // factor first, so folding each edge generator onto the right yields the
  // root-to-leaf word directly.
  Permutation rep(size_t i, int p) const {
    Permutation u = Permutation::identity(n_);
    while (p != bases_[i]) {
      u = compose(u, S_[via_[i][p]]);
      p = parent_[i][p];
    }
    return u;
  }

  // Strips g through levels >= from; returns (residue, level reached).
  std::pair<Permutation, size_t> strip(Permutation g, size_t from) const {
    for (size_t i = from; i < bases_.size(); ++i) {
      int p = g(bases_[i]);
      if (p == bases_[i]) continue;
      if (parent_[i][p] == -1) return {std::move(g), i};
      g = compose(inverse(rep(i, p)), g);
    }
    return {std::move(g), bases_.size()};
  }

  void build() {
    if (bases_.empty()) return;
    long i = static_cast<long>(bases_.size()) - 1;
    while (i >= 0) {
      recompute_orbit(i);
      bool complete = true;
      for (size_t head = 0; head < orbits_[i].size() && complete; ++head) {
        int p = orbits_[i][head];
        Permutation up = rep(i, p);
        for (size_t si = 0; si < S_.size() && complete; ++si) {
          if (!fixes_prefix(S_[si], i)) continue;
          Permutation h = compose(inverse(rep(i, S_[si](p))), compose(S_[si], up));
          if (h.is_identity()) continue;
          auto [res, lvl] = strip(std::move(h), i + 1);
          if (res.is_identity()) continue;
          // New element fixing bases below lvl: record and redo that level.
          if (lvl == bases_.size()) {
            int b = 0;
            while (res(b) == b) ++b;
            bases_.push_back(b);
            orbits_.emplace_back();
            parent_.emplace_back();
            via_.emplace_back();
          }
          S_.push_back(std::move(res));
          for (size_t k = i + 1; k <= lvl; ++k) recompute_orbit(k);
          i = static_cast<long>(lvl);
          complete = false;
        }
      }
      if (complete) --i;
    }
  }
};

}  // namespace

mpz_class group_order(const std::vector<Permutation>& gens) {
  StabChain chain(gens);
  return chain.order();
}

std::optional<Permutation> simultaneously_conjugate(const std::vector<Permutation>& a,
                                                    const std::vector<Permutation>& b,
                                                    double time_limit_seconds) {
  if (a.size() != b.size()) throw InputError("simultaneously_conjugate: arity mismatch");
  if (a.empty()) throw InputError("simultaneously_conjugate: empty input");
  const int n = a[0].degree();
  for (const auto& g : a)
    if (g.degree() != n) throw InputError("simultaneously_conjugate: degree mismatch");
  for (const auto& g : b) {
    if (g.degree() != n) return std::nullopt;
  }
  const size_t m = a.size();
  for (size_t i = 0; i < m; ++i)
    if (cycle_type(a[i]) != cycle_type(b[i])) return std::nullopt;

  // Per-point signature: the cycle length of the point in each generator.
  // pi can only map points to points with equal signature.
  auto signatures = [&](const std::vector<Permutation>& gs) {
    std::vector<std::vector<int>> sig(n, std::vector<int>(m));
    for (size_t i = 0; i < m; ++i)
      for (const auto& c : cycles(gs[i]))
        for (int x : c) sig[x][i] = static_cast<int>(c.size());
    return sig;
  };
  auto siga = signatures(a), sigb = signatures(b);

  std::vector<Permutation> ainv, binv;
  for (size_t i = 0; i < m; ++i) {
    ainv.push_back(inverse(a[i]));
    binv.push_back(inverse(b[i]));
  }

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(time_limit_seconds);
  std::vector<int> map(n, -1), used(n, 0);

  // Assigns map[x] = y and closes under the conjugation constraints
  // map[a_i(x)] = b_i(map[x]). Records assignments in trail for undo.
  auto propagate = [&](int x0, int y0, std::vector<int>& trail) -> bool {
    std::vector<std::pair<int, int>> queue{{x0, y0}};
    while (!queue.empty()) {
      auto [x, y] = queue.back();
      queue.pop_back();
      if (map[x] != -1) {
        if (map[x] != y) return false;
        continue;
      }
      if (used[y] || siga[x] != sigb[y]) return false;
      map[x] = y;
      used[y] = 1;
      trail.push_back(x);
      for (size_t i = 0; i < m; ++i) {
        queue.emplace_back(a[i](x), b[i](y));
        queue.emplace_back(ainv[i](x), binv[i](y));
      }
    }
    return true;
  };

  std::vector<std::vector<int>> trail_stack;
  auto undo = [&](const std::vector<int>& trail) {
    for (int x : trail) {
      used[map[x]] = 0;
      map[x] = -1;
    }
  };

  // Depth-first over unassigned points (candidates in ascending order); the
  // propagation closes whole orbits, so the depth equals the orbit count.
  std::vector<std::pair<int, int>> choice;  // (point, last tried candidate)
  int x = 0;
  while (true) {
    if (std::chrono::steady_clock::now() > deadline)
      throw TimeoutError("simultaneously_conjugate: time limit exceeded");
    while (x < n && map[x] != -1) ++x;
    if (x == n) {
      std::vector<int> images(map.begin(), map.end());
      return Permutation::from_images0(std::move(images));
    }
    int y = choice.empty() || choice.back().first != x ? 0 : choice.back().second + 1;
    if (!choice.empty() && choice.back().first == x) choice.pop_back();
    bool advanced = false;
    for (; y < n; ++y) {
      if (used[y] || sigb[y] != siga[x]) continue;
      std::vector<int> trail;
      if (propagate(x, y, trail)) {
        choice.emplace_back(x, y);
        trail_stack.push_back(std::move(trail));
        advanced = true;
        break;
      }
      undo(trail);
    }
    if (advanced) continue;
    if (choice.empty()) return std::nullopt;
    // Backtrack: undo the last successful choice and resume from it.
    undo(trail_stack.back());
    trail_stack.pop_back();
    x = choice.back().first;
  }
}

}  // namespace belyi

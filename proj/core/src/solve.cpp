#include "belyi/solve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "belyi/errors.hpp"
#include "belyi/roots.hpp"

namespace belyi {

Real relative_residual(const BelyiAnsatz& a, const std::vector<Complex>& x,
                       mpfr_prec_t prec) {
  std::vector<Complex> r = residual(a, x, prec);
  Real scale = system_scale(assemble(a, x, prec), prec);
  Real nrm(0L, prec);
  for (const auto& c : r) {
    Real v = abs(c);
    if (v > nrm) nrm = v;
  }
  return nrm / scale;
}

namespace {

Real threshold(double factor, mpfr_prec_t bits, mpfr_prec_t prec) {
  long e = static_cast<long>(std::ceil(factor * static_cast<double>(bits)));
  return pow2(-e, prec);
}

std::vector<int> free_indices(const BelyiAnsatz& a) {
  std::vector<int> idx;
  for (int i = 0; i < a.unknowns; ++i)
    if (!a.is_gauge_fixed(i)) idx.push_back(i);
  return idx;
}

// Rank of the free-column Jacobian from QR diagonal magnitudes.
int estimate_rank(const BelyiAnsatz& a, const std::vector<Complex>& x,
                  const std::vector<int>& free_idx, mpfr_prec_t prec) {
  const size_t rows = static_cast<size_t>(a.equations());
  const size_t cols = free_idx.size();
  CMatrix J = jacobian(a, x, prec);
  CMatrix Jf(rows, cols, prec);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) Jf.at(i, j) = J.at(i, static_cast<size_t>(free_idx[j]));
  std::vector<Real> rdiag;
  std::vector<Complex> zero(rows, Complex(prec));
  try {
    qr_least_squares(Jf, zero, prec, &rdiag);
  } catch (const SolveError&) {
    return -1;
  }
  Real top(0L, prec);
  for (const auto& d : rdiag)
    if (d > top) top = d;
  if (top.is_zero()) return 0;
  Real cutoff = top * pow2(-static_cast<long>(prec) / 2, prec);
  int rank = 0;
  for (const auto& d : rdiag)
    if (d > cutoff) ++rank;
  return rank;
}

bool coeffs_less(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].re() < y[i].re()) return true;
    if (y[i].re() < x[i].re()) return false;
    if (x[i].im() < y[i].im()) return true;
    if (y[i].im() < x[i].im()) return false;
  }
  return false;
}

}  // namespace

LinearSolveResult linear_solve(const CMatrix& A, const std::vector<Complex>& b,
                               mpfr_prec_t prec) {
  LinearSolveResult res;
  std::vector<Real> diag;
  if (A.rows() == A.cols())
    res.x = lu_solve(A, b, prec, &diag);
  else
    res.x = qr_least_squares(A, b, prec, &diag);
  res.cond_log2 = 0;
  if (!diag.empty()) {
    long hi = diag[0].exponent2(), lo = hi;
    for (const auto& d : diag) {
      hi = std::max(hi, d.exponent2());
      lo = std::min(lo, d.exponent2());
    }
    res.cond_log2 = hi - lo;
  }
  return res;
}

NumericSolution newton_refine(const BelyiAnsatz& a, const std::vector<Complex>& x0,
                              const SolveOptions& opt) {
  if (static_cast<int>(x0.size()) != a.unknowns)
    throw InputError("newton_refine: expected " + std::to_string(a.unknowns) +
                     " coefficients, got " + std::to_string(x0.size()));
  const std::vector<int> free_idx = free_indices(a);
  const size_t rows = static_cast<size_t>(a.equations());

  mpfr_prec_t prec = std::min(opt.start_bits, opt.target_bits);
  std::vector<Complex> x;
  x.reserve(x0.size());
  for (const auto& c : x0) x.push_back(c.round_to(prec));
  for (int i : a.normalization.gauge_fixed) x[static_cast<size_t>(i)] = Complex(prec);

  auto sup_norm = [&](const std::vector<Complex>& r) {
    Real nrm(0L, prec);
    for (const auto& c : r) {
      Real v = abs(c);
      if (v > nrm) nrm = v;
    }
    return nrm;
  };

  bool done = false;
  while (!done) {
    Real rel = relative_residual(a, x, prec);
    int iter = 0;
    while (true) {
      if (prec >= opt.target_bits && rel < threshold(opt.accept_exp, opt.target_bits, prec)) {
        done = true;
        break;
      }
      if (prec < opt.target_bits && rel < threshold(opt.escalate_exp, prec, prec)) break;
      if (iter++ >= opt.max_iter)
        throw SolveError("newton_refine: no convergence within " +
                         std::to_string(opt.max_iter) + " iterations at " +
                         std::to_string(prec) + " bits");

      CMatrix J = jacobian(a, x, prec);
      CMatrix Jf(rows, free_idx.size(), prec);
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < free_idx.size(); ++j)
          Jf.at(i, j) = J.at(i, static_cast<size_t>(free_idx[j]));
      std::vector<Complex> r = residual(a, x, prec);
      std::vector<Complex> step = linear_solve(Jf, r, prec).x;

      // Backtracking line search on the absolute residual (the relative
      // normalization moves with x, which would mask genuine Newton
      // progress that also shrinks the system scale).
      Real cur = sup_norm(r);
      Real t(1L, prec);
      bool improved = false;
      for (int ls = 0; ls <= opt.line_search_max; ++ls) {
        std::vector<Complex> xt = x;
        for (size_t j = 0; j < free_idx.size(); ++j) {
          Complex delta = step[j] * t;
          xt[static_cast<size_t>(free_idx[j])] = x[static_cast<size_t>(free_idx[j])] - delta;
        }
        Real rt = sup_norm(residual(a, xt, prec));
        if (rt < cur) {
          x = std::move(xt);
          rel = relative_residual(a, x, prec);
          improved = true;
          break;
        }
        t.mul_2si(-1);
      }
      if (!improved)
        throw SolveError("newton_refine: residual stalled at " + std::to_string(prec) +
                         " bits (diverging start)");
    }
    if (!done) {
      prec = std::min<mpfr_prec_t>(prec * 2, opt.target_bits);
      for (auto& c : x) c = c.round_to(prec);
    }
  }

  NumericSolution sol;
  sol.coeffs = std::move(x);
  sol.precision_bits = prec;
  sol.residual_norm = relative_residual(a, sol.coeffs, prec);
  if (a.unknowns <= 128)
    sol.jacobian_rank = estimate_rank(a, sol.coeffs, free_idx, prec);
  return sol;
}

std::vector<Complex> apply_twist(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                                 int k, mpfr_prec_t prec) {
  const int h = a.principal_width;
  std::vector<Complex> out;
  out.reserve(coeffs.size());
  if (h <= 1 || k % h == 0) {
    for (const auto& c : coeffs) out.push_back(c.round_to(prec));
    return out;
  }
  std::vector<Complex> omega;  // h-th roots of unity
  Real two_pi = pi(prec);
  two_pi.mul_2si(1);
  for (int j = 0; j < h; ++j)
    omega.push_back(unit_circle(two_pi * Real(j, prec) / Real(h, prec)));
  for (int i = 0; i < a.unknowns; ++i) {
    int w = a.coweight(i);
    int e = ((-k * w) % h + h) % h;
    out.push_back(coeffs[static_cast<size_t>(i)].round_to(prec) * omega[static_cast<size_t>(e)]);
  }
  return out;
}

bool same_solution_class(const BelyiAnsatz& a, const std::vector<Complex>& x,
                         const std::vector<Complex>& y, long dedup_bits) {
  if (x.size() != y.size()) return false;
  mpfr_prec_t prec = 64;
  for (const auto& c : x) prec = std::max(prec, c.re().prec());
  Real scale(1L, prec);
  for (const auto& c : x) {
    Real v = abs(c);
    if (v > scale) scale = v;
  }
  Real tol = scale * pow2(-dedup_bits, prec);
  const int h = std::max(1, a.principal_width);
  for (int k = 0; k < h; ++k) {
    std::vector<Complex> yt = apply_twist(a, y, k, prec);
    Real diff(0L, prec);
    for (size_t i = 0; i < x.size(); ++i) {
      Real v = abs(x[i] - yt[i]);
      if (v > diff) diff = v;
    }
    if (diff < tol) return true;
  }
  return false;
}

namespace {

// Factor-root separation filter: every factor squarefree and the root sets
// of distinct factors disjoint at working precision. Degenerate limits
// (collided or shared roots) describe lower-dimensional parasitic families,
// not Belyi maps of the given combinatorial type.
bool generic_solution(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                      mpfr_prec_t prec) {
  AssembledMap m = assemble(a, coeffs, prec);
  std::vector<Complex> all;
  for (const auto& f : m.factor_polys) {
    if (cpoly_degree(f) < 1) continue;
    std::vector<Complex> roots;
    try {
      roots = find_roots(f, prec, 200);
    } catch (const SolveError&) {
      return false;
    }
    all.insert(all.end(), roots.begin(), roots.end());
  }
  Real scale(1L, prec);
  for (const auto& r : all) {
    Real v = abs(r);
    if (v > scale) scale = v;
  }
  Real tol = scale * pow2(-static_cast<long>(prec) / 4, prec);
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      if (abs(all[i] - all[j]) < tol) return false;
  return true;
}

}  // namespace

std::vector<NumericSolution> multistart_search(const BelyiAnsatz& a,
                                               const SolveOptions& opt) {
  const std::vector<int> free_idx = free_indices(a);
  const mpfr_prec_t sbits = opt.start_bits;

  // Stage 1: independent refinement of each random start at start_bits.
  std::vector<std::vector<Complex>> found(static_cast<size_t>(opt.budget));
  std::vector<char> ok(static_cast<size_t>(opt.budget), 0);

  auto run_start = [&](long s) {
    std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + static_cast<unsigned long>(s));
    auto unit = [&]() {  // uniform in [-1, 1], 53-bit resolution
      return -1.0 + static_cast<double>(rng() >> 11) * (2.0 / 9007199254740992.0);
    };
    // Root-based start: draw random roots for every factor inside a shared
    // log-uniform scale window and multiply the monic factors out. The
    // resulting coefficients carry the magnitudes of a genuine root
    // configuration at every coweight simultaneously, which a fixed
    // per-coefficient radius cannot do once root scales spread out. Odd
    // start indices place all roots on the real axis: a real start keeps
    // the whole Newton trajectory real, halving the search dimension for
    // maps with real coefficient vectors, while even indices keep full
    // coverage of genuinely complex solution classes.
    bool real_start = (s % 2) == 1;
    double u = 1.0 + (unit() + 1.0) * 0.5 * static_cast<double>(opt.radius_log2_max - 1);
    std::vector<Complex> x0(static_cast<size_t>(a.unknowns), Complex(sbits));
    for (size_t fi = 0; fi < a.factors.size(); ++fi) {
      int deg = a.factors[fi].degree;
      if (deg < 1) continue;
      std::vector<Complex> roots;
      roots.reserve(static_cast<size_t>(deg));
      for (int k = 0; k < deg; ++k) {
        double mag = std::exp2((unit() + 1.0) * 0.5 * u);
        double th = real_start ? (unit() < 0 ? 3.141592653589793 : 0.0)
                               : unit() * 3.141592653589793;
        roots.emplace_back(Real::from_double(mag * std::cos(th), sbits),
                           Real::from_double(mag * std::sin(th), sbits));
      }
      CPoly f = cpoly_from_roots(roots, sbits);
      for (int k = 0; k < deg; ++k)
        x0[static_cast<size_t>(a.offsets[fi] + k)] = f[static_cast<size_t>(k)];
    }
    SolveOptions local = opt;
    local.start_bits = local.target_bits = sbits;
    local.max_iter = std::min(opt.max_iter, 60);
    try {
      NumericSolution cand = newton_refine(a, x0, local);
      found[static_cast<size_t>(s)] = std::move(cand.coeffs);
      ok[static_cast<size_t>(s)] = 1;
    } catch (const SolveError&) {
    }
  };

  int workers = std::max(1, opt.threads);
  if (workers == 1) {
    for (long s = 0; s < opt.budget; ++s) run_start(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w]() {
        for (long s = w; s < opt.budget; s += workers) run_start(s);
      });
    for (auto& t : pool) t.join();
  }

  // Stage 2 (sequential, in start order, so the outcome is independent of
  // the thread count): genericity filter, then twist-aware deduplication.
  std::vector<std::vector<Complex>> reps;
  for (long s = 0; s < opt.budget; ++s) {
    if (!ok[static_cast<size_t>(s)]) continue;
    const auto& cand = found[static_cast<size_t>(s)];
    bool dup = false;
    for (const auto& rep : reps)
      if (same_solution_class(a, rep, cand, opt.dedup_bits)) {
        dup = true;
        break;
      }
    if (dup) continue;
    if (a.n <= opt.genericity_guard_degree && !generic_solution(a, cand, sbits)) continue;
    reps.push_back(cand);
  }

  // Stage 3: escalate one representative per class to target precision.
  std::vector<NumericSolution> out;
  for (const auto& rep : reps) {
    try {
      out.push_back(newton_refine(a, rep, opt));
    } catch (const SolveError&) {
      // A representative that stops converging en route to the target is a
      // spurious near-solution; drop it.
    }
  }

  std::sort(out.begin(), out.end(), [](const NumericSolution& p, const NumericSolution& q) {
    if (p.residual_norm < q.residual_norm) return true;
    if (q.residual_norm < p.residual_norm) return false;
    return coeffs_less(p.coeffs, q.coeffs);
  });
  return out;
}

int jacobian_rank_estimate(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                           mpfr_prec_t prec) {
  return estimate_rank(a, coeffs, free_indices(a), prec);
}

}  // namespace belyi

#include "belyi/roots.hpp"

#include <algorithm>
#include <cmath>

#include "belyi/errors.hpp"

namespace belyi {

namespace {

// Initial points on circles whose radii come from the upper convex hull of
// (k, log2 |p_k|): the classical Newton-polygon estimate, which keeps the
// starting cluster close to root magnitudes even when coefficients span many
// orders of magnitude.
std::vector<Complex> initial_points(const CPoly& p, int deg, mpfr_prec_t prec) {
  struct Pt {
    int k;
    double y;
  };
  std::vector<Pt> pts;
  for (int k = 0; k <= deg; ++k)
    if (!p[k].is_zero())
      pts.push_back({k, static_cast<double>(abs(p[k]).exponent2())});

  // Upper convex hull, left to right.
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      if ((b.y - a.y) * (q.k - a.k) <= (q.y - a.y) * (b.k - a.k))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }

  std::vector<Complex> z;
  z.reserve(deg);
  Real two_pi = pi(prec) * 2L;
  int seg = 0;
  for (size_t h = 0; h + 1 < hull.size(); ++h, ++seg) {
    int m = hull[h + 1].k - hull[h].k;
    double slope = (hull[h].y - hull[h + 1].y) / m;  // log2 radius
    Real radius = Real::from_double(std::exp2(std::min(std::max(slope, -16000.0), 16000.0)),
                                    prec);
    for (int j = 0; j < m; ++j) {
      Real theta = two_pi * Real::from_double(static_cast<double>(j) / m, prec) +
                   Real::from_double(0.37 + 0.61 * seg, prec);
      z.push_back(unit_circle(theta) * radius);
    }
  }
  return z;
}

}  // namespace

std::vector<Complex> find_roots(const CPoly& p0, mpfr_prec_t prec, int max_iter) {
  CPoly p = p0;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) throw InputError("find_roots: degree < 1");

  std::vector<Complex> z = initial_points(p, deg, prec);
  Real tol = pow2(-(prec - 12), prec);

  for (int iter = 0; iter < max_iter; ++iter) {
    bool done = true;
    for (int i = 0; i < deg; ++i) {
      Complex val(prec), der(prec);
      cpoly_eval2(p, z[i], prec, val, der);
      Complex newton = der.is_zero() ? Complex(Real::from_double(1e-6, prec),
                                               Real::from_double(1e-6, prec))
                                     : val / der;
      Complex sum(prec);
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (d.is_zero())
          d = Complex(pow2(-prec / 2, prec), Real(0L, prec));
        sum += Complex(1L, prec) / d;
      }
      Complex denom = Complex(1L, prec) - newton * sum;
      Complex w = denom.is_zero() ? newton : newton / denom;
      z[i] -= w;
      if (abs(w) > tol * (Real(1L, prec) + abs(z[i]))) done = false;
    }
    if (done) return z;
  }
  throw SolveError("find_roots: Aberth iteration did not converge");
}

Real newton_polish(const CPoly& p, std::vector<Complex>& z, mpfr_prec_t prec,
                   int iterations) {
  Real worst(0L, prec);
  for (int it = 0; it < iterations; ++it) {
    worst = Real(0L, prec);
    for (Complex& zi : z) {
      Complex val(prec), der(prec);
      cpoly_eval2(p, zi, prec, val, der);
      if (der.is_zero()) throw SolveError("newton_polish: derivative vanished");
      Complex step = val / der;
      zi -= step;
      worst = max(worst, abs(step) / (Real(1L, prec) + abs(zi)));
    }
  }
  return worst;
}

}  // namespace belyi

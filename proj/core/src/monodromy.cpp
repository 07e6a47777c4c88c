#include "belyi/monodromy.hpp"

#include <algorithm>

#include "belyi/errors.hpp"
#include "belyi/roots.hpp"

namespace belyi {

namespace {

// One path piece y(t), t in [0,1]: a line segment or a circular arc with a
// signed angular sweep.
struct Segment {
  enum class Kind { Line, Arc } kind;
  Complex a, b;        // line endpoints
  Complex center;      // arc data
  Real radius;
  Real theta0, theta1;

  static Segment line(const Complex& a, const Complex& b, mpfr_prec_t prec) {
    return Segment{Kind::Line, a, b, Complex(prec), Real(0L, prec), Real(0L, prec),
                   Real(0L, prec)};
  }
  static Segment arc(const Complex& c, const Real& r, double th0_pi, double th1_pi,
                     mpfr_prec_t prec) {
    Real p = pi(prec);
    Real t0 = p * Real::from_double(th0_pi, prec);
    Real t1 = p * Real::from_double(th1_pi, prec);
    return Segment{Kind::Arc, Complex(prec), Complex(prec), c, r, t0, t1};
  }
};

Complex seg_eval(const Segment& s, const Real& t) {
  if (s.kind == Segment::Kind::Line) {
    Complex d = s.b - s.a;
    return s.a + Complex(t * d.re(), t * d.im());
  }
  Real theta = s.theta0 + t * (s.theta1 - s.theta0);
  Complex u = unit_circle(theta);
  return s.center + Complex(s.radius * u.re(), s.radius * u.im());
}

// Based loop pieces for base point y0 = -R (angles in units of pi).
std::vector<Segment> loop_segments(Loop loop, const Real& R, mpfr_prec_t prec) {
  Complex zero(prec);
  Complex base(Real(0L, prec) - R, Real(0L, prec));
  switch (loop) {
    case Loop::AroundZero:
      // counterclockwise circle |y| = R starting and ending at -R
      return {Segment::arc(zero, R, 1.0, 3.0, prec)};
    case Loop::Around1728: {
      // upper-half arc to +R, counterclockwise circle centered at 1728
      // through +R, upper-half arc back; routing over the 0-loop keeps the
      // concatenation loop0 * loop1728 * loopinf contractible
      Real r2 = Real(1728L, prec) - R;
      Complex c(Real(1728L, prec), Real(0L, prec));
      return {Segment::arc(zero, R, 1.0, 0.0, prec), Segment::arc(c, r2, 1.0, 3.0, prec),
              Segment::arc(zero, R, 0.0, 1.0, prec)};
    }
    case Loop::AroundInfinity: {
      // west segment to -6912, big circle traversed negatively, segment back
      Real Rb(6912L, prec);
      Complex far(Real(0L, prec) - Rb, Real(0L, prec));
      return {Segment::line(base, far, prec), Segment::arc(zero, Rb, 1.0, -1.0, prec),
              Segment::line(far, base, prec)};
    }
  }
  throw InputError("unknown loop");
}

// p3 - y*pc at fixed y.
CPoly fiber_poly(const NumericMap& m, const Complex& y, mpfr_prec_t prec) {
  CPoly f = cpoly_sub(m.p3, cpoly_scale(m.pc, y, prec), prec);
  return f;
}

Real min_pairwise(const std::vector<Complex>& z, mpfr_prec_t prec) {
  Real best(0L, prec);
  bool first = true;
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j) {
      Real d = abs(z[i] - z[j]);
      if (first || d < best) {
        best = d;
        first = false;
      }
    }
  if (first) best = Real(1L, prec);  // degree-1 fiber: no pairs
  return best;
}

// Newton iteration on F at fixed y; true when the last step is below
// tol * (1 + |z|).
bool newton_correct(const CPoly& F, const CPoly& dF, Complex& z, mpfr_prec_t prec,
                    const Real& tol, int iters) {
  for (int it = 0; it < iters; ++it) {
    Complex v = cpoly_eval(F, z, prec);
    Complex d = cpoly_eval(dF, z, prec);
    if (d.is_zero()) return false;
    Complex step = v / d;
    z = z - step;
    if (abs(step) < tol * (Real(1L, prec) + abs(z))) return true;
  }
  return false;
}

}  // namespace

NumericMap numeric_map(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                       mpfr_prec_t prec) {
  AssembledMap am = assemble(a, coeffs, prec);
  return NumericMap{am.p3, am.pc, a.n};
}

NumericMap numeric_map(const CertifiedBelyiMap& m, mpfr_prec_t prec) {
  Complex gen = m.embedding.round_to(prec);
  NumericMap out;
  out.n = m.ansatz.n;
  out.p3.reserve(m.p3.size());
  for (const auto& e : m.p3) out.p3.push_back(fe_eval(e, gen, prec));
  out.pc.reserve(m.pc.size());
  for (const auto& e : m.pc) out.pc.push_back(fe_eval(e, gen, prec));
  return out;
}

FiberState fiber_at(const NumericMap& m, const Complex& y0, mpfr_prec_t prec) {
  CPoly F = fiber_poly(m, y0.round_to(prec), prec);
  if (cpoly_degree(F) != m.n)
    throw InputError("fiber_at: fiber polynomial degree " +
                     std::to_string(cpoly_degree(F)) + ", expected " + std::to_string(m.n));
  FiberState fs;
  fs.y0 = y0.round_to(prec);
  fs.precision_bits = prec;
  fs.roots = find_roots(F, prec);
  Real scale(1L, prec);
  for (const auto& z : fs.roots) {
    Real a = abs(z);
    if (a > scale) scale = a;
  }
  fs.separation = min_pairwise(fs.roots, prec);
  Real floor = pow2(-static_cast<long>(prec) / 4, prec) * (Real(1L, prec) + scale);
  if (!(fs.separation > floor))
    throw SolveError("clustered roots: fiber separation below 2^-" +
                     std::to_string(static_cast<long>(prec) / 4) +
                     " (base point too close to a critical value)");
  return fs;
}

Permutation track_loop(const NumericMap& m, const FiberState& fs, Loop loop) {
  const mpfr_prec_t prec = fs.precision_bits;
  const int n = m.n;
  if (fs.y0.im().sign() != 0 || fs.y0.re().sign() >= 0)
    throw InputError("track_loop: base point must be on the negative real axis");
  Real R = abs(fs.y0);

  std::vector<Segment> path = loop_segments(loop, R, prec);
  CPoly dp3 = cpoly_derivative(m.p3, prec);
  CPoly dpc = cpoly_derivative(m.pc, prec);

  std::vector<Complex> z = fs.roots;
  Real tol = pow2(-(static_cast<long>(prec) - 16), prec);
  Real dmin = fs.separation;

  for (const auto& seg : path) {
    Real t(0L, prec);
    Real one(1L, prec);
    Real dt = Real(1L, prec);
    dt.mul_2si(-4);  // initial step 1/16 of the piece
    const Real dt_floor = pow2(-30, prec);
    const Real dt_cap = Real(1L, prec) * pow2(-2, prec);
    int clean = 0;
    Complex y_cur = seg_eval(seg, t);

    while (t < one) {
      Real step = dt;
      if (t + step > one) step = one - t;
      Real t_next = t + step;
      Complex y_next = seg_eval(seg, t_next);
      Complex dy = y_next - y_cur;

      CPoly F = fiber_poly(m, y_next, prec);
      CPoly dF = cpoly_sub(dp3, cpoly_scale(dpc, y_next, prec), prec);

      std::vector<Complex> znew(z);
      bool ok = true;
      Real jump_cap = dmin;
      jump_cap.mul_2si(-2);  // corrected point may move at most dmin/4 off its prediction
      for (int i = 0; i < n && ok; ++i) {
        // predictor: dx/dy = pc / (p3' - y pc')
        Complex denom = cpoly_eval(dp3, z[static_cast<size_t>(i)], prec) -
                        y_cur * cpoly_eval(dpc, z[static_cast<size_t>(i)], prec);
        Complex pred = z[static_cast<size_t>(i)];
        if (!denom.is_zero())
          pred = pred + dy * cpoly_eval(m.pc, z[static_cast<size_t>(i)], prec) / denom;
        Complex zc = pred;
        if (!newton_correct(F, dF, zc, prec, tol, 40)) {
          ok = false;
          break;
        }
        if (!(abs(zc - pred) < jump_cap)) {
          ok = false;  // corrector left the trust region: likely path jumping
          break;
        }
        znew[static_cast<size_t>(i)] = zc;
      }
      if (ok && n > 1) {
        Real d = min_pairwise(znew, prec);
        Real guard = fs.separation;
        guard.mul_2si(-6);
        if (!(d > guard)) ok = false;
        else dmin = d;
      }
      if (ok) {
        z = std::move(znew);
        t = t_next;
        y_cur = y_next;
        if (++clean >= 4) {
          clean = 0;
          Real dbl = dt;
          dbl.mul_2si(1);
          dt = min(dbl, dt_cap);
        }
      } else {
        clean = 0;
        dt.mul_2si(-1);
        if (dt < dt_floor)
          throw SolveError("track_loop: step floor reached (path crossing suspected)");
      }
    }
  }

  // Match end roots to start labels.
  std::vector<int> images(static_cast<size_t>(n), -1);
  std::vector<char> used(static_cast<size_t>(n), 0);
  Real cap = fs.separation;
  cap.mul_2si(-2);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    Real bd(0L, prec);
    for (int j = 0; j < n; ++j) {
      Real d = abs(z[static_cast<size_t>(i)] - fs.roots[static_cast<size_t>(j)]);
      if (best < 0 || d < bd) {
        best = j;
        bd = d;
      }
    }
    if (best < 0 || !(bd < cap) || used[static_cast<size_t>(best)])
      throw SolveError("track_loop: end-of-loop matching failed (root drifted or collided)");
    used[static_cast<size_t>(best)] = 1;
    images[static_cast<size_t>(i)] = best;
  }
  return Permutation::from_images0(images);
}

PermutationTriple monodromy_triple(const NumericMap& m, const MonodromyOptions& opt) {
  if (m.n > opt.max_degree)
    throw InputError("monodromy guard: degree " + std::to_string(m.n) + " exceeds limit " +
                     std::to_string(opt.max_degree) + " (raise --max-monodromy-degree)");
  if (!(opt.base_re < 0.0) || -opt.base_re < 64.0 || -opt.base_re > 1600.0)
    throw InputError("monodromy base point must be real in [-1600, -64]");
  Complex y0(Real::from_double(opt.base_re, opt.prec), Real(0L, opt.prec));
  FiberState fs = fiber_at(m, y0, opt.prec);
  Permutation s1 = track_loop(m, fs, Loop::AroundZero);
  Permutation s0 = track_loop(m, fs, Loop::Around1728);
  Permutation sinf = track_loop(m, fs, Loop::AroundInfinity);
  return validate_triple(s0, s1, sinf);
}

}  // namespace belyi

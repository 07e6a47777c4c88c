#include "belyi/numfield.hpp"

#include <algorithm>

#include "belyi/errors.hpp"
#include "belyi/lattice.hpp"
#include "belyi/roots.hpp"

namespace belyi {

namespace {

// Restores den > 0 and gcd(content, den) = 1.
void normalize(FieldElement& a) {
  if (a.den == 0) throw InputError("field element: zero denominator");
  if (a.den < 0) {
    a.den = -a.den;
    for (auto& n : a.nums) n = -n;
  }
  mpz_class g = a.den;
  for (const auto& n : a.nums) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  if (g > 1) {
    mpz_divexact(a.den.get_mpz_t(), a.den.get_mpz_t(), g.get_mpz_t());
    for (auto& n : a.nums) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
  }
}

QPoly fe_to_qpoly(const FieldElement& a) {
  QPoly f;
  f.reserve(a.nums.size());
  for (const auto& n : a.nums) {
    mpq_class q(n, a.den);
    q.canonicalize();
    f.push_back(q);
  }
  qpoly_trim(f);
  return f;
}

}  // namespace

NumberField make_field(const ZPoly& f0) {
  ZPoly f = f0;
  zpoly_trim(f);
  const int d = zpoly_degree(f);
  if (d < 1) throw InputError("make_field: degree must be >= 1");
  if (f.back() != 1) throw InputError("make_field: defining polynomial must be monic");
  if (!zpoly_squarefree(f)) throw InputError("make_field: defining polynomial must be squarefree");
  return NumberField{std::move(f), d};
}

FieldElement fe_zero(const NumberField& K) {
  return FieldElement{std::vector<mpz_class>(static_cast<size_t>(K.degree), mpz_class(0)), 1};
}

FieldElement fe_one(const NumberField& K) {
  FieldElement a = fe_zero(K);
  a.nums[0] = 1;
  return a;
}

FieldElement fe_from_q(const NumberField& K, const mpq_class& q) {
  FieldElement a = fe_zero(K);
  a.nums[0] = q.get_num();
  a.den = q.get_den();
  normalize(a);
  return a;
}

FieldElement fe_from_coords(const NumberField& K, const std::vector<mpq_class>& coords) {
  if (static_cast<int>(coords.size()) > K.degree)
    throw InputError("fe_from_coords: too many coordinates");
  FieldElement a = fe_zero(K);
  a.den = 1;
  for (const auto& c : coords) mpz_lcm(a.den.get_mpz_t(), a.den.get_mpz_t(), c.get_den().get_mpz_t());
  for (size_t i = 0; i < coords.size(); ++i) {
    mpq_class scaled = coords[i] * a.den;
    a.nums[i] = scaled.get_num();
  }
  normalize(a);
  return a;
}

std::vector<mpq_class> fe_coords(const FieldElement& a) {
  std::vector<mpq_class> out;
  out.reserve(a.nums.size());
  for (const auto& n : a.nums) {
    mpq_class q(n, a.den);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

bool fe_is_zero(const FieldElement& a) {
  for (const auto& n : a.nums)
    if (n != 0) return false;
  return true;
}

bool fe_is_rational(const FieldElement& a) {
  for (size_t i = 1; i < a.nums.size(); ++i)
    if (a.nums[i] != 0) return false;
  return true;
}

mpq_class fe_to_q(const FieldElement& a) {
  if (!fe_is_rational(a)) throw InputError("fe_to_q: element is not rational");
  mpq_class q(a.nums.empty() ? mpz_class(0) : a.nums[0], a.den);
  q.canonicalize();
  return q;
}

bool fe_equal(const FieldElement& a, const FieldElement& b) {
  return a.den == b.den && a.nums == b.nums;  // both normalized
}

FieldElement fe_neg(const FieldElement& a) {
  FieldElement r = a;
  for (auto& n : r.nums) n = -n;
  return r;
}

FieldElement fe_add(const NumberField& K, const FieldElement& a, const FieldElement& b) {
  FieldElement r = fe_zero(K);
  r.den = a.den * b.den;
  for (size_t i = 0; i < r.nums.size(); ++i) r.nums[i] = a.nums[i] * b.den + b.nums[i] * a.den;
  normalize(r);
  return r;
}

FieldElement fe_sub(const NumberField& K, const FieldElement& a, const FieldElement& b) {
  return fe_add(K, a, fe_neg(b));
}

FieldElement fe_mul(const NumberField& K, const FieldElement& a, const FieldElement& b) {
  const size_t d = static_cast<size_t>(K.degree);
  std::vector<mpz_class> prod(2 * d - 1, mpz_class(0));
  for (size_t i = 0; i < d; ++i) {
    if (a.nums[i] == 0) continue;
    for (size_t j = 0; j < d; ++j)
      mpz_addmul(prod[i + j].get_mpz_t(), a.nums[i].get_mpz_t(), b.nums[j].get_mpz_t());
  }
  // Reduce modulo the monic defining polynomial: y^d = -sum f_i y^i.
  for (size_t k = prod.size(); k-- > d;) {
    if (prod[k] == 0) continue;
    for (size_t i = 0; i < d; ++i)
      mpz_submul(prod[k - d + i].get_mpz_t(), prod[k].get_mpz_t(), K.poly[i].get_mpz_t());
    prod[k] = 0;
  }
  FieldElement r = fe_zero(K);
  for (size_t i = 0; i < d; ++i) r.nums[i] = prod[i];
  r.den = a.den * b.den;
  normalize(r);
  return r;
}

FieldElement fe_inv(const NumberField& K, const FieldElement& a) {
  if (fe_is_zero(a)) throw InputError("fe_inv: division by zero");
  // Extended Euclid over Q tracking the a-multiplier: u*a + v*f = r.
  QPoly r0 = q_of_z(K.poly), r1 = fe_to_qpoly(a);
  QPoly t0, t1{mpq_class(1)};
  while (qpoly_degree(r1) > 0) {
    QPoly q;
    QPoly rem = qpoly_divrem(r0, r1, &q);
    r0 = std::move(r1);
    r1 = std::move(rem);
    QPoly tn = qpoly_sub(t0, qpoly_mul(q, t1));
    t0 = std::move(t1);
    t1 = std::move(tn);
  }
  if (qpoly_degree(r1) < 0)
    throw InputError("fe_inv: zero divisor (gcd with modulus is " +
                     std::to_string(qpoly_degree(r0)) + "-dimensional)");
  const mpq_class c = r1[0];
  std::vector<mpq_class> coords;
  coords.reserve(t1.size());
  for (const auto& t : t1) coords.push_back(t / c);
  return fe_from_coords(K, coords);
}

FieldElement fe_div(const NumberField& K, const FieldElement& a, const FieldElement& b) {
  return fe_mul(K, a, fe_inv(K, b));
}

Complex fe_eval(const FieldElement& a, const Complex& gen_value, mpfr_prec_t prec) {
  Complex acc(prec);
  Complex g = gen_value.round_to(prec);
  for (size_t i = a.nums.size(); i-- > 0;) {
    acc = acc * g;
    acc += Complex(Real(a.nums[i], prec));
  }
  return acc * Complex(Real(1L, prec) / Real(a.den, prec));
}

int fp_degree(const FieldPoly& f) {
  for (size_t i = f.size(); i-- > 0;)
    if (!fe_is_zero(f[i])) return static_cast<int>(i);
  return -1;
}

void fp_trim(FieldPoly& f) { f.resize(static_cast<size_t>(fp_degree(f) + 1)); }

FieldPoly fp_from_q(const NumberField& K, const QPoly& f) {
  FieldPoly r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(fe_from_q(K, c));
  fp_trim(r);
  return r;
}

FieldPoly fp_add(const NumberField& K, const FieldPoly& a, const FieldPoly& b) {
  FieldPoly r(std::max(a.size(), b.size()), fe_zero(K));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = fe_add(K, r[i], b[i]);
  fp_trim(r);
  return r;
}

FieldPoly fp_sub(const NumberField& K, const FieldPoly& a, const FieldPoly& b) {
  FieldPoly r(std::max(a.size(), b.size()), fe_zero(K));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = fe_sub(K, r[i], b[i]);
  fp_trim(r);
  return r;
}

FieldPoly fp_mul(const NumberField& K, const FieldPoly& a, const FieldPoly& b) {
  if (fp_degree(a) < 0 || fp_degree(b) < 0) return {};
  FieldPoly r(a.size() + b.size() - 1, fe_zero(K));
  for (size_t i = 0; i < a.size(); ++i) {
    if (fe_is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (fe_is_zero(b[j])) continue;
      r[i + j] = fe_add(K, r[i + j], fe_mul(K, a[i], b[j]));
    }
  }
  fp_trim(r);
  return r;
}

FieldPoly fp_scale(const NumberField& K, const FieldElement& c, const FieldPoly& a) {
  FieldPoly r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(fe_mul(K, c, x));
  fp_trim(r);
  return r;
}

FieldPoly fp_derivative(const FieldPoly& f) {
  FieldPoly r;
  for (size_t i = 1; i < f.size(); ++i) {
    FieldElement c = f[i];
    for (auto& n : c.nums) n *= static_cast<long>(i);
    r.push_back(c);
  }
  fp_trim(r);
  return r;
}

FieldPoly fp_divrem(const NumberField& K, const FieldPoly& num, const FieldPoly& den,
                    FieldPoly* quot) {
  FieldPoly r = num;
  fp_trim(r);
  FieldPoly d = den;
  fp_trim(d);
  const int dd = fp_degree(d);
  if (dd < 0) throw InputError("fp_divrem: division by zero polynomial");
  const FieldElement lead_inv = fe_inv(K, d[static_cast<size_t>(dd)]);
  FieldPoly q(fp_degree(r) >= dd ? static_cast<size_t>(fp_degree(r) - dd + 1) : 0, fe_zero(K));
  while (fp_degree(r) >= dd) {
    const int dr = fp_degree(r);
    FieldElement c = fe_mul(K, r[static_cast<size_t>(dr)], lead_inv);
    q[static_cast<size_t>(dr - dd)] = c;
    for (int k = 0; k <= dd; ++k)
      r[static_cast<size_t>(dr - dd + k)] =
          fe_sub(K, r[static_cast<size_t>(dr - dd + k)], fe_mul(K, c, d[static_cast<size_t>(k)]));
    r[static_cast<size_t>(dr)] = fe_zero(K);
    fp_trim(r);
  }
  if (quot) {
    fp_trim(q);
    *quot = std::move(q);
  }
  return r;
}

FieldPoly fp_gcd(const NumberField& K, const FieldPoly& a0, const FieldPoly& b0) {
  FieldPoly a = a0, b = b0;
  fp_trim(a);
  fp_trim(b);
  while (fp_degree(b) >= 0) {
    FieldPoly r = fp_divrem(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  const int d = fp_degree(a);
  if (d >= 0) a = fp_scale(K, fe_inv(K, a[static_cast<size_t>(d)]), a);
  return a;
}

bool fp_squarefree(const NumberField& K, const FieldPoly& f) {
  return fp_degree(fp_gcd(K, f, fp_derivative(f))) <= 0;
}

FieldElement fp_eval(const NumberField& K, const FieldPoly& f, const FieldElement& x) {
  FieldElement acc = fe_zero(K);
  for (size_t i = f.size(); i-- > 0;) acc = fe_add(K, fe_mul(K, acc, x), f[i]);
  return acc;
}

Complex fp_eval_c(const FieldPoly& f, const Complex& x, const Complex& gen_value,
                  mpfr_prec_t prec) {
  Complex acc(prec);
  Complex xx = x.round_to(prec);
  for (size_t i = f.size(); i-- > 0;) {
    acc = acc * xx;
    acc += fe_eval(f[i], gen_value, prec);
  }
  return acc;
}

std::optional<FieldElement> root_in_field(const QPoly& g, const NumberField& K,
                                          const Complex& gen_value, mpfr_prec_t prec) {
  QPoly gt = g;
  qpoly_trim(gt);
  if (qpoly_degree(gt) < 1) return std::nullopt;
  if (K.degree % qpoly_degree(gt) != 0)
    throw InputError("root_in_field: deg g = " + std::to_string(qpoly_degree(gt)) +
                     " does not divide the field degree " + std::to_string(K.degree));
  CPoly gc;
  gc.reserve(gt.size());
  for (const auto& c : gt) gc.push_back(Complex(Real(c, prec)));
  std::vector<Complex> roots = find_roots(gc, prec, 400);
  std::sort(roots.begin(), roots.end(), [](const Complex& p, const Complex& q) {
    if (p.re() < q.re()) return true;
    if (q.re() < p.re()) return false;
    return p.im() < q.im();
  });
  FieldPoly gK = fp_from_q(K, gt);
  bool near_miss = false;
  for (const auto& rho : roots) {
    auto mem = field_membership(rho, gen_value, K.degree, prec);
    if (!mem) continue;
    FieldElement cand = fe_from_coords(K, mem->coords);
    if (fe_is_zero(fp_eval(K, gK, cand))) return cand;
    // The lattice proposed coordinates that fail exactly: the working
    // precision cannot separate an honest root from a spurious relation.
    near_miss = true;
  }
  if (near_miss)
    throw RecognitionError("root_in_field: precision insufficient at " +
                           std::to_string(static_cast<long>(prec)) + " bits");
  return std::nullopt;
}

}  // namespace belyi

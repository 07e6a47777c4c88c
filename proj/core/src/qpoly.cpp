#include "belyi/qpoly.hpp"

#include <algorithm>

#include "belyi/errors.hpp"

namespace belyi {

int zpoly_degree(const ZPoly& f) {
  for (size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<int>(i);
  return -1;
}

void zpoly_trim(ZPoly& f) { f.resize(static_cast<size_t>(zpoly_degree(f) + 1)); }

ZPoly zpoly_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zpoly_trim(r);
  return r;
}

ZPoly zpoly_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zpoly_trim(r);
  return r;
}

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  if (zpoly_degree(a) < 0 || zpoly_degree(b) < 0) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  zpoly_trim(r);
  return r;
}

ZPoly zpoly_derivative(const ZPoly& f) {
  ZPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<long>(i));
  zpoly_trim(r);
  return r;
}

mpz_class zpoly_content(const ZPoly& f) {
  mpz_class c = 0;
  for (const auto& a : f) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
  return c;
}

ZPoly zpoly_primitive(const ZPoly& f) {
  mpz_class c = zpoly_content(f);
  if (c == 0) return {};
  ZPoly r = f;
  for (auto& a : r) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  zpoly_trim(r);
  return r;
}

bool zpoly_squarefree(const ZPoly& f) {
  QPoly g = qpoly_gcd(q_of_z(f), q_of_z(zpoly_derivative(f)));
  return qpoly_degree(g) <= 0;
}

Complex zpoly_eval(const ZPoly& f, const Complex& x, mpfr_prec_t prec) {
  Complex acc(prec);
  for (size_t i = f.size(); i-- > 0;) {
    acc = acc * x;
    acc += Complex(Real(f[i], prec));
  }
  return acc;
}

namespace {

// Determinant by fraction-free Gaussian elimination; entries stay integral
// (each intermediate is a minor of the input matrix).
mpz_class bareiss_det(std::vector<std::vector<mpz_class>>& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

}  // namespace

mpz_class zpoly_resultant(const ZPoly& f0, const ZPoly& g0) {
  ZPoly f = f0, g = g0;
  zpoly_trim(f);
  zpoly_trim(g);
  const int m = zpoly_degree(f), n = zpoly_degree(g);
  if (m < 0 || n < 0) return 0;
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  const size_t dim = static_cast<size_t>(m + n);
  std::vector<std::vector<mpz_class>> s(dim, std::vector<mpz_class>(dim, mpz_class(0)));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) s[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = f[static_cast<size_t>(m - k)];
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k)
      s[static_cast<size_t>(n + row)][static_cast<size_t>(row + k)] = g[static_cast<size_t>(n - k)];
  return bareiss_det(s);
}

mpz_class zpoly_discriminant(const ZPoly& f0) {
  ZPoly f = f0;
  zpoly_trim(f);
  const int n = zpoly_degree(f);
  if (n < 1) throw InputError("zpoly_discriminant: degree must be >= 1");
  mpz_class res = zpoly_resultant(f, zpoly_derivative(f));
  mpz_class d;
  mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), f[static_cast<size_t>(n)].get_mpz_t());
  if (((static_cast<long>(n) * (n - 1)) / 2) % 2 != 0) d = -d;
  return d;
}

int qpoly_degree(const QPoly& f) {
  for (size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<int>(i);
  return -1;
}

void qpoly_trim(QPoly& f) { f.resize(static_cast<size_t>(qpoly_degree(f) + 1)); }

QPoly qpoly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qpoly_trim(r);
  return r;
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qpoly_trim(r);
  return r;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (qpoly_degree(a) < 0 || qpoly_degree(b) < 0) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  qpoly_trim(r);
  return r;
}

QPoly qpoly_derivative(const QPoly& f) {
  QPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<long>(i));
  qpoly_trim(r);
  return r;
}

QPoly qpoly_divrem(const QPoly& num, const QPoly& den, QPoly* quot) {
  QPoly r = num;
  qpoly_trim(r);
  QPoly d = den;
  qpoly_trim(d);
  const int dd = qpoly_degree(d);
  if (dd < 0) throw InputError("qpoly_divrem: division by zero polynomial");
  QPoly q(qpoly_degree(r) >= dd ? static_cast<size_t>(qpoly_degree(r) - dd + 1) : 0,
          mpq_class(0));
  while (qpoly_degree(r) >= dd) {
    const int dr = qpoly_degree(r);
    mpq_class c = r[static_cast<size_t>(dr)] / d[static_cast<size_t>(dd)];
    q[static_cast<size_t>(dr - dd)] = c;
    for (int k = 0; k <= dd; ++k)
      r[static_cast<size_t>(dr - dd + k)] -= c * d[static_cast<size_t>(k)];
    r[static_cast<size_t>(dr)] = 0;  // kill rounding-free leading term exactly
    qpoly_trim(r);
  }
  if (quot) {
    qpoly_trim(q);
    *quot = std::move(q);
  }
  return r;
}

QPoly qpoly_gcd(const QPoly& a0, const QPoly& b0) {
  QPoly a = a0, b = b0;
  qpoly_trim(a);
  qpoly_trim(b);
  while (qpoly_degree(b) >= 0) {
    QPoly r = qpoly_divrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  const int d = qpoly_degree(a);
  if (d >= 0) {
    mpq_class lc = a[static_cast<size_t>(d)];
    for (auto& c : a) c /= lc;
  }
  return a;
}

Complex qpoly_eval(const QPoly& f, const Complex& x, mpfr_prec_t prec) {
  Complex acc(prec);
  for (size_t i = f.size(); i-- > 0;) {
    acc = acc * x;
    acc += Complex(Real(mpq_class(f[i]), prec));
  }
  return acc;
}

QPoly q_of_z(const ZPoly& f) {
  QPoly r;
  r.reserve(f.size());
  for (const auto& a : f) r.emplace_back(a);
  return r;
}

ZPoly z_clear_denominators(const QPoly& f, mpz_class& den) {
  den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly r;
  r.reserve(f.size());
  for (const auto& c : f) {
    mpq_class scaled = c * den;
    r.push_back(scaled.get_num());
  }
  return r;
}

}  // namespace belyi

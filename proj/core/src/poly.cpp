#include "belyi/poly.hpp"

namespace belyi {

int cpoly_degree(const CPoly& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (!p[k].is_zero()) return k;
  return -1;
}

CPoly cpoly_add(const CPoly& a, const CPoly& b, mpfr_prec_t prec) {
  CPoly r(std::max(a.size(), b.size()), Complex(prec));
  for (size_t k = 0; k < r.size(); ++k) {
    if (k < a.size()) r[k] += a[k];
    if (k < b.size()) r[k] += b[k];
  }
  return r;
}

CPoly cpoly_sub(const CPoly& a, const CPoly& b, mpfr_prec_t prec) {
  CPoly r(std::max(a.size(), b.size()), Complex(prec));
  for (size_t k = 0; k < r.size(); ++k) {
    if (k < a.size()) r[k] += a[k];
    if (k < b.size()) r[k] -= b[k];
  }
  return r;
}

CPoly cpoly_mul(const CPoly& a, const CPoly& b, mpfr_prec_t prec) {
  if (a.empty() || b.empty()) return {};
  CPoly r(a.size() + b.size() - 1, Complex(prec));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j].add_mul(a[i], b[j]);
  return r;
}

CPoly cpoly_pow(const CPoly& a, unsigned e, mpfr_prec_t prec) {
  CPoly r{Complex(1L, prec)};
  for (unsigned i = 0; i < e; ++i) r = cpoly_mul(r, a, prec);
  return r;
}

CPoly cpoly_scale(const CPoly& a, const Complex& c, mpfr_prec_t prec) {
  CPoly r(a.size(), Complex(prec));
  for (size_t k = 0; k < a.size(); ++k) {
    r[k] = a[k].round_to(prec);
    r[k] *= c;
  }
  return r;
}

CPoly cpoly_derivative(const CPoly& a, mpfr_prec_t prec) {
  if (a.size() <= 1) return {};
  CPoly r(a.size() - 1, Complex(prec));
  for (size_t k = 1; k < a.size(); ++k)
    r[k - 1] = a[k] * Real(static_cast<long>(k), prec);
  return r;
}

Complex cpoly_eval(const CPoly& p, const Complex& x, mpfr_prec_t prec) {
  Complex v(prec);
  for (size_t k = p.size(); k-- > 0;) {
    v *= x;
    v += p[k];
  }
  return v;
}

void cpoly_eval2(const CPoly& p, const Complex& x, mpfr_prec_t prec, Complex& value,
                 Complex& deriv) {
  value = Complex(prec);
  deriv = Complex(prec);
  for (size_t k = p.size(); k-- > 0;) {
    deriv *= x;
    deriv += value;
    value *= x;
    value += p[k];
  }
}

Real cpoly_inf_norm(const CPoly& p) {
  Real m(0L, p.empty() ? mpfr_prec_t(64) : p[0].prec());
  for (const Complex& c : p) m = max(m, abs(c));
  return m;
}

CPoly cpoly_from_roots(const std::vector<Complex>& roots, mpfr_prec_t prec) {
  CPoly r{Complex(1L, prec)};
  for (const Complex& root : roots) r = cpoly_mul(r, CPoly{-root, Complex(1L, prec)}, prec);
  return r;
}

}  // namespace belyi

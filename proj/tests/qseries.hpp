#pragma once

#include <gmpxx.h>

#include <vector>

// Exact truncated Laurent series in q, used as an independent oracle for
// hauptmodul / j-invariant identities. Deliberately separate from the
// library under test: plain mpq arithmetic, no shared code paths.
namespace qseries {

// sum_{k >= lo} c[k - lo] q^k, coefficients exact rationals, truncated at
// absolute order hi (inclusive). Operations track the truncation honestly:
// a product is only claimed up to the order both inputs support.
struct Series {
  long lo = 0;
  long hi = -1;
  std::vector<mpq_class> c;

  mpq_class coeff(long k) const {
    long i = k - lo;
    if (i < 0 || i >= static_cast<long>(c.size())) return mpq_class(0);
    return c[static_cast<size_t>(i)];
  }
};

Series make(long lo, long hi);
Series constant(const mpq_class& v, long hi);
Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
// Requires a nonzero leading coefficient; accurate to the same relative
// order as the input.
Series inverse(const Series& a);
// Multiplication by q^s (exact shift).
Series shift(const Series& a, long s);

// prod_{n >= 1} (1 - q^{scale n})^m through q^hi.
Series eta_product_pow(int m, int scale, long hi);

// t_N = (eta(z)/eta(Nz))^{24/(N-1)} = q^{-1} - k + O(q) for N in 2..5.
Series hauptmodul_t(int N, long hi);

// j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ...
Series j_invariant(long hi);

// Polynomial (ascending rational coefficients) evaluated at a series by
// Horner's rule.
Series poly_at(const std::vector<mpq_class>& p, const Series& x);

}  // namespace qseries

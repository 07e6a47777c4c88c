#pragma once

#include <vector>

#include "belyi/complex.hpp"

namespace belyi {

// Dense univariate polynomial over Complex, coefficients in ascending order
// of degree: p[k] is the coefficient of x^k. The empty vector is the zero
// polynomial. Trailing zero coefficients are allowed; degree() ignores them.
using CPoly = std::vector<Complex>;

int cpoly_degree(const CPoly& p);

// All arithmetic is carried out at the given working precision.
CPoly cpoly_add(const CPoly& a, const CPoly& b, mpfr_prec_t prec);
CPoly cpoly_sub(const CPoly& a, const CPoly& b, mpfr_prec_t prec);
CPoly cpoly_mul(const CPoly& a, const CPoly& b, mpfr_prec_t prec);
CPoly cpoly_pow(const CPoly& a, unsigned e, mpfr_prec_t prec);
CPoly cpoly_scale(const CPoly& a, const Complex& c, mpfr_prec_t prec);
CPoly cpoly_derivative(const CPoly& a, mpfr_prec_t prec);

// Horner evaluation.
Complex cpoly_eval(const CPoly& p, const Complex& x, mpfr_prec_t prec);
// Value and first derivative in one pass.
void cpoly_eval2(const CPoly& p, const Complex& x, mpfr_prec_t prec, Complex& value,
                 Complex& deriv);

// max_k |p[k]| (sup norm of the coefficient vector), 0 for the zero poly.
Real cpoly_inf_norm(const CPoly& p);

// Monic polynomial prod (x - r) from the given roots.
CPoly cpoly_from_roots(const std::vector<Complex>& roots, mpfr_prec_t prec);

}  // namespace belyi

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "belyi/complex.hpp"

namespace belyi {

// Exact polynomials, coefficients ascending (index = power of x). Leading
// zeros are tolerated everywhere; zpoly_trim normalizes.
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

int zpoly_degree(const ZPoly& f);  // -1 for the zero polynomial
void zpoly_trim(ZPoly& f);
ZPoly zpoly_add(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_sub(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_derivative(const ZPoly& f);
mpz_class zpoly_content(const ZPoly& f);  // >= 0; 0 only for the zero poly
ZPoly zpoly_primitive(const ZPoly& f);    // f / content, sign preserved
bool zpoly_squarefree(const ZPoly& f);
Complex zpoly_eval(const ZPoly& f, const Complex& x, mpfr_prec_t prec);

// Resultant of f and g as the Sylvester determinant, evaluated exactly by
// fraction-free (Bareiss) elimination.
mpz_class zpoly_resultant(const ZPoly& f, const ZPoly& g);

// (-1)^(n(n-1)/2) * Res(f, f') / lc(f), n = deg f. Throws InputError for
// degree < 1.
mpz_class zpoly_discriminant(const ZPoly& f);

int qpoly_degree(const QPoly& f);
void qpoly_trim(QPoly& f);
QPoly qpoly_add(const QPoly& a, const QPoly& b);
QPoly qpoly_sub(const QPoly& a, const QPoly& b);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_derivative(const QPoly& f);
// Division with remainder; quotient stored in *quot when non-null.
QPoly qpoly_divrem(const QPoly& num, const QPoly& den, QPoly* quot = nullptr);
QPoly qpoly_gcd(const QPoly& a, const QPoly& b);  // monic (or zero)
Complex qpoly_eval(const QPoly& f, const Complex& x, mpfr_prec_t prec);

QPoly q_of_z(const ZPoly& f);
// Multiplies through by the lcm of denominators (returned in den, > 0).
ZPoly z_clear_denominators(const QPoly& f, mpz_class& den);

}  // namespace belyi

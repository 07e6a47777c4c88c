#pragma once

#include <optional>

#include "belyi/qpoly.hpp"

namespace belyi {

// Q[y]/(poly) for a monic squarefree integer polynomial. Squarefree (rather
// than irreducible) is the verified precondition: arithmetic below is valid
// in the quotient ring, and inversion reports explicitly when it hits a
// zero divisor of a reducible modulus.
struct NumberField {
  ZPoly poly;
  int degree = 0;
};

NumberField make_field(const ZPoly& f);

// Element sum_i (nums[i]/den) y^i with den > 0 and gcd(content, den) = 1.
struct FieldElement {
  std::vector<mpz_class> nums;
  mpz_class den = 1;
};

FieldElement fe_zero(const NumberField& K);
FieldElement fe_one(const NumberField& K);
FieldElement fe_from_q(const NumberField& K, const mpq_class& q);
FieldElement fe_from_coords(const NumberField& K, const std::vector<mpq_class>& coords);
std::vector<mpq_class> fe_coords(const FieldElement& a);
bool fe_is_zero(const FieldElement& a);
bool fe_is_rational(const FieldElement& a);
mpq_class fe_to_q(const FieldElement& a);  // throws unless fe_is_rational
bool fe_equal(const FieldElement& a, const FieldElement& b);

FieldElement fe_neg(const FieldElement& a);
FieldElement fe_add(const NumberField& K, const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const NumberField& K, const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const NumberField& K, const FieldElement& a, const FieldElement& b);
// Throws InputError on zero or on a zero divisor (reducible modulus).
FieldElement fe_inv(const NumberField& K, const FieldElement& a);
FieldElement fe_div(const NumberField& K, const FieldElement& a, const FieldElement& b);

// Numerical value under the embedding sending y to gen_value.
Complex fe_eval(const FieldElement& a, const Complex& gen_value, mpfr_prec_t prec);

// Polynomials over the field, coefficients ascending.
using FieldPoly = std::vector<FieldElement>;

int fp_degree(const FieldPoly& f);
void fp_trim(FieldPoly& f);
FieldPoly fp_from_q(const NumberField& K, const QPoly& f);
FieldPoly fp_add(const NumberField& K, const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_sub(const NumberField& K, const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_mul(const NumberField& K, const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_scale(const NumberField& K, const FieldElement& c, const FieldPoly& a);
FieldPoly fp_derivative(const FieldPoly& f);
FieldPoly fp_divrem(const NumberField& K, const FieldPoly& num, const FieldPoly& den,
                    FieldPoly* quot = nullptr);
FieldPoly fp_gcd(const NumberField& K, const FieldPoly& a, const FieldPoly& b);  // monic
bool fp_squarefree(const NumberField& K, const FieldPoly& f);
FieldElement fp_eval(const NumberField& K, const FieldPoly& f, const FieldElement& x);
Complex fp_eval_c(const FieldPoly& f, const Complex& x, const Complex& gen_value,
                  mpfr_prec_t prec);

// Picks the root of g (numerically located, canonically ordered by real
// then imaginary part) that lies in K under the embedding y -> gen_value,
// verified exactly by g(candidate) = 0 in K. nullopt when no root of g
// belongs to the field at this precision.
std::optional<FieldElement> root_in_field(const QPoly& g, const NumberField& K,
                                          const Complex& gen_value, mpfr_prec_t prec);

}  // namespace belyi

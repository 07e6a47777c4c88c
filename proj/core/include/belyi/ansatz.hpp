#pragma once

#include "belyi/linalg.hpp"
#include "belyi/poly.hpp"
#include "belyi/triple.hpp"

namespace belyi {

enum class FactorRole { Order3Simple, Order3Cubed, Order2Simple, Order2Squared, Cusp };
std::string to_string(FactorRole r);

// One monic factor of p3, p2 or pc: `degree` unknown coefficients (x^0 ..
// x^{degree-1}), raised to `multiplicity` inside its product. For cusp
// factors the multiplicity is the cusp width.
struct FactorSpec {
  FactorRole role;
  int degree;
  int multiplicity;
  std::string symbol;  // coefficient family prefix, e.g. "a" -> a0, a1, ...
};

// Gauge data. Hauptmodul gauge (principal cusp width 1): the hauptmodul is
// q^{-1} + 0 + O(q) and matching against j = q^{-1} + 744 + 196884 q + ...
// pins the linear equation sum(weight * unknown) = 744. Affine gauge (width
// h > 1): the translation freedom is fixed by forcing one subleading
// coefficient to 0. The residual scale freedom is the finite group of h-th
// roots of unity (x -> lambda*x with lambda^h = 1 preserves the monic
// system), so no second coefficient can be pinned; solutions are grouped up
// to these twists downstream.
struct NormalizationSpec {
  enum class Kind { Hauptmodul, Affine };
  Kind kind = Kind::Hauptmodul;
  std::vector<std::pair<long, int>> linear;  // (weight, flat unknown index)
  long rhs = 744;
  std::vector<int> gauge_fixed;  // flat indices pinned to 0 (affine gauge)
};

struct BelyiAnsatz {
  int n = 0;
  int principal_width = 1;
  std::vector<FactorSpec> factors;  // p3 factors, then p2, then cusps by width
  std::vector<int> offsets;         // flat index of x^0 coefficient per factor
  int unknowns = 0;                 // U = sum of factor degrees
  NormalizationSpec normalization;

  int equations() const {
    return normalization.kind == NormalizationSpec::Kind::Hauptmodul ? n + 1 : n;
  }
  // "a91" for flat index (offset of the a-factor) + 91.
  std::string symbol_of(int flat) const;
  // Inverse of symbol_of; throws InputError on unknown symbols.
  int index_of(const std::string& symbol) const;
  bool is_gauge_fixed(int flat) const;
  // Coweight of an unknown: factor degree minus coefficient position. Under
  // x -> lambda x the coefficient scales by lambda^{-coweight}.
  int coweight(int flat) const;
};

// Derives the factor structure from a genus-zero profile. Throws InputError
// when genus != 0.
BelyiAnsatz build_ansatz(const SubgroupProfile& p);

// Renders e.g. "3*a91 - 1*b1 - 7*c38 = 744" (hauptmodul) or
// "gauge a1 = 0" (affine).
std::string normalization_string(const BelyiAnsatz& a);

// Monic factor polynomials and their products at the given precision.
struct AssembledMap {
  std::vector<CPoly> factor_polys;
  CPoly p3, p2, pc;
};
AssembledMap assemble(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                      mpfr_prec_t prec);

// Coefficients of p3 - p2 - 1728*pc for x^0..x^{n-1} (the x^n term cancels
// because p3 and p2 are monic of degree n), followed by the normalization
// residual in hauptmodul gauge. Length = equations().
std::vector<Complex> residual(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                              mpfr_prec_t prec);

// equations() x U matrix of partial derivatives; the column of coefficient
// f_k of factor F with multiplicity m is m * F^{m-1} * G * x^k (G = product
// of the other factors in the same product), signed +1 / -1 / -1728 for
// p3 / p2 / pc membership. Gauge-fixed columns are included.
CMatrix jacobian(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                 mpfr_prec_t prec);

// max(|p3|_inf, |p2|_inf, 1728*|pc|_inf, 744): reference scale for relative
// residual norms.
Real system_scale(const AssembledMap& m, mpfr_prec_t prec);

}  // namespace belyi

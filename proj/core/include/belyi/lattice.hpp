#pragma once

#include <optional>

#include "belyi/qpoly.hpp"

namespace belyi {

// Row-major integer matrix; rows are lattice basis vectors.
using ZMat = std::vector<std::vector<mpz_class>>;

struct LLLResult {
  ZMat basis;
  ZMat transform;  // unimodular U with basis = U * input
};

// LLL reduction with parameter delta (default 99/100). A floating-point
// pre-pass (exact integer row operations steered by an MPFR Gram-Schmidt at
// entry-size + guard precision) does the bulk of the work; an exact
// integer-arithmetic pass then verifies and repairs every size-reduction
// and Lovász condition, so the result is unconditionally delta-reduced.
LLLResult lll_reduce(const ZMat& basis, const mpq_class& delta = mpq_class(99, 100));

// Exact rational Gram-Schmidt check of the LLL conditions.
bool lll_check_reduced(const ZMat& basis, const mpq_class& delta = mpq_class(99, 100));

// Small integer relation sum c_i v_i ~ 0 via a lattice with two columns
// carrying Re and Im scaled by 2^(prec-16). Accepts only when the residual
// re-evaluated at full precision clears the 2^(-prec/2) margin; the
// certified_bits output is -log2 of that relative residual.
std::optional<std::vector<mpz_class>> integer_relation(const std::vector<Complex>& vals,
                                                       mpfr_prec_t prec,
                                                       long* certified_bits = nullptr,
                                                       const mpq_class& delta = mpq_class(99, 100));

struct AlgdepResult {
  ZPoly poly;  // primitive, positive leading coefficient, squarefree
  long certified_bits;
};

// Minimal polynomial candidate for alpha by increasing-degree probing:
// the first degree admitting a margin-passing relation is returned, so a
// successful result is the minimal (hence irreducible) polynomial whenever
// the margin holds honestly.
std::optional<AlgdepResult> algdep(const Complex& alpha, int max_degree, mpfr_prec_t prec,
                                   const mpq_class& delta = mpq_class(99, 100));

struct FieldMembership {
  std::vector<mpq_class> coords;  // beta = sum coords[i] * alpha^i
  long certified_bits;
};

// Expresses beta in the power basis 1, alpha, ..., alpha^(field_degree-1).
std::optional<FieldMembership> field_membership(const Complex& beta, const Complex& alpha,
                                                int field_degree, mpfr_prec_t prec,
                                                const mpq_class& delta = mpq_class(99, 100));

}  // namespace belyi

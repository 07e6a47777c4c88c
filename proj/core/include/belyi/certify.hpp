#pragma once

#include <array>

#include "belyi/numfield.hpp"
#include "belyi/solve.hpp"

namespace belyi {

struct CertifyOptions {
  int max_field_degree = 24;        // per-coefficient algdep probing cap
  mpfr_prec_t recognition_bits = 0; // 0: use the solution's precision
  mpq_class lll_delta = mpq_class(99, 100);
};

// Exact Belyi map over a number field, with the declared factor structure
// and the certificate of every verification predicate.
struct CertifiedBelyiMap {
  BelyiAnsatz ansatz;
  NumberField field;
  Complex embedding;                // numeric value of the field generator
  std::vector<FieldPoly> factors;   // monic, aligned with ansatz.factors
  FieldPoly p3, p2, pc;
  int twist = 0;                    // gauge twist applied before recognition
  std::vector<std::pair<std::string, std::string>> certificate;
};

// Recognition + exact verification. Scans the finite gauge twists, proposes
// the field from the coefficient of largest apparent algebraic degree
// (picking the twist that minimizes that degree), expresses every
// coefficient in the field, then verifies exactly: the defining identity
// p3 - p2 - 1728*pc = 0, the normalization equation, factor squarefreeness
// and pairwise disjointness, product gcds, and numeric full rank of the
// Jacobian at twice the recognition precision. Throws RecognitionError /
// VerificationError with the offending coefficient or predicate named.
CertifiedBelyiMap certify_map(const BelyiAnsatz& a, const NumericSolution& sol,
                              const CertifyOptions& opt = {});

// Re-runs every exact predicate on a (possibly deserialized) map; throws
// VerificationError naming the first failing predicate. Returns the
// refreshed certificate. Self-contained: no numeric solution needed.
std::vector<std::pair<std::string, std::string>> verify_map(const CertifiedBelyiMap& m);

// Moebius transform with field-element entries, acting on coefficients.
struct Moebius {
  FieldElement a, b, c, d;  // x -> (a x + b) / (c x + d)
};

// Applies w to each coefficient; throws InputError naming the coefficient
// index if one hits the pole of w.
FieldPoly moebius_coeff_action(const NumberField& K, const FieldPoly& p, const Moebius& w);

// Descent mechanics: given polynomials over L and the image rho in L of the
// generator of a subfield K (verified here via f_K(rho) = 0 exactly),
// checks every coefficient lies in Q(rho) by exact linear algebra and then
// solves k3*p3t + k2*p2t + kc*pct = 0 for a nonzero scalar triple over K.
// Returns nullopt when coefficients leave the subfield or the nullspace is
// trivial.
std::optional<std::array<FieldElement, 3>> descent_check(const NumberField& L,
                                                         const FieldPoly& p3t,
                                                         const FieldPoly& p2t,
                                                         const FieldPoly& pct,
                                                         const NumberField& K,
                                                         const FieldElement& rho);

}  // namespace belyi

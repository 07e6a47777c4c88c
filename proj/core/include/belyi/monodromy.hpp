#pragma once

#include "belyi/certify.hpp"

namespace belyi {

// Numeric model of the map Phi = p3/pc: monic p3 of degree n, monic pc of
// degree n - principal_width.
struct NumericMap {
  CPoly p3, pc;
  int n = 0;
};

NumericMap numeric_map(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                       mpfr_prec_t prec);
NumericMap numeric_map(const CertifiedBelyiMap& m, mpfr_prec_t prec);

// Labeled fiber over a non-critical base value.
struct FiberState {
  Complex y0;
  std::vector<Complex> roots;      // labels are the positions 0..n-1
  mpfr_prec_t precision_bits = 0;
  Real separation;                 // min pairwise root distance
};

// Roots of p3 - y0*pc, required pairwise separated by more than
// 2^{-P/4} * (1 + max|root|). Throws SolveError("clustered roots: ...")
// when y0 sits too close to a critical value; the caller moves y0.
FiberState fiber_at(const NumericMap& m, const Complex& y0, mpfr_prec_t prec);

enum class Loop { AroundZero, Around1728, AroundInfinity };

// Predictor-corrector continuation of the whole fiber along the based
// loop. Returns sigma with sigma(i) = j when the root starting at label i
// ends at label j. Loop geometry (base point -R on the real axis):
//   around 0:     the circle |y| = R, counterclockwise;
//   around 1728:  upper-half arc to +R, counterclockwise circle centered
//                 at 1728 through +R, arc back;
//   around inf:   segment to -6912, the circle |y| = 6912 traversed
//                 negatively (clockwise), segment back.
// With these based loops sigma_inf = inverse(compose(sigma_0, sigma_1)).
Permutation track_loop(const NumericMap& m, const FiberState& fs, Loop loop);

struct MonodromyOptions {
  mpfr_prec_t prec = 256;
  int max_degree = 64;       // guard against accidental full-scale runs
  double base_re = -1000.0;  // base point y0 on the negative real axis
};

// sigma1 from the loop around 0, sigma0 from the loop around 1728,
// sigmainf from the loop around infinity; validated as a triple (orders,
// product relation, transitivity).
PermutationTriple monodromy_triple(const NumericMap& m, const MonodromyOptions& opt = {});

}  // namespace belyi

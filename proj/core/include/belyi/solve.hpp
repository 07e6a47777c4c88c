#pragma once

#include "belyi/ansatz.hpp"

namespace belyi {

struct SolveOptions {
  mpfr_prec_t start_bits = 128;   // multistart / first-ladder precision
  mpfr_prec_t target_bits = 256;  // final precision (ladder doubles up to this)
  int max_iter = 80;              // Newton iterations per precision level
  int line_search_max = 40;       // damping floor 2^-line_search_max
  double accept_exp = 0.9;        // accept when rel. residual < 2^(-0.9*bits)
  double escalate_exp = 0.4;      // double precision when < 2^(-0.4*bits)

  long budget = 1000;             // multistart attempts
  unsigned long seed = 1;
  int threads = 1;
  int radius_log2_max = 15;       // root magnitudes up to 2^radius_log2_max
  long dedup_bits = 20;           // same-class tolerance 2^-dedup_bits
  int genericity_guard_degree = 64;  // skip root-based filter above this n
};

struct NumericSolution {
  std::vector<Complex> coeffs;    // all U coefficients (gauge entries exact 0)
  mpfr_prec_t precision_bits = 0;
  Real residual_norm;             // sup-norm relative to system_scale
  int jacobian_rank = -1;         // -1 when not estimated (very large systems)
};

struct LinearSolveResult {
  std::vector<Complex> x;
  long cond_log2;  // crude condition estimate: log2(max/min QR or LU pivot)
};

// A x = b: pivoted LU for square systems, Householder least squares for
// overdetermined ones.
LinearSolveResult linear_solve(const CMatrix& A, const std::vector<Complex>& b,
                               mpfr_prec_t prec);

// Damped Newton with residual-decrease line search and a precision ladder:
// working precision doubles once the relative residual is below
// 2^(-escalate_exp * bits), until target_bits. Gauge-fixed coordinates stay
// pinned at 0. Throws SolveError on divergence or exhausted budget.
NumericSolution newton_refine(const BelyiAnsatz& a, const std::vector<Complex>& x0,
                              const SolveOptions& opt);

// Random starts (roots drawn per factor with log-uniform magnitudes inside a
// shared scale window of width u, u uniform in [1, radius_log2_max], then
// multiplied out to monic factors; per-start generator seeded by
// (seed, start index)) refined at start_bits; survivors are deduplicated up
// to the finite gauge twists, filtered for genericity (all factors
// squarefree, factor root sets pairwise disjoint at working precision), then
// escalated to target_bits. Deterministic for fixed (seed, budget) at any
// thread count. Canonical order: residual, then lexicographic coefficients.
std::vector<NumericSolution> multistart_search(const BelyiAnsatz& a,
                                               const SolveOptions& opt);

// Coefficient vector of the same map in the gauge twisted by the k-th h-th
// root of unity (h = principal width): c -> c * omega^(-k * coweight).
std::vector<Complex> apply_twist(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                                 int k, mpfr_prec_t prec);

// True when the two coefficient vectors agree (relative sup norm below
// 2^-dedup_bits) after aligning by some gauge twist.
bool same_solution_class(const BelyiAnsatz& a, const std::vector<Complex>& x,
                         const std::vector<Complex>& y, long dedup_bits);

// QR-based numeric rank of the free-column Jacobian at the given point
// (singular values below 2^(-prec/2) of the largest count as zero).
int jacobian_rank_estimate(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                           mpfr_prec_t prec);

// Sup norm of residual(a, coeffs) divided by system_scale.
Real relative_residual(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                       mpfr_prec_t prec);

}  // namespace belyi

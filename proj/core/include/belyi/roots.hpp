#pragma once

#include <vector>

#include "belyi/poly.hpp"

namespace belyi {

// Finds all complex roots of p simultaneously (Aberth-Ehrlich iteration with
// Newton-polygon initial points). Intended for polynomials with simple
// roots; convergence is declared when every correction is below
// 2^-(prec-12) relative to the root magnitude. Deterministic: no random
// state, fixed angular offsets. Throws SolveError if the iteration does not
// settle within max_iter sweeps.
std::vector<Complex> find_roots(const CPoly& p, mpfr_prec_t prec, int max_iter = 500);

// One vector Newton step for each z[i] on p; used to re-polish tracked roots
// after a path step. Returns max |step| / (1 + |z|) over the cluster.
Real newton_polish(const CPoly& p, std::vector<Complex>& z, mpfr_prec_t prec,
                   int iterations);

}  // namespace belyi

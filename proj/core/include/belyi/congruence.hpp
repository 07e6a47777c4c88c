#pragma once

#include "belyi/triple.hpp"

namespace belyi {

// Hsu's congruence criterion on the permutation images of the two standard
// parabolic generators: L is the image of the width-recording parabolic
// (sinf here), R the conjugate parabolic s0 * L^{-1} * s0, and the level is
// N = order(L). The relation table has three branches (N odd, N a power of
// two, general N = 2^k * m); each relation is a word that must evaluate to
// the identity. Returns Undecided only when the level is too large to run
// the word arithmetic (never a wrong verdict).
CongruenceVerdict hsu_congruence_test(const PermutationTriple& t);

}  // namespace belyi

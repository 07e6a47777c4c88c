#pragma once

#include "belyi/perm.hpp"

namespace belyi {

// (s0, s1, sinf) with s0^2 = s1^3 = id, s0*s1*sinf = id and <s0,s1>
// transitive: the combinatorial datum of a genus-anything dessin / modular
// subgroup of index n.
struct PermutationTriple {
  int n = 0;
  Permutation s0, s1, sinf;
};

enum class CongruenceVerdict { Undecided, Congruence, Noncongruence };
std::string to_string(CongruenceVerdict v);

// Subgroup invariants derived from a triple (or from bare cycle types).
struct SubgroupProfile {
  int index = 0;
  int e2 = 0;                // fixed points of s0 (elliptic points of order 2)
  int e3 = 0;                // fixed points of s1 (order 3)
  CycleType s0_type, s1_type;
  CycleType cusp_widths;     // cycle lengths of sinf, sorted with counts
  int num_cusps = 0;
  long level = 0;            // lcm of cusp widths
  int genus = 0;
  int principal_width = 0;   // smallest cusp width
  // Smallest point (1-based) on a smallest-width cycle of sinf; 0 when the
  // profile was built from cycle types only.
  int principal_label = 0;
  CongruenceVerdict congruence = CongruenceVerdict::Undecided;
};

// Builds sinf = (s0*s1)^{-1}, validates the order, degree and transitivity
// conditions. Error messages name the violated condition.
PermutationTriple validate_triple(const Permutation& s0, const Permutation& s1);
// As above but checks a supplied sinf against (s0*s1)^{-1}.
PermutationTriple validate_triple(const Permutation& s0, const Permutation& s1,
                                  const Permutation& sinf);

// Index, elliptic counts, cusps, level and genus (exact rational
// Riemann-Hurwitz; a non-integer or negative genus throws InputError).
// The congruence field is left Undecided.
SubgroupProfile profile(const PermutationTriple& t);

// Profile from cycle types alone (no permutations): enough for the ansatz.
// Validates part sizes (s0 parts in {1,2}, s1 parts in {1,3}, equal degree).
SubgroupProfile profile_from_cycle_types(const CycleType& s0t, const CycleType& s1t,
                                         const CycleType& sinft);

// Coset action of the modular group on P^1(Z/N): the triple of Gamma0(N).
// sigma0 is the action of S, sigma1 of ST; sinf has cycle lengths equal to
// the cusp widths. Test oracle for everything downstream.
PermutationTriple gamma0_triple(int N);

}  // namespace belyi

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace belyi {

// Permutation of {1..n}. Stored 0-based internally; construction and
// serialization use 1-based images (images[i] = image of point i+1).
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  // images0[i] = image of point i, 0-based. Throws InputError unless a
  // bijection.
  static Permutation from_images0(std::vector<int> images0);
  static Permutation from_images1(const std::vector<int>& images1);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }  // 0-based application
  bool is_identity() const;
  std::vector<int> images1() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.img_ == b.img_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.img_ < b.img_;
  }

 private:
  std::vector<int> img_;
};

// Applies q first, then p. This order is fixed project-wide: all triple
// relations (s0*s1*sinf = id, sinf = inverse(compose(s0, s1))) assume it.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
// p^e for any integer e (negative exponents via the inverse).
Permutation perm_power(const Permutation& p, long e);
// Order of the cyclic group <p> (lcm of cycle lengths).
long perm_order(const Permutation& p);

// Cycles in canonical form: each cycle starts at its smallest point,
// cycles sorted by that point. 0-based points.
std::vector<std::vector<int>> cycles(const Permutation& p);

// Multiset of cycle lengths as sorted (length, count) pairs.
using CycleType = std::vector<std::pair<int, int>>;
CycleType cycle_type(const Permutation& p);
// Renders e.g. "1^3 7^39"; "1^5" for the identity on 5 points.
std::string cycle_type_string(const CycleType& t);
// Parses the format produced by cycle_type_string ("2" is read as "2^1").
CycleType parse_cycle_type(const std::string& s);
int cycle_type_degree(const CycleType& t);

// True iff the group generated by gens acts transitively on {1..n}.
bool is_transitive(const std::vector<Permutation>& gens, int n);

// Exact order of <gens> via a stabilizer chain built with deterministic
// point ordering (base points chosen as the smallest moved point).
mpz_class group_order(const std::vector<Permutation>& gens);

// Searches for pi with pi * a[i] * pi^{-1} = b[i] for all i (simultaneous
// conjugation), by backtracking on point images pruned by per-generator
// cycle lengths. Returns nullopt when no conjugator exists. Throws
// TimeoutError when the search exceeds time_limit_seconds (a resource
// failure, distinct from a proven negative).
std::optional<Permutation> simultaneously_conjugate(const std::vector<Permutation>& a,
                                                    const std::vector<Permutation>& b,
                                                    double time_limit_seconds = 60.0);

}  // namespace belyi

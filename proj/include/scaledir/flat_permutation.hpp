#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scaledir/errors.hpp"

namespace scaledir::flat {

// Residue-class-wise shift permutation of Z: on residue r mod m the map adds
// a shift c_r (landing in residue (r + c_r) mod m), except on a finite table
// of explicitly overridden points.  Bijectivity demands that the residue
// targets permute the residues and that the exception values are exactly the
// rule images of the exception keys; both are enforced at construction.
//
// Normal form: minimal modulus (rules folded onto the smallest compatible
// divisor) and minimal exception table (entries agreeing with the rules are
// dropped), so equal permutations compare equal structurally.
class ShiftPermutation {
 public:
  ShiftPermutation(long modulus, std::vector<long> shifts,
                   std::map<long, long> exceptions = {});

  static ShiftPermutation identity();

  long modulus() const { return modulus_; }
  const std::vector<long>& shifts() const { return shifts_; }
  const std::map<long, long>& exceptions() const { return exceptions_; }

  long apply(long j) const;
  ShiftPermutation inverse() const;
  // Composition (*this) after other.
  ShiftPermutation compose(const ShiftPermutation& other) const;

  bool operator==(const ShiftPermutation& o) const = default;

  std::string str() const;

 private:
  void validate_and_normalize();

  long modulus_;
  std::vector<long> shifts_;          // indexed by residue
  std::map<long, long> exceptions_;  // explicit overrides
};

// Grammar: "mod m: r -> +c @t, ... [; except j -> v, ...]" where each
// residue r in 0..m-1 appears exactly once and t = (r + c) mod m.
ShiftPermutation parse_shift_permutation(std::string_view text);

// Forward-backward closure of j, cut off at cap elements.
struct OrbitResult {
  bool finite = false;
  std::set<long> points;  // the orbit, or the partial closure when !finite
  long cap = 0;
};
OrbitResult orbit(const ShiftPermutation& sigma, long j, long cap);

// Exact finiteness decision.  Rule cycles with zero total shift confine
// every orbit to a bounded set; a cycle with nonzero total shift carries
// infinite orbits regardless of the finite exception table (far enough
// points never meet it).  Orbits through the exception window are traced
// explicitly and reported.
struct OrbitFiniteness {
  bool all_finite = false;
  std::optional<long> infinite_witness_residue;
  // Residue-cycle summary: members and total shift per cycle.
  struct Cycle {
    std::vector<long> residues;
    long total_shift = 0;
  };
  std::vector<Cycle> cycles;
  // Orbits meeting the exception table: start point and verdict.
  struct TracedOrbit {
    long start = 0;
    bool finite = false;
    std::size_t size = 0;  // meaningful when finite
  };
  std::vector<TracedOrbit> exceptional_orbits;
};
OrbitFiniteness orbit_finiteness(const ShiftPermutation& sigma);

// U_A = {x in F^Z : j in A => x_j = 1}; sigma-tidiness of the pattern
// subgroup reduces to sigma(A) = A.
using PatternSubgroup = std::set<long>;
bool pattern_tidy(const ShiftPermutation& sigma, const PatternSubgroup& a);

// Group-orbit partition of a window under all generators and inverses, each
// orbit's BFS cut off at cap elements.
struct JointOrbit {
  std::set<long> points;
  bool exceeded_cap = false;
};
std::vector<JointOrbit> joint_finite_orbits(const std::vector<ShiftPermutation>& generators,
                                            long window_lo, long window_hi, long cap);

}  // namespace scaledir::flat

#pragma once

#include <vector>

#include "scaledir/lattice.hpp"
#include "scaledir/scale.hpp"

namespace scaledir {

// Invertible linear map as an automorphism of (K^m, +).  Acts on basis
// lattices by basis multiplication, and on monomial lattices when diagonal
// (a unit times a uniformizer power scales each coordinate's exponent set by
// the entry's valuation; exceptional exponents additionally need the entry
// to be a monomial, since a non-monomial unit smears a single F-line).
class LinearAutomorphism {
 public:
  explicit LinearAutomorphism(MatrixK matrix);

  long scale_exponent() const { return scale_; }
  LinearAutomorphism inverse() const;
  const MatrixK& matrix() const { return matrix_; }

  BasisLattice apply(const BasisLattice& v) const;
  MonomialLattice apply(const MonomialLattice& v) const;

 private:
  MatrixK matrix_;
  long scale_;
};

// One guarded shift of the monomial index set {0..m-1} x Z:
// (coord_in, k) |-> (coord_out, k + shift) whenever k satisfies the guard.
// The guard is a one-sided comparison (or equality) with an optional
// congruence condition.
struct ShiftRule {
  enum class Guard { ge, le, eq };

  int coord_in = 0;
  int coord_out = 0;
  Guard guard = Guard::ge;
  long bound = 0;
  long modulus = 1;  // congruence filter k == residue (mod modulus); 1 = none
  long residue = 0;
  long shift = 0;

  bool matches(int coord, long k) const;
};

// Additive automorphism of K^m that permutes the monomial basis through a
// finite list of guarded shift rules.  The rules must partition every index
// (coord, k) and the induced index map must be a bijection; both are checked
// on a window at construction.
//
// The scale exponent is pinned exactly from the module identity
// s(a)/s(a^-1) = Delta(a):  with U = O^m and a(U) >= U, the index
// [a(U) : a(U) n U] = Delta-exponent is simultaneously an upper bound
// (attained value) and a lower bound (s(a) >= Delta(a) since s(a^-1) >= 1)
// for the scale, and a(U) <= U forces scale exponent 0 the same way.
class MonomialAutomorphism {
 public:
  MonomialAutomorphism(const FieldContext& ctx, int coords, std::vector<ShiftRule> rules);

  const FieldContext& context() const { return ctx_; }
  int coords() const { return coords_; }
  const std::vector<ShiftRule>& rules() const { return rules_; }

  long scale_exponent() const { return scale_; }
  MonomialAutomorphism inverse() const;

  // Image of a monomial index under the rule list.
  std::pair<int, long> map_index(int coord, long k) const;

  MonomialLattice apply(const MonomialLattice& v) const;
  // Coordinate-wise image of a finite-support element tuple.
  std::vector<FieldElement> apply(const std::vector<FieldElement>& z) const;

 private:
  void check_window_bijection() const;
  long pin_scale() const;

  FieldContext ctx_;
  int coords_;
  std::vector<ShiftRule> rules_;
  long scale_;
};

}  // namespace scaledir

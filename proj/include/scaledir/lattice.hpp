#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scaledir/matrix.hpp"

namespace scaledir {

// A set of exponents of the form E u [t, inf) with E finite and below t.
// Canonical form keeps t minimal, so equal sets compare equal structurally.
// Such a set describes the F-span of {X^k : k in S} inside one coordinate of
// K^m (a compact open subgroup of (K, +) when read that way).
class ExponentSet {
 public:
  // [t, inf)
  static ExponentSet tail(long t);
  // (plus u [t, inf)) \ minus; members of `minus` must be >= t, members of
  // `plus` must be < t.  Anything expressible as finite-exceptions-plus-tail
  // can be written this way.
  static ExponentSet make(long t, const std::set<long>& plus, const std::set<long>& minus = {});

  long tail_start() const { return tail_; }
  const std::set<long>& exceptions() const { return extra_; }

  bool contains(long k) const { return k >= tail_ || extra_.count(k) > 0; }
  long min_element() const { return extra_.empty() ? tail_ : *extra_.begin(); }

  ExponentSet shifted(long c) const;
  ExponentSet intersect(const ExponentSet& o) const;
  ExponentSet unite(const ExponentSet& o) const;
  bool subset_of(const ExponentSet& o) const;
  // |this \ o|; always finite because both sets contain a tail.
  long difference_count(const ExponentSet& o) const;

  bool operator==(const ExponentSet& o) const = default;

  std::string str() const;  // "tail=0" or "tail=0; plus={-3,-1}"

 private:
  ExponentSet(long t, std::set<long> extra) : tail_(t), extra_(std::move(extra)) { normalize(); }
  void normalize();

  long tail_;
  std::set<long> extra_;  // all strictly below tail_
};

// Product over m coordinates of exponent-set subgroups.  This covers compact
// open subgroups that are F-spans of monomials but not O-submodules, e.g.
// F*X^-1 + F*X^-3 + O.
class MonomialLattice {
 public:
  explicit MonomialLattice(std::vector<ExponentSet> coords) : coords_(std::move(coords)) {}
  // O^m: every coordinate [0, inf).
  static MonomialLattice standard(std::size_t m);

  std::size_t dim() const { return coords_.size(); }
  const ExponentSet& coord(std::size_t i) const { return coords_[i]; }
  const std::vector<ExponentSet>& coords() const { return coords_; }

  bool operator==(const MonomialLattice& o) const = default;

  std::string str() const;  // coordinates joined by " | "

 private:
  std::vector<ExponentSet> coords_;
};

// log_q [V : V n W]; exact, always finite for these subgroups.
long index_exponent(const MonomialLattice& v, const MonomialLattice& w);

struct DplusD {
  long dplus_vw;
  long dplus_wv;
  long d;  // dplus_vw + dplus_wv
};
DplusD dplus_d(const MonomialLattice& v, const MonomialLattice& w);
MonomialLattice intersect(const MonomialLattice& v, const MonomialLattice& w);
bool subset(const MonomialLattice& v, const MonomialLattice& w);

// Grammar: coordinate clauses joined by '|'; each clause
//   "tail=t" with optional "; plus={a,b,...}" and "; minus={c,...}".
MonomialLattice parse_monomial_lattice(std::string_view text);

// O-lattice in K^m spanned by the columns of an invertible matrix.
class BasisLattice {
 public:
  explicit BasisLattice(MatrixK basis);
  static BasisLattice standard(const FieldContext& ctx, std::size_t m);

  const MatrixK& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }
  const FieldContext& context() const { return basis_.context(); }

  // Equality as lattices (not of the representing bases).
  bool operator==(const BasisLattice& o) const;

 private:
  MatrixK basis_;
};

// M = U * diag(pi^d) * V with U, V integral over the valuation ring and of
// unit determinant; d ascending.  Requires det(M) != 0.
struct SmithDecomposition {
  MatrixK u;
  std::vector<long> d;
  MatrixK v;
};
SmithDecomposition smith_normal_form(const MatrixK& m);

long index_exponent(const BasisLattice& v, const BasisLattice& w);
DplusD dplus_d(const BasisLattice& v, const BasisLattice& w);
BasisLattice intersect(const BasisLattice& v, const BasisLattice& w);
bool subset(const BasisLattice& v, const BasisLattice& w);

// Exact only when every coordinate is a pure tail X^t * O; throws otherwise.
BasisLattice to_basis_lattice(const MonomialLattice& v, const FieldContext& ctx);

}  // namespace scaledir

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "scaledir/automorphism.hpp"
#include "scaledir/directions.hpp"

namespace scaledir::examples {

// Case study "ex22": G = (K^2, +) over K = F_p((X)).
//   alpha(v, w) = (X^-1 v, X^-1 w)
//   beta(v, w)  = (v1 + X^-1(v2 + v3) + w3, X^-2 w1 + X^-1 w2)
// where zj are the coordinate projections of field.hpp.  beta agrees with
// (v, w) |-> (v, X^-2 w) near zero, so L(beta) = diag(1, X^-2).
struct Ex22 {
  FieldContext ctx;
  LinearAutomorphism alpha;
  MonomialAutomorphism beta;
  LinearAutomorphism l_alpha;
  LinearAutomorphism l_beta;
  MonomialLattice o2;  // O x O
};
Ex22 build_ex22(long p);

// Case study "ex23": G = (K, +).
//   alpha(z) = X^-1 z,    beta(z) = X^-1 z4 + X^-2 z5 + z6
// with L(alpha) = L(beta) = alpha.
struct Ex23 {
  FieldContext ctx;
  LinearAutomorphism alpha;
  MonomialAutomorphism beta;
  MonomialLattice o1;  // O
};
Ex23 build_ex23(long p);

// Case study "ex24": G = Q_p x (Q_p / Z_p).
//   alpha(x, y) = (x/p, y),    beta(x, y) = (x/p, y + q(x/p))
// with q the quotient map onto Q_p / Z_p.

// Element of G: x an arbitrary rational, y canonical in [0, 1) with p-power
// denominator.
class PadicPairElement {
 public:
  PadicPairElement(long p, mpq_class x, const mpq_class& y_raw);

  long p() const { return p_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }

  bool operator==(const PadicPairElement& o) const {
    return p_ == o.p_ && x_ == o.x_ && y_ == o.y_;
  }

  std::string str() const;

 private:
  long p_;
  mpq_class x_;
  mpq_class y_;
};

// Principal-part representative of r + Z_p: the unique rational t/p^e in
// [0, 1) with r - t/p^e in Z_p.
mpq_class padic_fractional_part(const mpq_class& r, long p);

// First n base-p digits of x in Z_p (requires v_p(x) >= 0).
std::vector<long> padic_digits(const mpq_class& x, long n, long p);

// Member of the two rays based at V = Z_p x {0}: alpha^a(V) for any a, or
// beta^b(V) for b >= 1.  beta^b(V) is the graph {(p^-b x, psi_b(x))} over
// x in Z_p, where psi_b(x) depends on the first b digits of x and vanishes
// exactly when they are all zero (the digit-prefix fact behind
// verify_ex24_intersection); that vanishing locus gives every index below in
// closed form.  Powers <= 0 coincide for the two rays, so they canonicalize
// to the alpha kind.
class Ex24Subgroup {
 public:
  enum class Kind { alpha, beta };

  static Ex24Subgroup base(long p) { return Ex24Subgroup(p, Kind::alpha, 0); }
  static Ex24Subgroup alpha_power(long p, long a) { return Ex24Subgroup(p, Kind::alpha, a); }
  static Ex24Subgroup beta_power(long p, long b) {
    return Ex24Subgroup(p, b <= 0 ? Kind::alpha : Kind::beta, b);
  }

  long p() const { return p_; }
  Kind kind() const { return kind_; }
  long power() const { return power_; }

  bool operator==(const Ex24Subgroup& o) const = default;

  std::string str() const;

 private:
  Ex24Subgroup(long p, Kind kind, long power) : p_(p), kind_(kind), power_(power) {
    if (power_ <= 0) kind_ = Kind::alpha;
  }

  long p_;
  Kind kind_;
  long power_;

  friend class Ex24Automorphism;
};

long index_exponent(const Ex24Subgroup& v, const Ex24Subgroup& w);

class Ex24Automorphism {
 public:
  enum class Kind { alpha, beta };

  Ex24Automorphism(long p, Kind kind, bool inverted = false)
      : p_(p), kind_(kind), inverted_(inverted) {}

  long scale_exponent() const { return 1; }
  Ex24Automorphism inverse() const { return Ex24Automorphism(p_, kind_, !inverted_); }

  Ex24Subgroup apply(const Ex24Subgroup& s) const;
  PadicPairElement apply(const PadicPairElement& e) const;

 private:
  long p_;
  Kind kind_;
  bool inverted_;
};

struct Ex24 {
  long p;
  Ex24Automorphism alpha;
  Ex24Automorphism beta;
  Ex24Subgroup v;  // Z_p x {0}
};
Ex24 build_ex24(long p);

// beta^n(x, 0) two ways: the closed form
//   ( p^-n x, sum_{k=1}^n (sum_{j=0}^{n-k} a_j) p^-k mod Z_p )
// from the digits a_j of x, and the n-fold iteration of beta.  The two must
// agree exactly; both are returned so callers can assert it.
struct Ex24Power {
  PadicPairElement closed_form;
  PadicPairElement iterated;
};
Ex24Power ex24_beta_power(const mpq_class& x, long n, long p);

// Enumerates all digit prefixes (a_0, ..., a_{n-1}) and checks that the
// second component of beta^n(x, 0) vanishes only for the all-zero prefix,
// which is exactly the claim alpha^n(V) n beta^n(V) = V at level n.
struct Ex24IntersectionCheck {
  bool holds = false;
  std::vector<long> counterexample;  // offending digit prefix when !holds
};
Ex24IntersectionCheck verify_ex24_intersection(long p, long n);

// Side-by-side reproduction of one case study's quantitative claims.
struct ReproLine {
  std::string name;
  std::string computed;
  std::string target;
  bool match = false;
};

struct ReproReport {
  std::string id;
  long p = 0;
  long horizon = 0;
  std::vector<ReproLine> lines;
  bool ok() const;
};

ReproReport reproduce_ex22(long p, long horizon);
ReproReport reproduce_ex23(long p, long horizon);
ReproReport reproduce_ex24(long p, long horizon);
// id in {ex22, ex23, ex24}
ReproReport reproduce(const std::string& id, long p, long horizon);

}  // namespace scaledir::examples

#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

#include "scaledir/errors.hpp"
#include "scaledir/fp_poly.hpp"

namespace scaledir {

bool is_prime(long n);

enum class FieldKind { padic, laurent };

// Ground field descriptor: Q with the p-adic valuation, or the field of
// rational functions F_p(X) with the X-adic valuation.  The residue field is
// F_p in both cases, so the residue cardinality q equals p.
struct FieldContext {
  FieldKind kind = FieldKind::padic;
  long p = 2;

  long q() const { return p; }

  static FieldContext padic(long p);
  static FieldContext laurent(long p);

  bool operator==(const FieldContext&) const = default;
  std::string str() const;  // "padic:3", "laurent:2"
};

// Valuation of a field element: an integer, or +infinity for zero.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(0, true); }
  static Valuation of(long v) { return Valuation(v, false); }

  bool is_infinite() const { return infinite_; }
  long value() const {
    if (infinite_) throw PreconditionError("valuation of zero has no finite value");
    return v_;
  }

  friend Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return of(a.v_ + b.v_);
  }
  friend bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
  }
  // Infinity is the largest valuation.
  friend bool operator<(Valuation a, Valuation b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(Valuation a, Valuation b) { return a < b || a == b; }
  friend Valuation min(Valuation a, Valuation b) { return a < b ? a : b; }

  std::string str() const { return infinite_ ? "inf" : std::to_string(v_); }

 private:
  Valuation(long v, bool inf) : v_(v), infinite_(inf) {}
  long v_;
  bool infinite_;
};

// Exact element of the ground field.
//
// p-adic kind: an arbitrary rational, canonical via GMP.
// laurent kind: X^shift * num/den with num, den in F_p[X], num(0) != 0
// (unless num = 0), den(0) = 1 and gcd(num, den) = 1.  The shift is then the
// X-adic valuation.  This realizes the rational-function subfield of the
// Laurent series field; every operation provided here stays inside it.
class FieldElement {
 public:
  static FieldElement zero(const FieldContext& ctx);
  static FieldElement one(const FieldContext& ctx);
  static FieldElement from_integer(const FieldContext& ctx, long n);
  // p-adic only.
  static FieldElement from_rational(const FieldContext& ctx, const mpq_class& value);
  // c * pi^exp with pi the uniformizer (X or p); c is reduced mod p for the
  // laurent kind and must not be divisible by p for the p-adic kind.
  static FieldElement monomial(const FieldContext& ctx, long c, long exp);
  static FieldElement uniformizer_power(const FieldContext& ctx, long exp);

  const FieldContext& context() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;
  Valuation valuation() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // True when the element lies in F_p[X, X^-1] (trivial denominator).
  // Always false for the p-adic kind.
  bool is_laurent_polynomial() const;
  // Finite-support view exponent -> coefficient (in [1, p)); requires
  // is_laurent_polynomial().
  std::map<long, long> terms() const;
  // The six coordinate projections of a finite-support element:
  //   1: exponents >= 1     2: exponents <= -1          3: the constant term
  //   4: exponents >= 0     5: odd exponents <= -1      6: even exponents <= -2
  // Requires a laurent-kind polynomial element.
  FieldElement component(int j) const;

  const mpq_class& rational_value() const;

  std::string str() const;

 private:
  explicit FieldElement(const FieldContext& ctx) : ctx_(ctx) {}
  void canonicalize_laurent();
  void require_same_context(const FieldElement& o) const;

  FieldContext ctx_;
  // p-adic payload.
  mpq_class rat_ = 0;
  // laurent payload.
  long shift_ = 0;
  fp::Poly num_;
  fp::Poly den_ = {1};
};

// Parses the element grammar:
//   laurent := term (("+"|"-") term)*
//   term    := coeff ("*")? "X^" int | coeff | "X^" int ;  coeff := nonneg-int
//   p-adic  := int ("/" pos-int)?
// Whitespace is permitted between tokens.  Throws ParseError with the byte
// position on malformed input.
FieldElement parse_element(const FieldContext& ctx, std::string_view text);

}  // namespace scaledir

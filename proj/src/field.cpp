#include "scaledir/field.hpp"

#include <cctype>
#include <sstream>

namespace scaledir {

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldContext FieldContext::padic(long p) {
  if (!is_prime(p)) throw PreconditionError("p must be prime, got " + std::to_string(p));
  return FieldContext{FieldKind::padic, p};
}

FieldContext FieldContext::laurent(long p) {
  if (!is_prime(p)) throw PreconditionError("p must be prime, got " + std::to_string(p));
  return FieldContext{FieldKind::laurent, p};
}

std::string FieldContext::str() const {
  return (kind == FieldKind::padic ? "padic:" : "laurent:") + std::to_string(p);
}

FieldElement FieldElement::zero(const FieldContext& ctx) { return FieldElement(ctx); }

FieldElement FieldElement::one(const FieldContext& ctx) { return from_integer(ctx, 1); }

FieldElement FieldElement::from_integer(const FieldContext& ctx, long n) {
  FieldElement e(ctx);
  if (ctx.kind == FieldKind::padic) {
    e.rat_ = n;
  } else {
    long c = n % ctx.p;
    if (c < 0) c += ctx.p;
    e.num_ = fp::constant(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(ctx.p));
  }
  return e;
}

FieldElement FieldElement::from_rational(const FieldContext& ctx, const mpq_class& value) {
  if (ctx.kind != FieldKind::padic)
    throw PreconditionError("from_rational requires a p-adic context");
  if (value.get_den() == 0) throw PreconditionError("denominator must be nonzero");
  FieldElement e(ctx);
  e.rat_ = value;
  e.rat_.canonicalize();
  return e;
}

FieldElement FieldElement::monomial(const FieldContext& ctx, long c, long exp) {
  if (ctx.kind == FieldKind::padic) {
    if (c % ctx.p == 0 && c != 0)
      throw PreconditionError("monomial coefficient must be a p-adic unit");
    FieldElement e(ctx);
    mpq_class v(c);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(ctx.p),
                  static_cast<unsigned long>(exp >= 0 ? exp : -exp));
    if (exp >= 0)
      v *= mpq_class(pk);
    else
      v /= mpq_class(pk);
    v.canonicalize();
    e.rat_ = v;
    return e;
  }
  FieldElement e(ctx);
  long cr = c % ctx.p;
  if (cr < 0) cr += ctx.p;
  if (cr == 0) return e;
  e.shift_ = exp;
  e.num_ = {static_cast<std::uint64_t>(cr)};
  return e;
}

FieldElement FieldElement::uniformizer_power(const FieldContext& ctx, long exp) {
  return monomial(ctx, 1, exp);
}

bool FieldElement::is_zero() const {
  return ctx_.kind == FieldKind::padic ? rat_ == 0 : fp::is_zero(num_);
}

bool FieldElement::is_one() const {
  if (ctx_.kind == FieldKind::padic) return rat_ == 1;
  return shift_ == 0 && num_ == fp::Poly{1} && den_ == fp::Poly{1};
}

Valuation FieldElement::valuation() const {
  if (is_zero()) return Valuation::infinite();
  if (ctx_.kind == FieldKind::laurent) return Valuation::of(shift_);
  // v_p(num) - v_p(den) for the reduced fraction.
  auto vp = [&](const mpz_class& z) {
    long v = 0;
    mpz_class t = z;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(ctx_.p))) {
      mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(ctx_.p));
      ++v;
    }
    return v;
  };
  return Valuation::of(vp(rat_.get_num()) - vp(rat_.get_den()));
}

void FieldElement::require_same_context(const FieldElement& o) const {
  if (!(ctx_ == o.ctx_))
    throw PreconditionError("field context mismatch: " + ctx_.str() + " vs " + o.ctx_.str());
}

void FieldElement::canonicalize_laurent() {
  const auto p = static_cast<std::uint64_t>(ctx_.p);
  if (fp::is_zero(num_)) {
    shift_ = 0;
    num_.clear();
    den_ = {1};
    return;
  }
  long ln = fp::low_order(num_);
  if (ln > 0) {
    num_ = fp::shift_down(num_, ln);
    shift_ += ln;
  }
  long ld = fp::low_order(den_);
  if (ld > 0) {
    den_ = fp::shift_down(den_, ld);
    shift_ -= ld;
  }
  fp::Poly g = fp::gcd(num_, den_, p);
  if (fp::degree(g) > 0) {
    fp::Poly q, r;
    fp::divrem(num_, g, p, q, r);
    num_ = q;
    fp::divrem(den_, g, p, q, r);
    den_ = q;
  }
  std::uint64_t c = den_[0];
  if (c != 1) {
    std::uint64_t inv = fp::mod_inverse(c, p);
    num_ = fp::scale(num_, inv, p);
    den_ = fp::scale(den_, inv, p);
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_context(o);
  FieldElement r(ctx_);
  if (ctx_.kind == FieldKind::padic) {
    r.rat_ = rat_ + o.rat_;
    r.rat_.canonicalize();
    return r;
  }
  const auto p = static_cast<std::uint64_t>(ctx_.p);
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  long s = std::min(shift_, o.shift_);
  fp::Poly a = num_, b = o.num_;
  a.insert(a.begin(), static_cast<std::size_t>(shift_ - s), 0);
  b.insert(b.begin(), static_cast<std::size_t>(o.shift_ - s), 0);
  r.shift_ = s;
  r.num_ = fp::add(fp::mul(a, o.den_, p), fp::mul(b, den_, p), p);
  r.den_ = fp::mul(den_, o.den_, p);
  r.canonicalize_laurent();
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  if (ctx_.kind == FieldKind::padic) {
    r.rat_ = -rat_;
  } else {
    r.num_ = fp::sub({}, num_, static_cast<std::uint64_t>(ctx_.p));
  }
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_context(o);
  FieldElement r(ctx_);
  if (ctx_.kind == FieldKind::padic) {
    r.rat_ = rat_ * o.rat_;
    r.rat_.canonicalize();
    return r;
  }
  const auto p = static_cast<std::uint64_t>(ctx_.p);
  r.shift_ = shift_ + o.shift_;
  r.num_ = fp::mul(num_, o.num_, p);
  r.den_ = fp::mul(den_, o.den_, p);
  r.canonicalize_laurent();
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  FieldElement r(ctx_);
  if (ctx_.kind == FieldKind::padic) {
    r.rat_ = 1 / rat_;
    r.rat_.canonicalize();
    return r;
  }
  r.shift_ = -shift_;
  r.num_ = den_;
  r.den_ = num_;
  r.canonicalize_laurent();
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_context(o);
  return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!(ctx_ == o.ctx_)) return false;
  if (ctx_.kind == FieldKind::padic) return rat_ == o.rat_;
  return shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
}

bool FieldElement::is_laurent_polynomial() const {
  return ctx_.kind == FieldKind::laurent && den_ == fp::Poly{1};
}

std::map<long, long> FieldElement::terms() const {
  if (!is_laurent_polynomial())
    throw PreconditionError("terms() requires a laurent polynomial element");
  std::map<long, long> t;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) t[shift_ + static_cast<long>(i)] = static_cast<long>(num_[i]);
  return t;
}

FieldElement FieldElement::component(int j) const {
  if (ctx_.kind != FieldKind::laurent)
    throw PreconditionError("component projections require a laurent context");
  if (!is_laurent_polynomial())
    throw PreconditionError("component projections require finite support");
  if (j < 1 || j > 6) throw PreconditionError("component index must be in 1..6");
  FieldElement r = zero(ctx_);
  for (const auto& [k, c] : terms()) {
    bool keep = false;
    switch (j) {
      case 1: keep = k >= 1; break;
      case 2: keep = k <= -1; break;
      case 3: keep = k == 0; break;
      case 4: keep = k >= 0; break;
      case 5: keep = k <= -1 && ((k % 2) != 0); break;
      case 6: keep = k <= -2 && ((k % 2) == 0); break;
    }
    if (keep) r = r + monomial(ctx_, c, k);
  }
  return r;
}

const mpq_class& FieldElement::rational_value() const {
  if (ctx_.kind != FieldKind::padic)
    throw PreconditionError("rational_value requires a p-adic element");
  return rat_;
}

namespace {

std::string format_poly(long shift, const fp::Poly& poly) {
  if (fp::is_zero(poly)) return "0";
  std::string out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] == 0) continue;
    long exp = shift + static_cast<long>(i);
    if (!out.empty()) out += "+";
    if (exp == 0) {
      out += std::to_string(poly[i]);
    } else if (poly[i] == 1) {
      out += "X^" + std::to_string(exp);
    } else {
      out += std::to_string(poly[i]) + "*X^" + std::to_string(exp);
    }
  }
  return out;
}

}  // namespace

std::string FieldElement::str() const {
  if (ctx_.kind == FieldKind::padic) {
    std::ostringstream os;
    os << rat_;
    return os.str();
  }
  if (den_ == fp::Poly{1}) return format_poly(shift_, num_);
  // Denominators never appear in the input grammar; display form only.
  return "(" + format_poly(shift_, num_) + ")/(" + format_poly(0, den_) + ")";
}

namespace {

class Cursor {
 public:
  Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected ") + what);
  }
  long parse_uint() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a digit");
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v < 0) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }
  long parse_int() {
    skip_ws();
    bool neg = accept('-');
    if (!neg) accept('+');
    long v = parse_uint();
    return neg ? -v : v;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

FieldElement parse_laurent(const FieldContext& ctx, Cursor& cur) {
  FieldElement acc = FieldElement::zero(ctx);
  bool first = true;
  long sign = 1;
  while (true) {
    if (!first) {
      if (cur.done()) break;
      if (cur.accept('+'))
        sign = 1;
      else if (cur.accept('-'))
        sign = -1;
      else
        cur.fail("expected '+' or '-'");
    }
    long coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      coeff = cur.parse_uint();
      have_coeff = true;
      cur.accept('*');
    }
    long exp = 0;
    if (cur.peek() == 'X') {
      cur.expect('X', "'X'");
      cur.expect('^', "'^' after X");
      exp = cur.parse_int();
    } else if (!have_coeff) {
      cur.fail("expected a term");
    }
    acc = acc + FieldElement::monomial(ctx, sign * coeff, exp);
    first = false;
  }
  return acc;
}

FieldElement parse_padic(const FieldContext& ctx, Cursor& cur) {
  long num = cur.parse_int();
  if (cur.accept('/')) {
    long den = cur.parse_uint();
    if (den == 0) cur.fail("denominator must be positive");
    return FieldElement::from_rational(ctx, mpq_class(num, den));
  }
  return FieldElement::from_rational(ctx, mpq_class(num));
}

}  // namespace

FieldElement parse_element(const FieldContext& ctx, std::string_view text) {
  Cursor cur(text);
  FieldElement e = ctx.kind == FieldKind::laurent ? parse_laurent(ctx, cur) : parse_padic(ctx, cur);
  if (!cur.done()) cur.fail("trailing characters after element");
  return e;
}

}  // namespace scaledir

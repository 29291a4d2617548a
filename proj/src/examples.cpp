#include "scaledir/examples.hpp"

#include <algorithm>
#include <sstream>

namespace scaledir::examples {

namespace {

ShiftRule rule(int ci, int co, ShiftRule::Guard g, long bound, long shift, long modulus = 1,
               long residue = 0) {
  ShiftRule r;
  r.coord_in = ci;
  r.coord_out = co;
  r.guard = g;
  r.bound = bound;
  r.shift = shift;
  r.modulus = modulus;
  r.residue = residue;
  return r;
}

}  // namespace

Ex22 build_ex22(long p) {
  FieldContext ctx = FieldContext::laurent(p);
  FieldElement xinv = FieldElement::uniformizer_power(ctx, -1);
  FieldElement one = FieldElement::one(ctx);

  LinearAutomorphism alpha(MatrixK::diagonal(ctx, {xinv, xinv}));
  LinearAutomorphism l_beta(
      MatrixK::diagonal(ctx, {one, FieldElement::uniformizer_power(ctx, -2)}));

  using G = ShiftRule::Guard;
  // Monomial decomposition of beta: the v-part keeps positive exponents,
  // multiplies the rest by X^-1; the constant of w crosses into the first
  // coordinate; the w-part contracts by X^-2 on positive exponents and by
  // X^-1 on negative ones.
  std::vector<ShiftRule> rules = {
      rule(0, 0, G::ge, 1, 0),    // v^(1)
      rule(0, 0, G::le, -1, -1),  // X^-1 v^(2)
      rule(0, 0, G::eq, 0, -1),   // X^-1 v^(3)
      rule(1, 0, G::eq, 0, 0),    // w^(3)
      rule(1, 1, G::ge, 1, -2),   // X^-2 w^(1)
      rule(1, 1, G::le, -1, -1),  // X^-1 w^(2)
  };
  MonomialAutomorphism beta(ctx, 2, std::move(rules));

  return Ex22{ctx, alpha, std::move(beta), alpha, std::move(l_beta),
              MonomialLattice::standard(2)};
}

Ex23 build_ex23(long p) {
  FieldContext ctx = FieldContext::laurent(p);
  LinearAutomorphism alpha(
      MatrixK::diagonal(ctx, {FieldElement::uniformizer_power(ctx, -1)}));

  using G = ShiftRule::Guard;
  // beta(z) = X^-1 z4 + X^-2 z5 + z6.
  std::vector<ShiftRule> rules = {
      rule(0, 0, G::ge, 0, -1),        // X^-1 z^(4)
      rule(0, 0, G::le, -1, -2, 2, 1),  // X^-2 z^(5): odd negative exponents
      rule(0, 0, G::le, -2, 0, 2, 0),   // z^(6): even negative exponents
  };
  MonomialAutomorphism beta(ctx, 1, std::move(rules));

  return Ex23{ctx, alpha, std::move(beta), MonomialLattice::standard(1)};
}

PadicPairElement::PadicPairElement(long p, mpq_class x, const mpq_class& y_raw)
    : p_(p), x_(std::move(x)), y_(padic_fractional_part(y_raw, p)) {
  x_.canonicalize();
}

std::string PadicPairElement::str() const {
  std::ostringstream os;
  os << "(" << x_ << ", " << y_ << " + Z_" << p_ << ")";
  return os.str();
}

mpq_class padic_fractional_part(const mpq_class& r, long p) {
  mpq_class v = r;
  v.canonicalize();
  mpz_class rest = v.get_den();  // prime-to-p denominator part after the loop
  long e = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(p));
    ++e;
  }
  if (e == 0) return mpq_class(0);  // a p-adic integer
  mpz_class pe;
  mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  // r * p^e = num / rest is p-integral; its residue mod p^e gives the
  // principal part t / p^e with r - t/p^e in Z_p.
  mpz_class rest_inv;
  mpz_invert(rest_inv.get_mpz_t(), rest.get_mpz_t(), pe.get_mpz_t());
  mpz_class t;
  mpz_class scaled = v.get_num() * rest_inv;
  mpz_mod(t.get_mpz_t(), scaled.get_mpz_t(), pe.get_mpz_t());
  mpq_class out(t, pe);
  out.canonicalize();
  return out;
}

std::vector<long> padic_digits(const mpq_class& x, long n, long p) {
  mpq_class v = x;
  v.canonicalize();
  if (mpz_divisible_ui_p(v.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
    throw PreconditionError("digit expansion requires v_p(x) >= 0");
  mpz_class pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
  mpz_class den_inv;
  if (mpz_invert(den_inv.get_mpz_t(), v.get_den().get_mpz_t(), pn.get_mpz_t()) == 0)
    throw PreconditionError("denominator not invertible modulo p^n");
  mpz_class t;
  mpz_mod(t.get_mpz_t(), mpz_class(v.get_num() * den_inv).get_mpz_t(), pn.get_mpz_t());
  std::vector<long> digits(static_cast<std::size_t>(n), 0);
  for (long i = 0; i < n; ++i) {
    mpz_class d;
    mpz_mod_ui(d.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    digits[static_cast<std::size_t>(i)] = d.get_si();
    t = (t - d) / p;
  }
  return digits;
}

std::string Ex24Subgroup::str() const {
  std::ostringstream os;
  if (kind_ == Kind::alpha)
    os << "alpha^" << power_ << "(V)";
  else
    os << "beta^" << power_ << "(V)";
  return os.str();
}

long index_exponent(const Ex24Subgroup& v, const Ex24Subgroup& w) {
  if (v.p() != w.p()) throw PreconditionError("subgroup prime mismatch");
  using K = Ex24Subgroup::Kind;
  // alpha^a(V) = p^-a Z_p x {0}; beta^b(V) for b >= 1 is the graph over
  // p^-b Z_p whose second component vanishes exactly on Z_p's image, so every
  // intersection below collapses to a power of the base chain.
  if (v.kind() == K::alpha) {
    long a = v.power();
    if (w.kind() == K::alpha) return std::max(a - w.power(), 0L);
    return std::max(a, 0L);
  }
  long b = v.power();
  if (w.kind() == K::alpha) return b + std::max(-w.power(), 0L);
  return std::max(b - w.power(), 0L);
}

Ex24Subgroup Ex24Automorphism::apply(const Ex24Subgroup& s) const {
  if (s.p() != p_) throw PreconditionError("subgroup prime mismatch");
  using SK = Ex24Subgroup::Kind;
  long step = inverted_ ? -1 : 1;
  if (kind_ == Kind::alpha) {
    if (s.kind() == SK::beta)
      throw PreconditionError("alpha does not preserve the beta ray; unsupported subgroup");
    return Ex24Subgroup::alpha_power(p_, s.power() + step);
  }
  // beta handle
  if (s.kind() == SK::beta) return Ex24Subgroup::beta_power(p_, s.power() + step);
  long a = s.power();
  if (a >= 1)
    throw PreconditionError("beta does not preserve the alpha ray above the base; unsupported");
  // On V and below, beta and alpha agree.
  if (a == 0 && step == 1) return Ex24Subgroup::beta_power(p_, 1);
  return Ex24Subgroup::alpha_power(p_, a + step);
}

PadicPairElement Ex24Automorphism::apply(const PadicPairElement& e) const {
  if (e.p() != p_) throw PreconditionError("element prime mismatch");
  if (kind_ == Kind::alpha) {
    mpq_class x = inverted_ ? mpq_class(e.x() * p_) : mpq_class(e.x() / p_);
    return PadicPairElement(p_, x, e.y());
  }
  if (!inverted_) {
    mpq_class x = e.x() / p_;
    return PadicPairElement(p_, x, e.y() + x);
  }
  mpq_class x = e.x() * p_;
  return PadicPairElement(p_, x, e.y() - e.x());
}

Ex24 build_ex24(long p) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  return Ex24{p, Ex24Automorphism(p, Ex24Automorphism::Kind::alpha),
              Ex24Automorphism(p, Ex24Automorphism::Kind::beta), Ex24Subgroup::base(p)};
}

Ex24Power ex24_beta_power(const mpq_class& x, long n, long p) {
  if (n < 0) throw PreconditionError("power must be nonnegative");
  std::vector<long> a = padic_digits(x, std::max(n, 1L), p);
  // sum_{k=1}^n (sum_{j<=n-k} a_j) p^-k = (sum_{i=0}^{n-1} S_i p^i) / p^n
  // with S_i the digit prefix sums.
  mpz_class numerator = 0;
  mpz_class pi = 1;
  long prefix = 0;
  for (long i = 0; i < n; ++i) {
    prefix += a[static_cast<std::size_t>(i)];
    numerator += prefix * pi;
    pi *= p;
  }
  mpz_class pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
  mpq_class x_out(x);
  x_out /= mpq_class(pn);
  x_out.canonicalize();
  PadicPairElement closed(p, x_out, mpq_class(numerator, pn));

  Ex24Automorphism beta(p, Ex24Automorphism::Kind::beta);
  PadicPairElement it(p, x, 0);
  for (long i = 0; i < n; ++i) it = beta.apply(it);
  return Ex24Power{closed, it};
}

Ex24IntersectionCheck verify_ex24_intersection(long p, long n) {
  if (n < 1) throw PreconditionError("level must be >= 1");
  std::vector<long> digits(static_cast<std::size_t>(n), 0);
  std::vector<long> pw(static_cast<std::size_t>(n), 1);
  for (long i = 1; i < n; ++i) pw[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(i - 1)] * p;
  const long pn = pw[static_cast<std::size_t>(n - 1)] * p;

  Ex24IntersectionCheck out;
  while (true) {
    // Second component of beta^n(x, 0): (sum_i S_i p^i) / p^n mod Z_p.
    long t = 0;
    long prefix = 0;
    bool all_zero = true;
    for (long i = 0; i < n; ++i) {
      long d = digits[static_cast<std::size_t>(i)];
      all_zero = all_zero && d == 0;
      prefix += d;
      t = (t + prefix % pn * pw[static_cast<std::size_t>(i)]) % pn;
    }
    bool vanishes = t % pn == 0;
    if (vanishes != all_zero) {
      out.holds = false;
      out.counterexample = digits;
      return out;
    }
    // Odometer step.
    long i = 0;
    for (; i < n; ++i) {
      if (++digits[static_cast<std::size_t>(i)] < p) break;
      digits[static_cast<std::size_t>(i)] = 0;
    }
    if (i == n) break;
  }
  out.holds = true;
  return out;
}

bool ReproReport::ok() const {
  for (const ReproLine& l : lines)
    if (!l.match) return false;
  return true;
}

namespace {

std::string q_str(const mpq_class& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void add_line(ReproReport& rep, const std::string& name, std::string computed, std::string target,
              bool match) {
  rep.lines.push_back(ReproLine{name, std::move(computed), std::move(target), match});
}

void add_value_line(ReproReport& rep, const std::string& name, long computed, long target) {
  add_line(rep, name, std::to_string(computed), std::to_string(target), computed == target);
}

// Reports "ok (n <= N)" or pinpoints the first failing n.
template <class Check>
void add_trace_line(ReproReport& rep, const std::string& name, long horizon,
                    const std::string& target, Check&& check) {
  for (long n = 1; n <= horizon; ++n) {
    std::string actual;
    if (!check(n, actual)) {
      add_line(rep, name, "mismatch at n=" + std::to_string(n) + ": " + actual, target, false);
      return;
    }
  }
  add_line(rep, name, "ok for n <= " + std::to_string(horizon), target, true);
}

}  // namespace

ReproReport reproduce_ex22(long p, long horizon) {
  Ex22 ex = build_ex22(p);
  ReproReport rep{"ex22", p, horizon, {}};

  add_value_line(rep, "scale_exponent(L(alpha))", ex.l_alpha.scale_exponent(), 2);
  add_value_line(rep, "scale_exponent(L(beta))", ex.l_beta.scale_exponent(), 2);
  add_value_line(rep, "scale_exponent(beta) [pinned]", ex.beta.scale_exponent(), 2);

  std::vector<MonomialLattice> ra = ray(ex.l_alpha, ex.o2, horizon);
  std::vector<MonomialLattice> rb = ray(ex.l_beta, ex.o2, horizon);
  add_trace_line(rep, "d+(L(alpha)^n(O^2), L(beta)^n(O^2)) = n", horizon, "n log q",
                 [&](long n, std::string& actual) {
                   long dp = index_exponent(ra[static_cast<std::size_t>(n)],
                                            rb[static_cast<std::size_t>(n)]);
                   actual = std::to_string(dp);
                   return dp == n;
                 });

  DeltaTrace tr = delta_plus(ex.l_alpha, ex.l_beta, ex.o2, ex.o2, horizon);
  mpq_class half(1, 2);
  add_trace_line(rep, "delta_n(L(alpha), L(beta)) = 1/2", horizon, "log q / log s = 1/2",
                 [&](long n, std::string& actual) {
                   const DeltaSample& s = tr.samples[static_cast<std::size_t>(n - 1)];
                   actual = q_str(s.value);
                   return s.value == half;
                 });
  add_line(rep, "delta_plus(L(alpha), L(beta)) estimate", q_str(tr.estimate), "1/2",
           tr.estimate == half);

  std::vector<MonomialLattice> ga = ray(ex.alpha, ex.o2, horizon);
  std::vector<MonomialLattice> gb = ray(ex.beta, ex.o2, horizon);
  add_trace_line(rep, "d(alpha^n(O^2), beta^n(O^2)) = 0", horizon, "0",
                 [&](long n, std::string& actual) {
                   DplusD dd = dplus_d(ga[static_cast<std::size_t>(n)],
                                       gb[static_cast<std::size_t>(n)]);
                   actual = std::to_string(dd.d);
                   return dd.d == 0;
                 });

  AsymptoticVerdict verdict =
      asymptotic_verdict(ex.alpha, ex.beta, ex.o2, ex.o2, std::max(horizon, 4L));
  add_line(rep, "asymptotic verdict (alpha, beta)",
           verdict.bounded ? "bounded(" + std::to_string(verdict.bound) + ")" : "growing",
           "bounded(0)", verdict.bounded && verdict.bound == 0);
  return rep;
}

ReproReport reproduce_ex23(long p, long horizon) {
  Ex23 ex = build_ex23(p);
  ReproReport rep{"ex23", p, horizon, {}};

  add_value_line(rep, "scale_exponent(alpha)", ex.alpha.scale_exponent(), 1);
  add_value_line(rep, "scale_exponent(beta) [pinned]", ex.beta.scale_exponent(), 1);

  // beta^n(O) = F X^-1 + F X^-3 + ... + F X^-(2n-1) + O.
  {
    MonomialLattice cur = ex.o1;
    bool ok = true;
    std::string detail = "ok for n <= " + std::to_string(horizon);
    std::set<long> odd;
    for (long n = 1; n <= horizon && ok; ++n) {
      cur = ex.beta.apply(cur);
      odd.insert(-(2 * n - 1));
      MonomialLattice expected(std::vector<ExponentSet>{ExponentSet::make(0, odd)});
      if (!(cur == expected)) {
        ok = false;
        detail = "mismatch at n=" + std::to_string(n) + ": " + cur.str();
      }
    }
    add_line(rep, "beta^n(O) closed form", detail, "sum F X^-(2k+1) + O", ok);
  }

  DeltaTrace tr = delta_plus(ex.alpha, ex.beta, ex.o1, ex.o1, horizon);
  add_trace_line(rep, "delta_n(alpha, beta) = l/(2l+1) on odd n = 2l+1", horizon,
                 "l log q / ((2l+1) log q)", [&](long n, std::string& actual) {
                   if (n % 2 == 0) return true;
                   const DeltaSample& s = tr.samples[static_cast<std::size_t>(n - 1)];
                   actual = q_str(s.value);
                   mpq_class expect((n - 1) / 2, n);
                   expect.canonicalize();
                   return s.value == expect;
                 });

  {
    bool nondecreasing = true;
    mpq_class prev(-1);
    mpq_class odd_sup(0);
    long window_lo = (horizon + 1) / 2;
    for (const DeltaSample& s : tr.samples) {
      if (s.n % 2 == 0) continue;
      if (s.value < prev) nondecreasing = false;
      prev = s.value;
      if (s.n >= window_lo && s.value > odd_sup) odd_sup = s.value;
    }
    add_line(rep, "odd-n delta trace nondecreasing", nondecreasing ? "yes" : "no",
             "nondecreasing toward 1/2", nondecreasing);

    long top_odd = horizon % 2 == 1 ? horizon : horizon - 1;
    mpq_class expect((top_odd - 1) / 2, top_odd);
    expect.canonicalize();
    add_line(rep, "delta_plus estimate over odd n", q_str(odd_sup), q_str(expect),
             odd_sup == expect);
  }

  mpq_class half(1, 2);
  add_line(rep, "delta_plus estimate over all n (limit)", q_str(tr.estimate), "1/2",
           tr.estimate == half);

  AsymptoticVerdict verdict =
      asymptotic_verdict(ex.alpha, ex.beta, ex.o1, ex.o1, std::max(horizon, 4L));
  add_line(rep, "asymptotic verdict (alpha, beta)", verdict.bounded ? "bounded" : "growing",
           "growing", !verdict.bounded);
  return rep;
}

ReproReport reproduce_ex24(long p, long horizon) {
  Ex24 ex = build_ex24(p);
  ReproReport rep{"ex24", p, horizon, {}};

  add_value_line(rep, "scale_exponent(alpha)", ex.alpha.scale_exponent(), 1);
  add_value_line(rep, "scale_exponent(beta)", ex.beta.scale_exponent(), 1);

  long level_cap = std::min(horizon, 8L);
  add_trace_line(rep, "alpha^n(V) n beta^n(V) = V (digit enumeration)", level_cap, "true",
                 [&](long n, std::string& actual) {
                   Ex24IntersectionCheck chk = verify_ex24_intersection(p, n);
                   if (!chk.holds) {
                     actual = "violated by digit prefix";
                     return false;
                   }
                   actual = "true";
                   return true;
                 });

  {
    // Closed form vs iteration for every x with at most six digits.
    long span = 1;
    for (int i = 0; i < 6; ++i) span *= p;
    bool ok = true;
    std::string detail = "ok for x < p^6, n <= 6";
    for (long x = 0; x < span && ok; ++x)
      for (long n = 1; n <= 6 && ok; ++n) {
        Ex24Power pw = ex24_beta_power(mpq_class(x), n, p);
        if (!(pw.closed_form == pw.iterated)) {
          ok = false;
          detail = "mismatch at x=" + std::to_string(x) + ", n=" + std::to_string(n);
        }
      }
    add_line(rep, "beta^n closed form equals iteration", detail, "exact equality", ok);
  }

  DeltaTrace tr = delta_plus(ex.alpha, ex.beta, ex.v, ex.v, horizon);
  mpq_class one(1);
  add_trace_line(rep, "delta_n(alpha, beta) = 1", horizon, "log p / log s = 1",
                 [&](long n, std::string& actual) {
                   const DeltaSample& s = tr.samples[static_cast<std::size_t>(n - 1)];
                   actual = q_str(s.value);
                   return s.value == one;
                 });

  mpq_class d = delta(ex.alpha, ex.beta, ex.v, ex.v, horizon);
  add_line(rep, "delta(alpha, beta)", q_str(d), "2", d == 2);
  return rep;
}

ReproReport reproduce(const std::string& id, long p, long horizon) {
  if (id == "ex22") return reproduce_ex22(p, horizon);
  if (id == "ex23") return reproduce_ex23(p, horizon);
  if (id == "ex24") return reproduce_ex24(p, horizon);
  throw PreconditionError("unknown case id: " + id + " (expected ex22, ex23 or ex24)");
}

}  // namespace scaledir::examples

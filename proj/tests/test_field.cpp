#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scaledir/field.hpp"
#include "scaledir/sampling.hpp"

using namespace scaledir;

namespace {
const FieldContext F2 = FieldContext::laurent(2);
const FieldContext F3 = FieldContext::laurent(3);
const FieldContext Q2 = FieldContext::padic(2);
const FieldContext Q3 = FieldContext::padic(3);
const FieldContext Q5 = FieldContext::padic(5);

FieldElement L(const FieldContext& ctx, const char* text) { return parse_element(ctx, text); }
}  // namespace

TEST_CASE("p-adic arithmetic: 1/3 + 1/9 = 4/9") {
  FieldElement a = L(Q3, "1/3"), b = L(Q3, "1/9");
  CHECK((a + b) == L(Q3, "4/9"));
}

TEST_CASE("additive identity") {
  for (const FieldContext& ctx : {F2, Q3}) {
    FieldElement x = parse_element(ctx, ctx.kind == FieldKind::laurent ? "X^-1+1" : "-7/4");
    CHECK(x + FieldElement::zero(ctx) == x);
  }
}

TEST_CASE("laurent product over F_2: (X^-1 + 1)(X + 1) = X^-1 + X") {
  FieldElement a = L(F2, "X^-1+1"), b = L(F2, "X^1+1");
  CHECK(a * b == L(F2, "X^-1+X^1"));
}

TEST_CASE("valuations") {
  CHECK(L(F2, "X^-2+X^1").valuation() == Valuation::of(-2));
  CHECK(L(Q2, "3/4").valuation() == Valuation::of(-2));
  CHECK(FieldElement::zero(Q2).valuation().is_infinite());
  CHECK(FieldElement::zero(F3).valuation().is_infinite());
}

TEST_CASE("component projections of X^-2+X^-1+1+X") {
  FieldElement z = L(F3, "X^-2+X^-1+1+X^1");
  CHECK(z.component(1) == L(F3, "X^1"));
  CHECK(z.component(2) == L(F3, "X^-2+X^-1"));
  CHECK(z.component(3) == L(F3, "1"));
  CHECK(z.component(4) == L(F3, "1+X^1"));
  CHECK(z.component(5) == L(F3, "X^-1"));
  CHECK(z.component(6) == L(F3, "X^-2"));
}

TEST_CASE("components of zero") {
  for (int j = 1; j <= 6; ++j) CHECK(FieldElement::zero(F2).component(j).is_zero());
}

TEST_CASE("component partition identities on random finite-support elements") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const FieldContext& ctx = trial % 2 ? F2 : F3;
    FieldElement z = FieldElement::zero(ctx);
    for (int t = 0; t < 6; ++t)
      z = z + FieldElement::monomial(ctx, rng.range(0, ctx.p - 1), rng.range(-6, 6));
    FieldElement sum123 = z.component(1) + z.component(2) + z.component(3);
    FieldElement sum456 = z.component(4) + z.component(5) + z.component(6);
    CHECK(z == sum123);
    CHECK(z == sum456);
  }
}

TEST_CASE("ultrametric inequality, equality on distinct valuations") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const FieldContext& ctx = trial % 2 ? F3 : Q3;
    FieldElement x = sample_element(rng, ctx, -4, 4, false);
    FieldElement y = sample_element(rng, ctx, -4, 4, false);
    FieldElement s = x + y;
    Valuation bound = min(x.valuation(), y.valuation());
    CHECK(!(s.valuation() < bound));
    if (!(x.valuation() == y.valuation()) && !s.is_zero()) CHECK(s.valuation() == bound);
  }
}

TEST_CASE("valuation is additive on products") {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const FieldContext& ctx = trial % 2 ? F2 : Q2;
    FieldElement x = sample_element(rng, ctx, -4, 4, false);
    FieldElement y = sample_element(rng, ctx, -4, 4, false);
    CHECK((x * y).valuation() == x.valuation() + y.valuation());
  }
}

TEST_CASE("division round-trips and rejects zero") {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const FieldContext& ctx = trial % 2 ? F3 : Q5;
    FieldElement x = sample_element(rng, ctx, -3, 3, false);
    FieldElement y = sample_element(rng, ctx, -3, 3, false);
    CHECK((x / y) * y == x);
  }
  CHECK_THROWS_AS(L(F2, "1") / FieldElement::zero(F2), PreconditionError);
}

TEST_CASE("context mismatch is rejected") {
  CHECK_THROWS_AS(L(F2, "1") + L(F3, "1"), PreconditionError);
  CHECK_THROWS_AS(L(Q2, "1") * L(F2, "1"), PreconditionError);
}

TEST_CASE("canonical text round-trip is the identity") {
  Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const FieldContext& ctx = trial % 3 == 0 ? F2 : (trial % 3 == 1 ? F3 : Q3);
    FieldElement z = FieldElement::zero(ctx);
    if (ctx.kind == FieldKind::laurent) {
      for (int t = 0; t < 4; ++t)
        z = z + FieldElement::monomial(ctx, rng.range(0, ctx.p - 1), rng.range(-5, 5));
    } else {
      z = sample_element(rng, ctx, -4, 4);
    }
    std::string once = z.str();
    FieldElement back = parse_element(ctx, once);
    CHECK(back == z);
    CHECK(back.str() == once);
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_element(F2, "X^"), ParseError);
  CHECK_THROWS_AS(parse_element(F2, "1+"), ParseError);
  CHECK_THROWS_AS(parse_element(F2, "1 junk"), ParseError);
  CHECK_THROWS_AS(parse_element(Q2, "1/0"), ParseError);
  CHECK_THROWS_AS(parse_element(Q2, ""), ParseError);
  try {
    parse_element(F2, "1+X^2+banana");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("rational-function elements print with explicit denominators") {
  FieldElement q = L(F3, "1") / L(F3, "1+X^1");
  CHECK(!q.is_laurent_polynomial());
  CHECK(q.str() == "(1)/(1+X^1)");
  CHECK_THROWS_AS(q.component(4), PreconditionError);
  CHECK_THROWS_AS(q.terms(), PreconditionError);
}

TEST_CASE("component requires a laurent context") {
  CHECK_THROWS_AS(L(Q3, "5").component(1), PreconditionError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scaledir/cayley.hpp"
#include "scaledir/sampling.hpp"

using namespace scaledir;
using namespace scaledir::cayley;

namespace {
const FieldContext F3 = FieldContext::laurent(3);
const FieldContext F5 = FieldContext::laurent(5);
const FieldContext Q2 = FieldContext::padic(2);
const FieldContext Q5 = FieldContext::padic(5);

MatrixK M(const FieldContext& ctx, const char* text) { return parse_matrix(ctx, text); }
}  // namespace

TEST_CASE("theta on stated inputs") {
  MatrixK zero(F3, 2);
  MatrixK id = MatrixK::identity(F3, 2);
  CHECK(theta(zero) == id);
  CHECK(theta(id) == zero);
  // 1x1: theta(x) = (1-x)/(1+x).
  MatrixK x = M(Q5, "[[2]]");
  CHECK(theta(x) == M(Q5, "[[-1/3]]"));
  CHECK(theta(theta(x)) == x);
}

TEST_CASE("theta refuses characteristic 2 and singular 1 + x") {
  CHECK_THROWS_AS(theta(MatrixK::identity(FieldContext::laurent(2), 2)), PreconditionError);
  // Over Q_2 the transform is fine (characteristic zero).
  MatrixK x = M(Q2, "[[2]]");
  CHECK(theta(theta(x)) == x);
  CHECK_THROWS_AS(theta(M(F3, "[[2]]")), PreconditionError);  // 1 + 2 = 0 mod 3
}

TEST_CASE("theta is an exact involution on random Omega points") {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const FieldContext& ctx = trial % 2 ? F3 : Q5;
    std::size_t n = 1 + trial % 3;
    MatrixK x = sample_matrix(rng, ctx, n, -2, 2);
    if (!in_omega(x)) continue;
    CHECK(theta(theta(x)) == x);
    MatrixK lhs = (MatrixK::identity(ctx, n) + theta(x)) * (MatrixK::identity(ctx, n) + x);
    CHECK(lhs == MatrixK::identity(ctx, n).scaled(FieldElement::from_integer(ctx, 2)));
  }
}

TEST_CASE("membership predicates") {
  for (KappaVariant tag : {KappaVariant::gl, KappaVariant::sl, KappaVariant::orth,
                           KappaVariant::ut}) {
    KappaMap map(tag, 2, F3);
    CHECK(member(map, MatrixK::identity(F3, 2)));
  }
  CHECK(member(KappaMap(KappaVariant::sl, 2, F3), M(F3, "[[X^1,0],[0,X^-1]]")));
  CHECK(!member(KappaMap(KappaVariant::sl, 2, F3), M(F3, "[[X^1,0],[0,1]]")));
  CHECK(member(KappaMap(KappaVariant::orth, 2, F3), M(F3, "[[0,1],[1,0]]")));
  CHECK(!member(KappaMap(KappaVariant::orth, 2, F3), M(F3, "[[1,1],[0,1]]")));
  CHECK(member(KappaMap(KappaVariant::ut, 2, F3), M(F3, "[[1,2],[0,X^1]]")));
  CHECK(!member(KappaMap(KappaVariant::ut, 2, F3), M(F3, "[[1,0],[2,1]]")));
}

TEST_CASE("kappa values and codomains on stated inputs") {
  MatrixK id = MatrixK::identity(F3, 2);
  CHECK(kappa(KappaMap(KappaVariant::gl, 2, F3), id) == MatrixK(F3, 2));
  CHECK(kappa(KappaMap(KappaVariant::sl, 2, F3), id) == MatrixK(F3, 2));
  // orth: kappa = theta, and theta(theta(x)) = x recovers skew arguments.
  Rng rng(62);
  KappaMap orth(KappaVariant::orth, 3, Q5);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixK x = sample_skew(rng, Q5, 3, -1, 1);
    if (!in_omega(x)) continue;
    MatrixK g = theta(x);
    REQUIRE(member(orth, g));
    CHECK(kappa(orth, g) == x);
  }
  CHECK_THROWS_AS(kappa(KappaMap(KappaVariant::sl, 2, F3), M(F3, "[[X^1,0],[0,1]]")),
                  PreconditionError);
  // Orthogonal member outside Omega: the transform itself must refuse.
  MatrixK flip = M(F3, "[[0,1],[1,0]]");
  REQUIRE(member(KappaMap(KappaVariant::orth, 2, F3), flip));
  CHECK(!in_omega(flip));
  CHECK_THROWS_AS(kappa(KappaMap(KappaVariant::orth, 2, F3), flip), PreconditionError);
}

TEST_CASE("variant construction constraints") {
  CHECK_THROWS_AS(KappaMap(KappaVariant::sl, 3, F3), PreconditionError);
  CHECK_THROWS_AS(KappaMap(KappaVariant::sl, 2, FieldContext::laurent(2)), PreconditionError);
  CHECK_NOTHROW(KappaMap(KappaVariant::sl, 2, F3));
  CHECK_NOTHROW(KappaMap(KappaVariant::sl, 3, Q5));  // char 0: any n
  CHECK_THROWS_AS(KappaMap(KappaVariant::orth, 2, FieldContext::laurent(2)), PreconditionError);
  CHECK_NOTHROW(KappaMap(KappaVariant::orth, 2, Q2));
}

TEST_CASE("equivariance on stated pairs") {
  Rng rng(63);
  SUBCASE("gl over both kinds") {
    for (int trial = 0; trial < 30; ++trial) {
      const FieldContext& ctx = trial % 2 ? F3 : Q5;
      KappaMap map(KappaVariant::gl, 2, ctx);
      MatrixK g = sample_invertible(rng, ctx, 2, -2, 2);
      MatrixK y = sample_invertible(rng, ctx, 2, -2, 2);
      CHECK(equivariance_check(map, g, y));
    }
  }
  SUBCASE("y = 1 sends both sides to zero") {
    KappaMap map(KappaVariant::gl, 2, F3);
    MatrixK g = M(F3, "[[X^-1,1],[0,2]]");
    MatrixK id = MatrixK::identity(F3, 2);
    CHECK(kappa(map, id) == MatrixK(F3, 2));
    CHECK(equivariance_check(map, g, id));
  }
  SUBCASE("orth: signed permutations against theta images") {
    for (int trial = 0; trial < 30; ++trial) {
      const FieldContext& ctx = trial % 2 ? F5 : Q5;
      KappaMap map(KappaVariant::orth, 3, ctx);
      MatrixK g = sample_signed_permutation(rng, ctx, 3);
      REQUIRE(member(map, g));
      MatrixK x = sample_skew(rng, ctx, 3, -1, 1);
      if (!in_omega(x)) continue;
      MatrixK y = theta(x);
      CHECK(equivariance_check(map, g, y));
    }
  }
}

TEST_CASE("suite reports zero failures") {
  SUBCASE("laurent p=3, n=2") {
    SuiteReport rep = cayley_suite(F3, 2, 120, 7);
    CHECK(rep.total_failures() == 0);
    for (const SuiteLine& l : rep.lines) {
      INFO(l.name);
      CHECK(l.checked == 120);
      CHECK(l.failures == 0);
    }
  }
  SUBCASE("n=1 runs the scalar specialization") {
    SuiteReport rep = cayley_suite(Q5, 1, 60, 8);
    CHECK(rep.total_failures() == 0);
  }
  SUBCASE("p-adic p=5, n=3") {
    SuiteReport rep = cayley_suite(Q5, 3, 40, 9);
    CHECK(rep.total_failures() == 0);
  }
  SUBCASE("sl line is dropped when char divides n") {
    SuiteReport rep = cayley_suite(F3, 3, 10, 10);
    CHECK(rep.total_failures() == 0);
    for (const SuiteLine& l : rep.lines) CHECK(l.name.find("(sl)") == std::string::npos);
  }
  SUBCASE("characteristic 2 is refused") {
    CHECK_THROWS_AS(cayley_suite(FieldContext::laurent(2), 2, 5, 1), PreconditionError);
  }
}

TEST_CASE("suite is deterministic in the seed") {
  SuiteReport a = cayley_suite(F3, 2, 30, 1234);
  SuiteReport b = cayley_suite(F3, 2, 30, 1234);
  REQUIRE(a.lines.size() == b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    CHECK(a.lines[i].checked == b.lines[i].checked);
    CHECK(a.lines[i].failures == b.lines[i].failures);
  }
}

#pragma once

#include <string>
#include <vector>

#include "scaledir/matrix.hpp"

namespace scaledir::cayley {

// The four equivariant group-to-Lie-algebra maps:
//   gl:   kappa(g) = g - 1            on GL_n
//   sl:   kappa(g) = g - (tr(g)/n) 1  on SL_n        (char must not divide n)
//   orth: kappa(g) = (1 - g)(1 + g)^-1 on O_n n Omega (char != 2)
//   ut:   kappa(g) = g - 1            on invertible upper triangulars
enum class KappaVariant { gl, sl, orth, ut };

KappaVariant parse_variant(const std::string& name);
std::string variant_name(KappaVariant v);

struct KappaMap {
  KappaMap(KappaVariant tag, std::size_t n, const FieldContext& ctx);

  KappaVariant tag;
  std::size_t n;
  FieldContext ctx;
};

// Exact group membership predicate for the variant.
bool member(const KappaMap& map, const MatrixK& g);
// Exact Lie-algebra membership (gl: anything, sl: trace 0, orth: skew,
// ut: upper triangular).
bool in_lie_algebra(const KappaMap& map, const MatrixK& x);
// Applies kappa after checking membership (and 1+g invertibility for orth).
MatrixK kappa(const KappaMap& map, const MatrixK& g);

// theta(x) = (1 - x)(1 + x)^-1 on Omega = {1 + x invertible}; requires
// char != 2 (it refuses laurent contexts with p = 2).
MatrixK theta(const MatrixK& x);
bool in_omega(const MatrixK& x);

// kappa(g y g^-1) == g kappa(y) g^-1, evaluated exactly.
bool equivariance_check(const KappaMap& map, const MatrixK& g, const MatrixK& y);

// Seeded identity battery; exact arithmetic, so any failure is a finding,
// not noise.
struct SuiteLine {
  std::string name;
  long checked = 0;
  long failures = 0;
};

struct SuiteReport {
  FieldContext ctx;
  std::size_t n = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteLine> lines;
  long total_failures() const;
};

SuiteReport cayley_suite(const FieldContext& ctx, std::size_t n, long samples,
                         std::uint64_t seed);

}  // namespace scaledir::cayley

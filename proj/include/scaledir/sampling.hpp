#pragma once

#include <cstdint>
#include <random>

#include "scaledir/matrix.hpp"

namespace scaledir {

// Deterministic source for seeded sampling.  All derived draws go through
// explicit arithmetic on mt19937_64 output, never through distribution
// classes, so identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
  long range(long lo, long hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (next() & 1) != 0; }

 private:
  std::mt19937_64 eng_;
};

// Random elements of bounded valuation.  Laurent draws a unit polynomial of
// degree <= 2 times a uniformizer power; p-adic draws a signed fraction with
// p-free numerator and denominator times a p-power.
FieldElement sample_unit(Rng& rng, const FieldContext& ctx);
FieldElement sample_element(Rng& rng, const FieldContext& ctx, long min_val, long max_val,
                            bool allow_zero = true);
MatrixK sample_matrix(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val,
                      long max_val);
MatrixK sample_invertible(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val,
                          long max_val);
// x with x^T = -x and zero diagonal.
MatrixK sample_skew(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val, long max_val);
MatrixK sample_upper_triangular_invertible(Rng& rng, const FieldContext& ctx, std::size_t n,
                                           long min_val, long max_val);
// det == 1.
MatrixK sample_special_linear(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val,
                              long max_val);
// Orthogonal monomial matrix with +-1 entries.
MatrixK sample_signed_permutation(Rng& rng, const FieldContext& ctx, std::size_t n);

}  // namespace scaledir

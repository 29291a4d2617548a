#include "scaledir/sampling.hpp"

namespace scaledir {

FieldElement sample_unit(Rng& rng, const FieldContext& ctx) {
  if (ctx.kind == FieldKind::laurent) {
    FieldElement u = FieldElement::from_integer(ctx, rng.range(1, ctx.p - 1));
    for (long d = 1; d <= 2; ++d)
      if (rng.coin())
        u = u + FieldElement::monomial(ctx, rng.range(1, ctx.p - 1), d);
    return u;
  }
  auto p_free = [&](long lo, long hi) {
    long v = rng.range(lo, hi);
    while (v % ctx.p == 0) v = rng.range(lo, hi);
    return v;
  };
  long num = p_free(1, 9) * (rng.coin() ? 1 : -1);
  long den = p_free(1, 9);
  return FieldElement::from_rational(ctx, mpq_class(num, den));
}

FieldElement sample_element(Rng& rng, const FieldContext& ctx, long min_val, long max_val,
                            bool allow_zero) {
  if (allow_zero && rng.below(4) == 0) return FieldElement::zero(ctx);
  long v = rng.range(min_val, max_val);
  return sample_unit(rng, ctx) * FieldElement::uniformizer_power(ctx, v);
}

MatrixK sample_matrix(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val,
                      long max_val) {
  MatrixK m(ctx, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = sample_element(rng, ctx, min_val, max_val);
  return m;
}

MatrixK sample_invertible(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val,
                          long max_val) {
  while (true) {
    MatrixK m = sample_matrix(rng, ctx, n, min_val, max_val);
    if (!m.determinant().is_zero()) return m;
  }
}

MatrixK sample_skew(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val,
                    long max_val) {
  MatrixK m(ctx, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      FieldElement e = sample_element(rng, ctx, min_val, max_val);
      m.at(i, j) = e;
      m.at(j, i) = -e;
    }
  return m;
}

MatrixK sample_upper_triangular_invertible(Rng& rng, const FieldContext& ctx, std::size_t n,
                                           long min_val, long max_val) {
  MatrixK m(ctx, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = sample_unit(rng, ctx) *
                 FieldElement::uniformizer_power(ctx, rng.range(min_val, max_val));
    for (std::size_t j = i + 1; j < n; ++j)
      m.at(i, j) = sample_element(rng, ctx, min_val, max_val);
  }
  return m;
}

MatrixK sample_special_linear(Rng& rng, const FieldContext& ctx, std::size_t n, long min_val,
                              long max_val) {
  MatrixK m = sample_invertible(rng, ctx, n, min_val, max_val);
  FieldElement det_inv = m.determinant().inverse();
  for (std::size_t j = 0; j < n; ++j) m.at(0, j) = m.at(0, j) * det_inv;
  return m;
}

MatrixK sample_signed_permutation(Rng& rng, const FieldContext& ctx, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(static_cast<long>(i)))]);
  MatrixK m(ctx, n);
  for (std::size_t i = 0; i < n; ++i)
    m.at(perm[i], i) = FieldElement::from_integer(ctx, rng.coin() ? 1 : -1);
  return m;
}

}  // namespace scaledir

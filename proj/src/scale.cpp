#include "scaledir/scale.hpp"

#include <algorithm>

namespace scaledir {

std::vector<FieldElement> char_poly(const MatrixK& m) {
  const FieldContext& ctx = m.context();
  const std::size_t n = m.dim();
  const FieldElement zero = FieldElement::zero(ctx);

  // poly holds the characteristic polynomial of the leading r x r principal
  // submatrix, highest coefficient first.
  std::vector<FieldElement> poly{FieldElement::one(ctx)};
  for (std::size_t r = 1; r <= n; ++r) {
    // q[k] entries of the Toeplitz column: q0 = 1, q1 = -a_rr,
    // q_k = -(R * A^{k-2} * S) with R the row strip, S the column strip and
    // A the leading (r-1) principal block.
    std::vector<FieldElement> q;
    q.reserve(r + 1);
    q.push_back(FieldElement::one(ctx));
    q.push_back(-m.at(r - 1, r - 1));
    std::vector<FieldElement> w(r - 1, zero);
    for (std::size_t i = 0; i + 1 < r; ++i) w[i] = m.at(i, r - 1);
    for (std::size_t k = 2; k <= r; ++k) {
      FieldElement dot = zero;
      for (std::size_t i = 0; i + 1 < r; ++i) dot = dot + m.at(r - 1, i) * w[i];
      q.push_back(-dot);
      if (k < r) {
        std::vector<FieldElement> next(r - 1, zero);
        for (std::size_t i = 0; i + 1 < r; ++i)
          for (std::size_t j = 0; j + 1 < r; ++j) next[i] = next[i] + m.at(i, j) * w[j];
        w = std::move(next);
      }
    }
    std::vector<FieldElement> out(r + 1, zero);
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < r && j <= i; ++j) out[i] = out[i] + q[i - j] * poly[j];
    poly = std::move(out);
  }

  std::reverse(poly.begin(), poly.end());  // low order first
  return poly;
}

long scale_exponent(const MatrixK& m) {
  std::vector<FieldElement> c = char_poly(m);
  if (c[0].is_zero()) throw PreconditionError("scale is undefined for a singular matrix");
  long s = 0;
  for (const FieldElement& ci : c) {
    if (ci.is_zero()) continue;
    s = std::max(s, -ci.valuation().value());
  }
  return s;
}

long module_exponent(const MatrixK& m) {
  FieldElement det = m.determinant();
  if (det.is_zero()) throw PreconditionError("module is undefined for a singular matrix");
  return -det.valuation().value();
}

bool moves_to_infinity(const MatrixK& m) { return scale_exponent(m) > 0; }

MatrixK ad_matrix(const MatrixK& g) {
  return MatrixK::kronecker(g, g.inverse().transpose());
}

long inner_scale_exponent(const MatrixK& g) { return scale_exponent(ad_matrix(g)); }

}  // namespace scaledir

#pragma once

// Test-side oracles, kept independent of the library code paths they check:
// coset enumeration for lattice indices and minor-expansion characteristic
// polynomials.

#include <optional>
#include <vector>

#include "scaledir/lattice.hpp"
#include "scaledir/sampling.hpp"

namespace oracles {

using namespace scaledir;

// Brute-force log_q [V : V n W] by enumerating cosets of (O/pi^k)^m with
// pi^k O^m inside V n W (in V's coordinates).  Returns nullopt when the
// enumeration would exceed max_points.
inline std::optional<long> index_exponent_by_enumeration(const BasisLattice& v,
                                                         const BasisLattice& w,
                                                         long max_points) {
  const FieldContext& ctx = v.context();
  const long q = ctx.q();
  const std::size_t m = v.dim();
  MatrixK c = v.basis().inverse() * w.basis();
  MatrixK c_inv = c.inverse();

  // pi^k O^m lies inside C O^m once k clears every denominator of C^-1.
  long k = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const FieldElement& e = c_inv.at(i, j);
      if (!e.is_zero()) k = std::max(k, -e.valuation().value());
    }

  long digits = k * static_cast<long>(m);
  double points = 1;
  for (long i = 0; i < digits; ++i) {
    points *= static_cast<double>(q);
    if (points > static_cast<double>(max_points)) return std::nullopt;
  }

  // Odometer over all digit tuples; count members of (O^m n C O^m) / pi^k O^m.
  std::vector<long> digit(static_cast<std::size_t>(digits), 0);
  long members = 0;
  long total = 0;
  while (true) {
    ++total;
    std::vector<FieldElement> x(m, FieldElement::zero(ctx));
    for (std::size_t i = 0; i < m; ++i)
      for (long d = 0; d < k; ++d) {
        long val = digit[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(d)];
        if (val != 0) x[i] = x[i] + FieldElement::monomial(ctx, val, d);
      }
    bool inside = true;
    for (std::size_t i = 0; i < m && inside; ++i) {
      FieldElement y = FieldElement::zero(ctx);
      for (std::size_t j = 0; j < m; ++j) y = y + c_inv.at(i, j) * x[j];
      inside = y.is_zero() || !(y.valuation() < Valuation::of(0));
    }
    if (inside) ++members;

    std::size_t pos = 0;
    for (; pos < digit.size(); ++pos) {
      if (++digit[pos] < q) break;
      digit[pos] = 0;
    }
    if (pos == digit.size()) break;
  }

  // [O^m : O^m n L] = q^{km} / members, necessarily a q-power.
  if (total % members != 0) return std::nullopt;
  long quotient = total / members;
  long e = 0;
  while (quotient % q == 0) {
    quotient /= q;
    ++e;
  }
  return quotient == 1 ? std::optional<long>(e) : std::nullopt;
}

// det(tI - M) by minor expansion over the polynomial ring K[t]; polynomials
// as low-order-first coefficient vectors.
using PolyK = std::vector<FieldElement>;

inline PolyK poly_add(const PolyK& a, const PolyK& b, const FieldContext& ctx) {
  PolyK r(std::max(a.size(), b.size()), FieldElement::zero(ctx));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  while (r.size() > 1 && r.back().is_zero()) r.pop_back();
  return r;
}

inline PolyK poly_mul(const PolyK& a, const PolyK& b, const FieldContext& ctx) {
  PolyK r(a.size() + b.size() - 1, FieldElement::zero(ctx));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  while (r.size() > 1 && r.back().is_zero()) r.pop_back();
  return r;
}

inline PolyK poly_det(const std::vector<std::vector<PolyK>>& a, const FieldContext& ctx) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  PolyK det{FieldElement::zero(ctx)};
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<PolyK>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<PolyK> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) row.push_back(a[i][j]);
      minor.push_back(std::move(row));
    }
    PolyK term = poly_mul(a[0][col], poly_det(minor, ctx), ctx);
    if (col % 2 == 1)
      for (FieldElement& e : term) e = -e;
    det = poly_add(det, term, ctx);
  }
  return det;
}

inline PolyK char_poly_by_minors(const MatrixK& m) {
  const FieldContext& ctx = m.context();
  const std::size_t n = m.dim();
  std::vector<std::vector<PolyK>> a(n, std::vector<PolyK>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyK entry{-m.at(i, j)};
      if (i == j) entry.push_back(FieldElement::one(ctx));
      a[i][j] = std::move(entry);
    }
  return poly_det(a, ctx);
}

// Random basis lattice with all entry valuations inside [lo, hi].
inline BasisLattice sample_basis_lattice(Rng& rng, const FieldContext& ctx, std::size_t m,
                                         long lo, long hi) {
  while (true) {
    MatrixK b(ctx, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) b.at(i, j) = sample_element(rng, ctx, lo, hi, false);
    if (!b.determinant().is_zero()) return BasisLattice(std::move(b));
  }
}

}  // namespace oracles

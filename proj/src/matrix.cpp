#include "scaledir/matrix.hpp"

#include <cctype>

namespace scaledir {

MatrixK MatrixK::identity(const FieldContext& ctx, std::size_t n) {
  MatrixK m(ctx, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(ctx);
  return m;
}

MatrixK MatrixK::diagonal(const FieldContext& ctx, const std::vector<FieldElement>& entries) {
  MatrixK m(ctx, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
  return m;
}

void MatrixK::require_compatible(const MatrixK& o) const {
  if (!(ctx_ == o.ctx_) || n_ != o.n_)
    throw PreconditionError("matrix context or dimension mismatch");
}

MatrixK MatrixK::operator+(const MatrixK& o) const {
  require_compatible(o);
  MatrixK r(ctx_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

MatrixK MatrixK::operator-(const MatrixK& o) const {
  require_compatible(o);
  MatrixK r(ctx_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

MatrixK MatrixK::operator*(const MatrixK& o) const {
  require_compatible(o);
  MatrixK r(ctx_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const FieldElement& f = at(i, k);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + f * o.at(k, j);
      }
    }
  return r;
}

MatrixK MatrixK::scaled(const FieldElement& c) const {
  MatrixK r(ctx_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

MatrixK MatrixK::transpose() const {
  MatrixK r(ctx_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool MatrixK::operator==(const MatrixK& o) const {
  return ctx_ == o.ctx_ && n_ == o.n_ && a_ == o.a_;
}

FieldElement MatrixK::determinant() const {
  MatrixK g = *this;
  FieldElement det = FieldElement::one(ctx_);
  for (std::size_t t = 0; t < n_; ++t) {
    std::size_t pivot = t;
    while (pivot < n_ && g.at(pivot, t).is_zero()) ++pivot;
    if (pivot == n_) return FieldElement::zero(ctx_);
    if (pivot != t) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(g.at(t, j), g.at(pivot, j));
      det = -det;
    }
    det = det * g.at(t, t);
    for (std::size_t i = t + 1; i < n_; ++i) {
      if (g.at(i, t).is_zero()) continue;
      FieldElement f = g.at(i, t) / g.at(t, t);
      for (std::size_t j = t; j < n_; ++j) g.at(i, j) = g.at(i, j) - f * g.at(t, j);
    }
  }
  return det;
}

MatrixK MatrixK::inverse() const {
  MatrixK g = *this;
  MatrixK inv = identity(ctx_, n_);
  for (std::size_t t = 0; t < n_; ++t) {
    std::size_t pivot = t;
    while (pivot < n_ && g.at(pivot, t).is_zero()) ++pivot;
    if (pivot == n_) throw PreconditionError("singular matrix");
    if (pivot != t)
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(g.at(t, j), g.at(pivot, j));
        std::swap(inv.at(t, j), inv.at(pivot, j));
      }
    FieldElement piv_inv = g.at(t, t).inverse();
    for (std::size_t j = 0; j < n_; ++j) {
      g.at(t, j) = g.at(t, j) * piv_inv;
      inv.at(t, j) = inv.at(t, j) * piv_inv;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == t || g.at(i, t).is_zero()) continue;
      FieldElement f = g.at(i, t);
      for (std::size_t j = 0; j < n_; ++j) {
        g.at(i, j) = g.at(i, j) - f * g.at(t, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(t, j);
      }
    }
  }
  return inv;
}

FieldElement MatrixK::trace() const {
  FieldElement t = FieldElement::zero(ctx_);
  for (std::size_t i = 0; i < n_; ++i) t = t + at(i, i);
  return t;
}

bool MatrixK::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && !at(i, j).is_zero()) return false;
  return true;
}

bool MatrixK::is_upper_triangular() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!at(i, j).is_zero()) return false;
  return true;
}

MatrixK MatrixK::kronecker(const MatrixK& a, const MatrixK& b) {
  a.require_compatible(b);
  std::size_t n = a.dim(), m = b.dim();
  MatrixK r(a.context(), n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l)
          r.at(i * m + k, j * m + l) = a.at(i, j) * b.at(k, l);
    }
  return r;
}

std::string MatrixK::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    out += (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) out += ",";
      out += at(i, j).str();
    }
    out += "]";
  }
  return out + "]";
}

MatrixK parse_matrix(const FieldContext& ctx, std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c, const char* what) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected ") + what, pos);
    ++pos;
  };
  auto peek = [&]() -> char {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  };

  expect('[', "'['");
  std::vector<std::vector<FieldElement>> rows;
  while (true) {
    expect('[', "'[' starting a row");
    std::vector<FieldElement> row;
    while (true) {
      skip_ws();
      std::size_t start = pos;
      // An element extends to the next ',' or ']' at bracket depth zero.
      while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
      if (pos >= text.size()) throw ParseError("unterminated row", pos);
      try {
        row.push_back(parse_element(ctx, text.substr(start, pos - start)));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), start + e.position());
      }
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      ++pos;  // consume ','
    }
    rows.push_back(std::move(row));
    if (peek() == ',') {
      ++pos;
      continue;
    }
    break;
  }
  expect(']', "']' closing the matrix");
  skip_ws();
  if (pos != text.size()) throw ParseError("trailing characters after matrix", pos);

  std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw ParseError("matrix must be square", 0);
  MatrixK m(ctx, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace scaledir

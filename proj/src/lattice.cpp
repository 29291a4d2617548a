#include "scaledir/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <limits>

namespace scaledir {

void ExponentSet::normalize() {
  for (auto it = extra_.begin(); it != extra_.end();) {
    if (*it >= tail_)
      throw PreconditionError("exponent-set exception at or above the tail");
    ++it;
  }
  while (extra_.count(tail_ - 1)) {
    extra_.erase(tail_ - 1);
    --tail_;
  }
}

ExponentSet ExponentSet::tail(long t) { return ExponentSet(t, {}); }

ExponentSet ExponentSet::make(long t, const std::set<long>& plus, const std::set<long>& minus) {
  for (long k : plus)
    if (k >= t) throw PreconditionError("plus-exception must lie below the tail start");
  for (long k : minus)
    if (k < t) throw PreconditionError("minus-exception must lie in the tail");
  if (minus.empty()) return ExponentSet(t, plus);
  // Raise the tail start past the holes, keeping surviving tail members.
  long new_t = *minus.rbegin() + 1;
  std::set<long> extra = plus;
  for (long k = t; k < new_t; ++k)
    if (!minus.count(k)) extra.insert(k);
  return ExponentSet(new_t, std::move(extra));
}

ExponentSet ExponentSet::shifted(long c) const {
  std::set<long> extra;
  for (long k : extra_) extra.insert(k + c);
  return ExponentSet(tail_ + c, std::move(extra));
}

ExponentSet ExponentSet::intersect(const ExponentSet& o) const {
  long t = std::max(tail_, o.tail_);
  std::set<long> extra;
  for (long k : extra_)
    if (o.contains(k)) extra.insert(k);
  for (long k = tail_; k < t; ++k)
    if (o.contains(k)) extra.insert(k);
  return ExponentSet(t, std::move(extra));
}

ExponentSet ExponentSet::unite(const ExponentSet& o) const {
  long t = std::min(tail_, o.tail_);
  std::set<long> extra;
  for (long k : extra_)
    if (k < t) extra.insert(k);
  for (long k : o.extra_)
    if (k < t) extra.insert(k);
  return ExponentSet(t, std::move(extra));
}

bool ExponentSet::subset_of(const ExponentSet& o) const { return difference_count(o) == 0; }

long ExponentSet::difference_count(const ExponentSet& o) const {
  long count = 0;
  for (long k : extra_)
    if (!o.contains(k)) ++count;
  for (long k = tail_; k < std::max(tail_, o.tail_); ++k)
    if (!o.contains(k)) ++count;
  return count;
}

std::string ExponentSet::str() const {
  std::string out = "tail=" + std::to_string(tail_);
  if (!extra_.empty()) {
    out += "; plus={";
    bool first = true;
    for (long k : extra_) {
      if (!first) out += ",";
      out += std::to_string(k);
      first = false;
    }
    out += "}";
  }
  return out;
}

MonomialLattice MonomialLattice::standard(std::size_t m) {
  return MonomialLattice(std::vector<ExponentSet>(m, ExponentSet::tail(0)));
}

std::string MonomialLattice::str() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += " | ";
    out += coords_[i].str();
  }
  return out;
}

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw PreconditionError("lattice dimension mismatch");
}

}  // namespace

long index_exponent(const MonomialLattice& v, const MonomialLattice& w) {
  require_same_dim(v.dim(), w.dim());
  long e = 0;
  for (std::size_t i = 0; i < v.dim(); ++i) e += v.coord(i).difference_count(w.coord(i));
  return e;
}

DplusD dplus_d(const MonomialLattice& v, const MonomialLattice& w) {
  long vw = index_exponent(v, w);
  long wv = index_exponent(w, v);
  return {vw, wv, vw + wv};
}

MonomialLattice intersect(const MonomialLattice& v, const MonomialLattice& w) {
  require_same_dim(v.dim(), w.dim());
  std::vector<ExponentSet> coords;
  coords.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) coords.push_back(v.coord(i).intersect(w.coord(i)));
  return MonomialLattice(std::move(coords));
}

bool subset(const MonomialLattice& v, const MonomialLattice& w) {
  return index_exponent(v, w) == 0;
}

namespace {

std::set<long> parse_int_set(std::string_view text, std::size_t& pos, std::size_t base) {
  std::set<long> out;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '{') throw ParseError("expected '{'", base + pos);
  ++pos;
  skip_ws();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
    return out;
  }
  while (true) {
    skip_ws();
    bool neg = pos < text.size() && text[pos] == '-';
    if (neg) ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected an integer", base + pos);
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + (text[pos++] - '0');
    out.insert(neg ? -v : v);
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return out;
    }
    throw ParseError("expected ',' or '}'", base + pos);
  }
}

ExponentSet parse_clause(std::string_view clause, std::size_t base) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < clause.size() && std::isspace(static_cast<unsigned char>(clause[pos]))) ++pos;
  };
  auto expect_word = [&](std::string_view w) {
    skip_ws();
    if (clause.substr(pos, w.size()) != w)
      throw ParseError("expected '" + std::string(w) + "'", base + pos);
    pos += w.size();
  };
  expect_word("tail");
  expect_word("=");
  skip_ws();
  bool neg = pos < clause.size() && clause[pos] == '-';
  if (neg) ++pos;
  if (pos >= clause.size() || !std::isdigit(static_cast<unsigned char>(clause[pos])))
    throw ParseError("expected an integer tail start", base + pos);
  long t = 0;
  while (pos < clause.size() && std::isdigit(static_cast<unsigned char>(clause[pos])))
    t = t * 10 + (clause[pos++] - '0');
  if (neg) t = -t;

  std::set<long> plus, minus;
  while (true) {
    skip_ws();
    if (pos >= clause.size()) break;
    if (clause[pos] != ';') throw ParseError("expected ';'", base + pos);
    ++pos;
    skip_ws();
    if (clause.substr(pos, 4) == "plus") {
      pos += 4;
      expect_word("=");
      plus = parse_int_set(clause, pos, base);
    } else if (clause.substr(pos, 5) == "minus") {
      pos += 5;
      expect_word("=");
      minus = parse_int_set(clause, pos, base);
    } else {
      throw ParseError("expected 'plus' or 'minus'", base + pos);
    }
  }
  try {
    return ExponentSet::make(t, plus, minus);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), base);
  }
}

}  // namespace

MonomialLattice parse_monomial_lattice(std::string_view text) {
  std::vector<ExponentSet> coords;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = text.find('|', start);
    std::string_view clause =
        bar == std::string_view::npos ? text.substr(start) : text.substr(start, bar - start);
    coords.push_back(parse_clause(clause, start));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return MonomialLattice(std::move(coords));
}

BasisLattice::BasisLattice(MatrixK basis) : basis_(std::move(basis)) {
  if (basis_.determinant().is_zero())
    throw PreconditionError("lattice basis must be invertible");
}

BasisLattice BasisLattice::standard(const FieldContext& ctx, std::size_t m) {
  return BasisLattice(MatrixK::identity(ctx, m));
}

bool BasisLattice::operator==(const BasisLattice& o) const {
  DplusD dd = dplus_d(*this, o);
  return dd.d == 0;
}

namespace {

long valuation_or_large(const FieldElement& e) {
  Valuation v = e.valuation();
  // Only used for pivot comparison; zero never wins a pivot search because
  // an invertible matrix always offers a finite-valuation candidate.
  return v.is_infinite() ? std::numeric_limits<long>::max() : v.value();
}

}  // namespace

SmithDecomposition smith_normal_form(const MatrixK& m) {
  const FieldContext& ctx = m.context();
  const std::size_t n = m.dim();
  MatrixK g = m;
  MatrixK u = MatrixK::identity(ctx, n);
  MatrixK v = MatrixK::identity(ctx, n);
  std::vector<long> d(n, 0);

  for (std::size_t t = 0; t < n; ++t) {
    // Pivot: minimal valuation in the active block, ties by (row, col).
    std::size_t pr = t, pc = t;
    long best = std::numeric_limits<long>::max();
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < n; ++j) {
        long val = valuation_or_large(g.at(i, j));
        if (val < best) {
          best = val;
          pr = i;
          pc = j;
        }
      }
    if (best == std::numeric_limits<long>::max())
      throw PreconditionError("singular matrix has no Smith normal form over the valuation ring");

    if (pr != t) {
      for (std::size_t j = 0; j < n; ++j) std::swap(g.at(t, j), g.at(pr, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(u.at(i, t), u.at(i, pr));
    }
    if (pc != t) {
      for (std::size_t i = 0; i < n; ++i) std::swap(g.at(i, t), g.at(i, pc));
      for (std::size_t j = 0; j < n; ++j) std::swap(v.at(t, j), v.at(pc, j));
    }

    // The pivot divides every active entry, so one sweep clears its row and
    // column with quotients in the valuation ring.
    for (std::size_t i = t + 1; i < n; ++i) {
      if (g.at(i, t).is_zero()) continue;
      FieldElement f = g.at(i, t) / g.at(t, t);
      for (std::size_t j = t; j < n; ++j) g.at(i, j) = g.at(i, j) - f * g.at(t, j);
      for (std::size_t r = 0; r < n; ++r) u.at(r, t) = u.at(r, t) + f * u.at(r, i);
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (g.at(t, j).is_zero()) continue;
      FieldElement f = g.at(t, j) / g.at(t, t);
      for (std::size_t i = t; i < n; ++i) g.at(i, j) = g.at(i, j) - f * g.at(i, t);
      for (std::size_t c = 0; c < n; ++c) v.at(t, c) = v.at(t, c) + f * v.at(j, c);
    }

    // Normalize the pivot u_t * pi^d to pi^d exactly.
    d[t] = best;
    FieldElement unit = g.at(t, t) / FieldElement::uniformizer_power(ctx, best);
    FieldElement unit_inv = unit.inverse();
    for (std::size_t j = t; j < n; ++j) g.at(t, j) = g.at(t, j) * unit_inv;
    for (std::size_t r = 0; r < n; ++r) u.at(r, t) = u.at(r, t) * unit;
  }

  // Min-valuation pivoting makes d ascending by construction.
  assert(std::is_sorted(d.begin(), d.end()));
  return SmithDecomposition{std::move(u), std::move(d), std::move(v)};
}

namespace {

// SNF exponents of basis(V)^-1 * basis(W); positive entries count the cosets
// of V n W inside V, negative ones those of V n W inside W.
std::vector<long> relative_exponents(const BasisLattice& v, const BasisLattice& w) {
  if (!(v.context() == w.context()) || v.dim() != w.dim())
    throw PreconditionError("lattice context or dimension mismatch");
  MatrixK c = v.basis().inverse() * w.basis();
  return smith_normal_form(c).d;
}

}  // namespace

long index_exponent(const BasisLattice& v, const BasisLattice& w) {
  long e = 0;
  for (long di : relative_exponents(v, w)) e += std::max(di, 0L);
  return e;
}

DplusD dplus_d(const BasisLattice& v, const BasisLattice& w) {
  long vw = 0, wv = 0;
  for (long di : relative_exponents(v, w)) {
    vw += std::max(di, 0L);
    wv += std::max(-di, 0L);
  }
  return {vw, wv, vw + wv};
}

BasisLattice intersect(const BasisLattice& v, const BasisLattice& w) {
  const FieldContext& ctx = v.context();
  MatrixK c = v.basis().inverse() * w.basis();
  SmithDecomposition snf = smith_normal_form(c);
  // O^m n C O^m = U diag(pi^max(d,0)) O^m in V's coordinates.
  std::vector<FieldElement> diag;
  diag.reserve(snf.d.size());
  for (long di : snf.d)
    diag.push_back(FieldElement::uniformizer_power(ctx, std::max(di, 0L)));
  return BasisLattice(v.basis() * snf.u * MatrixK::diagonal(ctx, diag));
}

bool subset(const BasisLattice& v, const BasisLattice& w) { return index_exponent(v, w) == 0; }

BasisLattice to_basis_lattice(const MonomialLattice& v, const FieldContext& ctx) {
  if (ctx.kind != FieldKind::laurent)
    throw PreconditionError("monomial lattices convert only over a laurent context");
  std::vector<FieldElement> diag;
  diag.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (!v.coord(i).exceptions().empty())
      throw PreconditionError(
          "monomial lattice with exceptional exponents is not an O-module; "
          "no basis-lattice form exists");
    diag.push_back(FieldElement::uniformizer_power(ctx, v.coord(i).tail_start()));
  }
  return BasisLattice(MatrixK::diagonal(ctx, diag));
}

}  // namespace scaledir

#include "scaledir/automorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace scaledir {

LinearAutomorphism::LinearAutomorphism(MatrixK matrix)
    : matrix_(std::move(matrix)), scale_(::scaledir::scale_exponent(matrix_)) {}

LinearAutomorphism LinearAutomorphism::inverse() const {
  return LinearAutomorphism(matrix_.inverse());
}

BasisLattice LinearAutomorphism::apply(const BasisLattice& v) const {
  return BasisLattice(matrix_ * v.basis());
}

MonomialLattice LinearAutomorphism::apply(const MonomialLattice& v) const {
  if (matrix_.dim() != v.dim())
    throw PreconditionError("automorphism and lattice dimension mismatch");
  if (!matrix_.is_diagonal())
    throw PreconditionError("only diagonal linear maps act on monomial lattices");
  std::vector<ExponentSet> coords;
  coords.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const FieldElement& e = matrix_.at(i, i);
    long shift = e.valuation().value();  // nonzero by invertibility
    if (!v.coord(i).exceptions().empty()) {
      // An F-line F*X^k maps to a line only under a monomial entry.
      bool is_monomial = e.context().kind == FieldKind::laurent &&
                         e.is_laurent_polynomial() && e.terms().size() == 1;
      if (!is_monomial)
        throw PreconditionError(
            "monomial lattice with exceptions requires monomial diagonal entries");
    }
    coords.push_back(v.coord(i).shifted(shift));
  }
  return MonomialLattice(std::move(coords));
}

bool ShiftRule::matches(int coord, long k) const {
  if (coord != coord_in) return false;
  switch (guard) {
    case Guard::ge:
      if (k < bound) return false;
      break;
    case Guard::le:
      if (k > bound) return false;
      break;
    case Guard::eq:
      if (k != bound) return false;
      break;
  }
  if (modulus > 1) {
    long r = (k - residue) % modulus;
    if (r != 0) return false;
  }
  return true;
}

MonomialAutomorphism::MonomialAutomorphism(const FieldContext& ctx, int coords,
                                           std::vector<ShiftRule> rules)
    : ctx_(ctx), coords_(coords), rules_(std::move(rules)), scale_(0) {
  if (ctx_.kind != FieldKind::laurent)
    throw PreconditionError("monomial automorphisms act over a laurent context");
  if (coords_ <= 0) throw PreconditionError("coordinate count must be positive");
  for (const ShiftRule& r : rules_) {
    if (r.coord_in < 0 || r.coord_in >= coords_ || r.coord_out < 0 || r.coord_out >= coords_)
      throw PreconditionError("shift rule coordinate out of range");
    if (r.modulus < 1) throw PreconditionError("congruence modulus must be >= 1");
  }
  check_window_bijection();
  scale_ = pin_scale();
}

std::pair<int, long> MonomialAutomorphism::map_index(int coord, long k) const {
  for (const ShiftRule& r : rules_)
    if (r.matches(coord, k)) return {r.coord_out, k + r.shift};
  throw PreconditionError("no rule matches monomial index (" + std::to_string(coord) + ", " +
                          std::to_string(k) + ")");
}

void MonomialAutomorphism::check_window_bijection() const {
  // Partition + injectivity on a window, surjectivity onto its interior.
  constexpr long kWindow = 64;
  long max_shift = 0;
  for (const ShiftRule& r : rules_) max_shift = std::max(max_shift, std::labs(r.shift));
  std::set<std::pair<int, long>> image;
  for (int c = 0; c < coords_; ++c)
    for (long k = -kWindow; k <= kWindow; ++k) {
      int hits = 0;
      for (const ShiftRule& r : rules_)
        if (r.matches(c, k)) ++hits;
      if (hits != 1)
        throw PreconditionError("rule guards do not partition the index set at (" +
                                std::to_string(c) + ", " + std::to_string(k) + ")");
      if (!image.insert(map_index(c, k)).second)
        throw PreconditionError("rule list is not injective on the test window");
    }
  for (int c = 0; c < coords_; ++c)
    for (long k = -kWindow + max_shift; k <= kWindow - max_shift; ++k)
      if (!image.count({c, k}))
        throw PreconditionError("rule list misses index (" + std::to_string(c) + ", " +
                                std::to_string(k) + ") on the test window");
}

long MonomialAutomorphism::pin_scale() const {
  MonomialLattice base = MonomialLattice::standard(static_cast<std::size_t>(coords_));
  MonomialLattice image = apply(base);
  if (subset(base, image)) return index_exponent(image, base);
  if (subset(image, base)) return 0;
  throw PreconditionError(
      "scale exponent is not pinned by the standard lattice; O^m and its image "
      "are incomparable");
}

MonomialAutomorphism MonomialAutomorphism::inverse() const {
  std::vector<ShiftRule> inv;
  inv.reserve(rules_.size());
  for (const ShiftRule& r : rules_) {
    ShiftRule s;
    s.coord_in = r.coord_out;
    s.coord_out = r.coord_in;
    s.guard = r.guard;
    s.bound = r.bound + r.shift;
    s.modulus = r.modulus;
    s.residue = r.modulus > 1 ? ((r.residue + r.shift) % r.modulus + r.modulus) % r.modulus : 0;
    s.shift = -r.shift;
    inv.push_back(s);
  }
  return MonomialAutomorphism(ctx_, coords_, std::move(inv));
}

namespace {

// {start + j * modulus : j >= 0}
struct Progression {
  long modulus;
  long start;
};

}  // namespace

MonomialLattice MonomialAutomorphism::apply(const MonomialLattice& v) const {
  if (static_cast<int>(v.dim()) != coords_)
    throw PreconditionError("automorphism and lattice dimension mismatch");

  std::vector<std::set<long>> finite(coords_);
  std::vector<std::vector<Progression>> progressions(coords_);

  auto add_point = [&](int coord, long k) { finite[coord].insert(k); };

  for (const ShiftRule& r : rules_) {
    const ExponentSet& s = v.coord(r.coord_in);
    // Finite exceptional exponents pass through pointwise.
    for (long k : s.exceptions())
      if (r.matches(r.coord_in, k)) add_point(r.coord_out, k + r.shift);
    // The tail [t, inf) meets the guard in a finite interval (le / eq) or in
    // a congruence progression (ge).
    long t = s.tail_start();
    switch (r.guard) {
      case ShiftRule::Guard::eq:
        if (r.bound >= t && r.matches(r.coord_in, r.bound))
          add_point(r.coord_out, r.bound + r.shift);
        break;
      case ShiftRule::Guard::le:
        for (long k = t; k <= r.bound; ++k)
          if (r.matches(r.coord_in, k)) add_point(r.coord_out, k + r.shift);
        break;
      case ShiftRule::Guard::ge: {
        long lo = std::max(t, r.bound);
        // Smallest guard member >= lo.
        long rem = ((r.residue - lo) % r.modulus + r.modulus) % r.modulus;
        progressions[r.coord_out].push_back({r.modulus, lo + rem + r.shift});
        break;
      }
    }
  }

  std::vector<ExponentSet> out;
  out.reserve(coords_);
  for (int c = 0; c < coords_; ++c) {
    if (progressions[c].empty())
      throw PreconditionError("image coordinate has no tail; not a compact open subgroup");
    long big = 1;
    for (const Progression& pr : progressions[c]) big = std::lcm(big, pr.modulus);
    // Per residue class mod `big`, the earliest covered member.
    std::map<long, long> class_start;
    for (const Progression& pr : progressions[c]) {
      for (long i = 0; i < big / pr.modulus; ++i) {
        long first = pr.start + i * pr.modulus;
        long res = (first % big + big) % big;
        auto it = class_start.find(res);
        if (it == class_start.end() || first < it->second) class_start[res] = first;
      }
    }
    if (static_cast<long>(class_start.size()) != big)
      throw PreconditionError("image coordinate misses a residue class; not compact open");
    long tail = 0;
    bool first_class = true;
    for (const auto& [res, start] : class_start) {
      tail = first_class ? start : std::max(tail, start);
      first_class = false;
    }
    std::set<long> plus;
    for (const auto& [res, start] : class_start)
      for (long k = start; k < tail; k += big) plus.insert(k);
    for (long k : finite[c])
      if (k < tail) plus.insert(k);
    out.push_back(ExponentSet::make(tail, plus));
  }
  return MonomialLattice(std::move(out));
}

std::vector<FieldElement> MonomialAutomorphism::apply(const std::vector<FieldElement>& z) const {
  if (static_cast<int>(z.size()) != coords_)
    throw PreconditionError("automorphism and element dimension mismatch");
  std::vector<FieldElement> out(coords_, FieldElement::zero(ctx_));
  for (int c = 0; c < coords_; ++c) {
    if (!(z[c].context() == ctx_)) throw PreconditionError("element context mismatch");
    for (const auto& [k, coeff] : z[c].terms()) {
      auto [oc, ok] = map_index(c, k);
      out[oc] = out[oc] + FieldElement::monomial(ctx_, coeff, ok);
    }
  }
  return out;
}

}  // namespace scaledir

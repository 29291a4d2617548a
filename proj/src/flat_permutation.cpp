#include "scaledir/flat_permutation.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

namespace scaledir::flat {

namespace {

long floor_mod(long a, long m) { return ((a % m) + m) % m; }

}  // namespace

ShiftPermutation::ShiftPermutation(long modulus, std::vector<long> shifts,
                                   std::map<long, long> exceptions)
    : modulus_(modulus), shifts_(std::move(shifts)), exceptions_(std::move(exceptions)) {
  validate_and_normalize();
}

ShiftPermutation ShiftPermutation::identity() { return ShiftPermutation(1, {0}); }

void ShiftPermutation::validate_and_normalize() {
  if (modulus_ < 1) throw PreconditionError("modulus must be >= 1");
  if (static_cast<long>(shifts_.size()) != modulus_)
    throw PreconditionError("expected one shift per residue class");

  // Residue targets must permute Z/m; this makes the rule map bijective on Z.
  std::vector<bool> hit(static_cast<std::size_t>(modulus_), false);
  for (long r = 0; r < modulus_; ++r) {
    long t = floor_mod(r + shifts_[static_cast<std::size_t>(r)], modulus_);
    if (hit[static_cast<std::size_t>(t)])
      throw PreconditionError("residue targets collide; rules are not bijective");
    hit[static_cast<std::size_t>(t)] = true;
  }

  auto rule = [&](long j) { return j + shifts_[static_cast<std::size_t>(floor_mod(j, modulus_))]; };

  // Exceptions must permute the rule images of their keys.
  std::set<long> values, rule_images;
  for (const auto& [k, v] : exceptions_) {
    if (!values.insert(v).second)
      throw PreconditionError("exception values collide; table is not bijective");
    rule_images.insert(rule(k));
  }
  if (values != rule_images)
    throw PreconditionError(
        "exception values must be a permutation of the rule images of the keys");

  // Minimal exception table.
  for (auto it = exceptions_.begin(); it != exceptions_.end();)
    it = it->second == rule(it->first) ? exceptions_.erase(it) : std::next(it);

  // Minimal modulus: fold onto the smallest divisor with d-periodic shifts
  // and a valid residue permutation mod d.
  for (long d = 1; d < modulus_; ++d) {
    if (modulus_ % d != 0) continue;
    bool periodic = true;
    for (long r = 0; r < modulus_ && periodic; ++r)
      periodic = shifts_[static_cast<std::size_t>(r)] == shifts_[static_cast<std::size_t>(r % d)];
    if (!periodic) continue;
    std::vector<bool> dhit(static_cast<std::size_t>(d), false);
    bool perm = true;
    for (long r = 0; r < d && perm; ++r) {
      long t = floor_mod(r + shifts_[static_cast<std::size_t>(r)], d);
      if (dhit[static_cast<std::size_t>(t)]) perm = false;
      dhit[static_cast<std::size_t>(t)] = true;
    }
    if (!perm) continue;
    shifts_.resize(static_cast<std::size_t>(d));
    modulus_ = d;
    break;
  }
}

long ShiftPermutation::apply(long j) const {
  auto it = exceptions_.find(j);
  if (it != exceptions_.end()) return it->second;
  return j + shifts_[static_cast<std::size_t>(floor_mod(j, modulus_))];
}

ShiftPermutation ShiftPermutation::inverse() const {
  std::vector<long> inv_shifts(static_cast<std::size_t>(modulus_), 0);
  for (long r = 0; r < modulus_; ++r) {
    long c = shifts_[static_cast<std::size_t>(r)];
    inv_shifts[static_cast<std::size_t>(floor_mod(r + c, modulus_))] = -c;
  }
  std::map<long, long> inv_exc;
  for (const auto& [k, v] : exceptions_) inv_exc[v] = k;
  return ShiftPermutation(modulus_, std::move(inv_shifts), std::move(inv_exc));
}

ShiftPermutation ShiftPermutation::compose(const ShiftPermutation& other) const {
  long m = std::lcm(modulus_, other.modulus_);
  std::vector<long> shifts(static_cast<std::size_t>(m), 0);
  for (long r = 0; r < m; ++r) {
    long mid = r + other.shifts_[static_cast<std::size_t>(floor_mod(r, other.modulus_))];
    shifts[static_cast<std::size_t>(r)] =
        (mid - r) + shifts_[static_cast<std::size_t>(floor_mod(mid, modulus_))];
  }
  // Points whose image must be computed through an exception table: the
  // other's keys plus the preimages of this one's keys.
  std::set<long> affected;
  for (const auto& [k, v] : other.exceptions_) affected.insert(k);
  ShiftPermutation other_inv = other.inverse();
  for (const auto& [k, v] : exceptions_) affected.insert(other_inv.apply(k));
  std::map<long, long> exc;
  for (long j : affected) exc[j] = apply(other.apply(j));
  return ShiftPermutation(m, std::move(shifts), std::move(exc));
}

std::string ShiftPermutation::str() const {
  std::string out = "mod " + std::to_string(modulus_) + ":";
  for (long r = 0; r < modulus_; ++r) {
    long c = shifts_[static_cast<std::size_t>(r)];
    out += (r ? ", " : " ") + std::to_string(r) + " -> " + (c >= 0 ? "+" : "") +
           std::to_string(c) + " @" + std::to_string(floor_mod(r + c, modulus_));
  }
  if (!exceptions_.empty()) {
    out += "; except ";
    bool first = true;
    for (const auto& [k, v] : exceptions_) {
      if (!first) out += ", ";
      out += std::to_string(k) + " -> " + std::to_string(v);
      first = false;
    }
  }
  return out;
}

ShiftPermutation parse_shift_permutation(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect_word = [&](std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) != w)
      throw ParseError("expected '" + std::string(w) + "'", pos);
    pos += w.size();
  };
  auto parse_int = [&]() -> long {
    skip_ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected an integer", pos);
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + (text[pos++] - '0');
    return neg ? -v : v;
  };

  expect_word("mod");
  long m = parse_int();
  if (m < 1) throw ParseError("modulus must be >= 1", pos);
  expect_word(":");
  std::vector<long> shifts(static_cast<std::size_t>(m), 0);
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  while (true) {
    long r = parse_int();
    if (r < 0 || r >= m) throw ParseError("residue out of range", pos);
    if (seen[static_cast<std::size_t>(r)]) throw ParseError("duplicate residue rule", pos);
    seen[static_cast<std::size_t>(r)] = true;
    expect_word("->");
    long c = parse_int();
    expect_word("@");
    long t = parse_int();
    if (floor_mod(r + c, m) != t)
      throw ParseError("stated target residue disagrees with the shift", pos);
    shifts[static_cast<std::size_t>(r)] = c;
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  for (long r = 0; r < m; ++r)
    if (!seen[static_cast<std::size_t>(r)])
      throw ParseError("missing rule for residue " + std::to_string(r), pos);

  std::map<long, long> exc;
  skip_ws();
  if (pos < text.size() && text[pos] == ';') {
    ++pos;
    expect_word("except");
    while (true) {
      long k = parse_int();
      expect_word("->");
      long v = parse_int();
      if (exc.count(k)) throw ParseError("duplicate exception key", pos);
      exc[k] = v;
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  skip_ws();
  if (pos != text.size()) throw ParseError("trailing characters after permutation", pos);
  try {
    return ShiftPermutation(m, std::move(shifts), std::move(exc));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

OrbitResult orbit(const ShiftPermutation& sigma, long j, long cap) {
  if (cap < 1) throw PreconditionError("orbit cap must be >= 1");
  ShiftPermutation inv = sigma.inverse();
  OrbitResult out;
  out.cap = cap;
  std::deque<long> frontier{j};
  out.points.insert(j);
  while (!frontier.empty()) {
    long p = frontier.front();
    frontier.pop_front();
    for (long q : {sigma.apply(p), inv.apply(p)}) {
      if (out.points.count(q)) continue;
      if (static_cast<long>(out.points.size()) >= cap) return out;  // finite stays false
      out.points.insert(q);
      frontier.push_back(q);
    }
  }
  out.finite = true;
  return out;
}

namespace {

struct CycleInfo {
  std::vector<long> members;  // residues
  long total_shift = 0;
};

std::vector<CycleInfo> residue_cycles(const ShiftPermutation& sigma) {
  long m = sigma.modulus();
  std::vector<CycleInfo> cycles;
  std::vector<bool> visited(static_cast<std::size_t>(m), false);
  for (long r = 0; r < m; ++r) {
    if (visited[static_cast<std::size_t>(r)]) continue;
    CycleInfo c;
    long cur = r;
    do {
      visited[static_cast<std::size_t>(cur)] = true;
      c.members.push_back(cur);
      long shift = sigma.shifts()[static_cast<std::size_t>(cur)];
      c.total_shift += shift;
      cur = ((cur + shift) % m + m) % m;
    } while (cur != r);
    cycles.push_back(std::move(c));
  }
  return cycles;
}

}  // namespace

OrbitFiniteness orbit_finiteness(const ShiftPermutation& sigma) {
  OrbitFiniteness out;
  std::vector<CycleInfo> cycles = residue_cycles(sigma);
  long m = sigma.modulus();
  std::vector<long> cycle_shift_of_residue(static_cast<std::size_t>(m), 0);
  for (const CycleInfo& c : cycles) {
    out.cycles.push_back({c.members, c.total_shift});
    for (long r : c.members) cycle_shift_of_residue[static_cast<std::size_t>(r)] = c.total_shift;
  }

  // A cycle with nonzero total shift always carries infinite orbits: points
  // beyond the exception window drift monotonically and never return.
  out.all_finite = true;
  for (const CycleInfo& c : cycles) {
    if (c.total_shift != 0) {
      out.all_finite = false;
      if (!out.infinite_witness_residue) out.infinite_witness_residue = c.members.front();
    }
  }

  if (sigma.exceptions().empty()) return out;

  // Trace the finitely many orbits that meet the exception table.  Partial
  // displacements along a rule cycle are bounded by the sum of |shift|, so a
  // point beyond the window by twice that margin on a nonzero-shift cycle
  // escapes for good, while zero-shift cycles confine their points.
  long margin = m;  // also covers one rule step
  for (long c : sigma.shifts()) margin += std::labs(c);
  long lo = sigma.exceptions().begin()->first, hi = lo;
  for (const auto& [k, v] : sigma.exceptions()) {
    lo = std::min({lo, k, v});
    hi = std::max({hi, k, v});
  }
  lo -= 2 * margin;
  hi += 2 * margin;

  ShiftPermutation inv = sigma.inverse();
  std::set<long> traced;
  for (const auto& [k, v] : sigma.exceptions()) {
    for (long start : {k, v}) {
      if (traced.count(start)) continue;
      OrbitFiniteness::TracedOrbit rec;
      rec.start = start;
      std::set<long> seen{start};
      std::deque<long> frontier{start};
      bool infinite = false;
      while (!frontier.empty() && !infinite) {
        long p = frontier.front();
        frontier.pop_front();
        if (p < lo || p > hi) {
          long s = cycle_shift_of_residue[static_cast<std::size_t>(((p % m) + m) % m)];
          if (s != 0) {
            infinite = true;
            break;
          }
          // Zero-shift cycle outside the window: the whole rule cycle of p
          // closes without meeting an exception.
          long cur = p;
          do {
            seen.insert(cur);
            cur = cur + sigma.shifts()[static_cast<std::size_t>(((cur % m) + m) % m)];
          } while (cur != p);
          continue;
        }
        for (long q : {sigma.apply(p), inv.apply(p)}) {
          if (seen.insert(q).second) frontier.push_back(q);
        }
      }
      rec.finite = !infinite;
      rec.size = infinite ? 0 : seen.size();
      if (infinite) {
        out.all_finite = false;
        if (!out.infinite_witness_residue)
          out.infinite_witness_residue = ((start % m) + m) % m;
      }
      for (long p : seen) traced.insert(p);
      out.exceptional_orbits.push_back(rec);
    }
  }
  return out;
}

bool pattern_tidy(const ShiftPermutation& sigma, const PatternSubgroup& a) {
  std::set<long> image;
  for (long j : a) image.insert(sigma.apply(j));
  return image == a;
}

std::vector<JointOrbit> joint_finite_orbits(const std::vector<ShiftPermutation>& generators,
                                            long window_lo, long window_hi, long cap) {
  if (generators.empty()) throw PreconditionError("need at least one generator");
  if (window_lo > window_hi) throw PreconditionError("empty window");
  std::vector<ShiftPermutation> gens = generators;
  for (const ShiftPermutation& g : generators) gens.push_back(g.inverse());

  std::vector<JointOrbit> orbits;
  std::set<long> assigned;
  for (long j = window_lo; j <= window_hi; ++j) {
    if (assigned.count(j)) continue;
    JointOrbit orb;
    orb.points.insert(j);
    std::deque<long> frontier{j};
    while (!frontier.empty()) {
      long p = frontier.front();
      frontier.pop_front();
      for (const ShiftPermutation& g : gens) {
        long q = g.apply(p);
        if (orb.points.count(q)) continue;
        if (static_cast<long>(orb.points.size()) >= cap) {
          orb.exceeded_cap = true;
          frontier.clear();
          break;
        }
        orb.points.insert(q);
        frontier.push_back(q);
      }
    }
    for (long p : orb.points)
      if (p >= window_lo && p <= window_hi) assigned.insert(p);
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

}  // namespace scaledir::flat

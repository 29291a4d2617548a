#include "scaledir/fp_poly.hpp"

#include <cassert>
#include <stdexcept>

namespace scaledir::fp {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid; p prime and a != 0 mod p.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

bool is_zero(const Poly& a) { return a.empty(); }

long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

long low_order(const Poly& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) return static_cast<long>(i);
  return -1;
}

Poly constant(std::uint64_t c, std::uint64_t p) {
  c %= p;
  if (c == 0) return {};
  return {c};
}

Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = s % p;
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = (i < a.size() ? a[i] : 0);
    std::uint64_t y = (i < b.size() ? b[i] : 0);
    r[i] = (x + p - y) % p;
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::uint64_t c, std::uint64_t p) {
  c %= p;
  if (c == 0) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c % p;
  trim(r);
  return r;
}

void divrem(const Poly& a, const Poly& b, std::uint64_t p, Poly& q, Poly& r) {
  if (b.empty()) throw std::invalid_argument("divrem: division by zero polynomial");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() && !r.empty() ? r.size() - b.size() + 1 : 0, 0);
  std::uint64_t lead_inv = mod_inverse(b.back(), p);
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    std::uint64_t f = r.back() * lead_inv % p;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) {
      r[shift + i] = (r[shift + i] + p - f * b[i] % p) % p;
    }
    trim(r);
  }
  trim(q);
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly q, r;
    divrem(a, b, p, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) a = scale(a, mod_inverse(a.back(), p), p);
  return a;
}

Poly shift_down(const Poly& a, long k) {
  if (k == 0) return a;
  assert(k > 0 && static_cast<std::size_t>(k) <= a.size());
  Poly r(a.begin() + k, a.end());
  trim(r);
  return r;
}

}  // namespace scaledir::fp

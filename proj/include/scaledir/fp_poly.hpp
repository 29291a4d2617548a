#pragma once

#include <cstdint>
#include <vector>

namespace scaledir::fp {

// Dense polynomial over F_p, coefficient of X^i at index i.
// Normal form: no trailing zero coefficients; the zero polynomial is empty.
using Poly = std::vector<std::uint64_t>;

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

void trim(Poly& a);
bool is_zero(const Poly& a);
long degree(const Poly& a);  // -1 for the zero polynomial
long low_order(const Poly& a);  // index of lowest nonzero coefficient; -1 for zero

Poly constant(std::uint64_t c, std::uint64_t p);
Poly add(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly scale(const Poly& a, std::uint64_t c, std::uint64_t p);
// Euclidean division; requires b != 0.
void divrem(const Poly& a, const Poly& b, std::uint64_t p, Poly& q, Poly& r);
// Monic gcd.
Poly gcd(Poly a, Poly b, std::uint64_t p);
// Drop a factor X^k (requires the low k coefficients to vanish).
Poly shift_down(const Poly& a, long k);

}  // namespace scaledir::fp

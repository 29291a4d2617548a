#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <numeric>
#include <optional>
#include <vector>

#include "scaledir/errors.hpp"

namespace scaledir {

// The subgroup side of the direction machinery: exact index exponents
// log_q [V : V n W] plus equality.
template <class S>
concept CompactOpenSubgroup = std::equality_comparable<S> && requires(const S& v, const S& w) {
  { index_exponent(v, w) } -> std::convertible_to<long>;
};

// An automorphism handle acting on a subgroup family: scale exponent,
// inverse, and the subgroup action.
template <class A, class S>
concept AutomorphismOn = CompactOpenSubgroup<S> && requires(const A& a, const S& s) {
  { a.scale_exponent() } -> std::convertible_to<long>;
  { a.inverse() } -> std::convertible_to<A>;
  { a.apply(s) } -> std::convertible_to<S>;
};

// [V, a(V), a^2(V), ..., a^n(V)]
template <class A, class S>
  requires AutomorphismOn<A, S>
std::vector<S> ray(const A& a, const S& base, long n) {
  if (n < 0) throw PreconditionError("ray length must be nonnegative");
  std::vector<S> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(base);
  for (long i = 0; i < n; ++i) out.push_back(a.apply(out.back()));
  return out;
}

// One delta_n evaluation: the minimum over the admissible k-range of
// d_+(a^n(V), b^k(W)) / (n * S_a), with the smallest minimizing k.
struct DeltaSample {
  long n = 0;
  long k = 0;              // smallest minimizer
  long dplus = 0;          // d_+ exponent at that k
  mpq_class value = 0;     // exact rational in [0, 1]
};

struct DeltaTrace {
  std::vector<DeltaSample> samples;  // n = 1..horizon
  mpq_class estimate = 0;            // sup over the upper half-window
  long horizon = 0;
  long scale_a = 0;
  long scale_b = 0;
};

namespace detail {

inline void check_scales(long sa, long sb) {
  if (sa <= 0 || sb <= 0)
    throw PreconditionError(
        "delta machinery requires both automorphisms to move to infinity "
        "(positive scale exponent)");
}

// delta_n against precomputed rays: aV = a^n(V), bW[k] = b^k(W).
template <class S>
DeltaSample delta_n_from_rays(const S& a_n_v, const std::vector<S>& b_ray, long n, long sa,
                              long sb) {
  long k_max = (n * sa) / sb;
  if (k_max < 1)
    throw EmptyKRangeError("empty k-range: S_b^k <= S_a^n has no solution with k >= 1 for n = " +
                           std::to_string(n));
  DeltaSample best;
  best.n = n;
  for (long k = 1; k <= k_max; ++k) {
    long dp = index_exponent(a_n_v, b_ray[static_cast<std::size_t>(k)]);
    if (k == 1 || dp < best.dplus) {
      best.k = k;
      best.dplus = dp;
    }
  }
  best.value = mpq_class(best.dplus, n * sa);
  best.value.canonicalize();
  return best;
}

}  // namespace detail

template <class A, class B, class S>
  requires AutomorphismOn<A, S> && AutomorphismOn<B, S>
DeltaSample delta_n(const A& a, const B& b, const S& v, const S& w, long n) {
  if (n < 1) throw PreconditionError("delta_n requires n >= 1");
  long sa = a.scale_exponent(), sb = b.scale_exponent();
  detail::check_scales(sa, sb);
  long k_max = (n * sa) / sb;
  std::vector<S> b_ray = ray(b, w, std::max(k_max, 0L));
  S a_n_v = ray(a, v, n).back();
  return detail::delta_n_from_rays(a_n_v, b_ray, n, sa, sb);
}

// Finite-horizon estimate of delta_+ = limsup_n delta_n: the full trace for
// n = 1..horizon plus the sup over the upper half-window [ceil(N/2), N].
// This is an estimate, not a proof; it is exact whenever the true sequence
// is eventually constant or periodic within the window.
template <class A, class B, class S>
  requires AutomorphismOn<A, S> && AutomorphismOn<B, S>
DeltaTrace delta_plus(const A& a, const B& b, const S& v, const S& w, long horizon) {
  if (horizon < 2) throw PreconditionError("delta_plus horizon must be >= 2");
  long sa = a.scale_exponent(), sb = b.scale_exponent();
  detail::check_scales(sa, sb);
  DeltaTrace trace;
  trace.horizon = horizon;
  trace.scale_a = sa;
  trace.scale_b = sb;
  long k_cap = (horizon * sa) / sb;
  if (k_cap < 1)
    throw EmptyKRangeError("empty k-range for every n up to the horizon");
  std::vector<S> b_ray = ray(b, w, k_cap);
  S a_n_v = v;
  for (long n = 1; n <= horizon; ++n) {
    a_n_v = a.apply(a_n_v);
    // Skip the initial n for which the k-range is still empty.
    if ((n * sa) / sb < 1) continue;
    trace.samples.push_back(detail::delta_n_from_rays(a_n_v, b_ray, n, sa, sb));
  }
  long window_lo = (horizon + 1) / 2;
  for (const DeltaSample& s : trace.samples)
    if (s.n >= window_lo && s.value > trace.estimate) trace.estimate = s.value;
  return trace;
}

// delta(a, b) = delta_+(a, b) + delta_+(b, a); symmetric by construction.
template <class A, class B, class S>
  requires AutomorphismOn<A, S> && AutomorphismOn<B, S>
mpq_class delta(const A& a, const B& b, const S& v, const S& w, long horizon) {
  mpq_class forward = delta_plus(a, b, v, w, horizon).estimate;
  mpq_class backward = delta_plus(b, a, w, v, horizon).estimate;
  mpq_class sum = forward + backward;
  sum.canonicalize();
  return sum;
}

// Asymptoticity probe: the sequence d(a^{nk}(V), b^{nl}(W)) with the powers
// k = S_b/g, l = S_a/g equalizing the scale growth of both sides.  The
// verdict is finite-horizon evidence: "bounded" when the last quarter of the
// trace is constant, never a proof.
struct AsymptoticVerdict {
  bool bounded = false;
  long bound = 0;  // max of the trace when bounded
  std::vector<long> trace;
  long power_a = 1;  // k
  long power_b = 1;  // l
};

template <class A, class B, class S>
  requires AutomorphismOn<A, S> && AutomorphismOn<B, S>
AsymptoticVerdict asymptotic_verdict(const A& a, const B& b, const S& v, const S& w,
                                     long horizon) {
  if (horizon < 4) throw PreconditionError("asymptotic horizon must be >= 4");
  long sa = a.scale_exponent(), sb = b.scale_exponent();
  detail::check_scales(sa, sb);
  long g = std::gcd(sa, sb);
  AsymptoticVerdict verdict;
  verdict.power_a = sb / g;
  verdict.power_b = sa / g;
  S av = v, bw = w;
  for (long n = 1; n <= horizon; ++n) {
    for (long i = 0; i < verdict.power_a; ++i) av = a.apply(av);
    for (long i = 0; i < verdict.power_b; ++i) bw = b.apply(bw);
    verdict.trace.push_back(index_exponent(av, bw) + index_exponent(bw, av));
  }
  long tail_lo = (3 * horizon) / 4;  // 1-based index of the last quarter
  verdict.bounded = true;
  for (std::size_t i = static_cast<std::size_t>(tail_lo); i < verdict.trace.size(); ++i)
    if (verdict.trace[i] != verdict.trace[static_cast<std::size_t>(tail_lo) - 1])
      verdict.bounded = false;
  if (verdict.bounded)
    verdict.bound = *std::max_element(verdict.trace.begin(), verdict.trace.end());
  return verdict;
}

// Smallest n <= cap with a^n(V) not contained in W, for V <= W.
struct InfinityWitness {
  std::optional<long> n;
  long cap = 0;
};

template <class A, class S>
  requires AutomorphismOn<A, S>
InfinityWitness moves_to_infinity_witness(const A& a, const S& v, const S& w, long cap) {
  if (index_exponent(v, w) != 0)
    throw PreconditionError("moves_to_infinity_witness requires V to be a subgroup of W");
  InfinityWitness out;
  out.cap = cap;
  S u = v;
  for (long n = 1; n <= cap; ++n) {
    u = a.apply(u);
    if (index_exponent(u, w) > 0) {
      out.n = n;
      return out;
    }
  }
  return out;
}

}  // namespace scaledir

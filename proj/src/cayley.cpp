#include "scaledir/cayley.hpp"

#include "scaledir/sampling.hpp"

namespace scaledir::cayley {

KappaVariant parse_variant(const std::string& name) {
  if (name == "gl") return KappaVariant::gl;
  if (name == "sl") return KappaVariant::sl;
  if (name == "orth") return KappaVariant::orth;
  if (name == "ut") return KappaVariant::ut;
  throw PreconditionError("unknown kappa variant: " + name);
}

std::string variant_name(KappaVariant v) {
  switch (v) {
    case KappaVariant::gl: return "gl";
    case KappaVariant::sl: return "sl";
    case KappaVariant::orth: return "orth";
    case KappaVariant::ut: return "ut";
  }
  return "?";
}

KappaMap::KappaMap(KappaVariant tag_, std::size_t n_, const FieldContext& ctx_)
    : tag(tag_), n(n_), ctx(ctx_) {
  if (n == 0) throw PreconditionError("dimension must be positive");
  if (tag == KappaVariant::sl && ctx.kind == FieldKind::laurent &&
      static_cast<long>(n) % ctx.p == 0)
    throw PreconditionError("sl variant needs the characteristic not to divide n");
  if (tag == KappaVariant::orth && ctx.kind == FieldKind::laurent && ctx.p == 2)
    throw PreconditionError("orth variant needs characteristic != 2");
}

bool member(const KappaMap& map, const MatrixK& g) {
  if (g.dim() != map.n || !(g.context() == map.ctx))
    throw PreconditionError("matrix does not match the kappa map's dimension or context");
  switch (map.tag) {
    case KappaVariant::gl:
      return !g.determinant().is_zero();
    case KappaVariant::sl:
      return g.determinant().is_one();
    case KappaVariant::orth:
      return g.transpose() * g == MatrixK::identity(map.ctx, map.n);
    case KappaVariant::ut:
      return g.is_upper_triangular() && !g.determinant().is_zero();
  }
  return false;
}

bool in_lie_algebra(const KappaMap& map, const MatrixK& x) {
  switch (map.tag) {
    case KappaVariant::gl:
      return true;
    case KappaVariant::sl:
      return x.trace().is_zero();
    case KappaVariant::orth:
      return x.transpose() == x.scaled(FieldElement::from_integer(map.ctx, -1));
    case KappaVariant::ut:
      return x.is_upper_triangular();
  }
  return false;
}

bool in_omega(const MatrixK& x) {
  MatrixK one_plus = MatrixK::identity(x.context(), x.dim()) + x;
  return !one_plus.determinant().is_zero();
}

MatrixK theta(const MatrixK& x) {
  const FieldContext& ctx = x.context();
  if (ctx.kind == FieldKind::laurent && ctx.p == 2)
    throw PreconditionError("the Cayley transform requires characteristic != 2");
  MatrixK id = MatrixK::identity(ctx, x.dim());
  MatrixK one_plus = id + x;
  if (one_plus.determinant().is_zero())
    throw PreconditionError("1 + x is singular; x lies outside Omega");
  return (id - x) * one_plus.inverse();
}

MatrixK kappa(const KappaMap& map, const MatrixK& g) {
  if (!member(map, g)) throw PreconditionError("matrix is not a member of the variant's group");
  MatrixK id = MatrixK::identity(map.ctx, map.n);
  switch (map.tag) {
    case KappaVariant::gl:
    case KappaVariant::ut:
      return g - id;
    case KappaVariant::sl: {
      FieldElement ratio = g.trace() / FieldElement::from_integer(map.ctx, static_cast<long>(map.n));
      return g - id.scaled(ratio);
    }
    case KappaVariant::orth:
      return theta(g);
  }
  throw PreconditionError("unreachable kappa variant");
}

bool equivariance_check(const KappaMap& map, const MatrixK& g, const MatrixK& y) {
  MatrixK g_inv = g.inverse();
  MatrixK lhs = kappa(map, g * y * g_inv);
  MatrixK rhs = g * kappa(map, y) * g_inv;
  return lhs == rhs;
}

long SuiteReport::total_failures() const {
  long t = 0;
  for (const SuiteLine& l : lines) t += l.failures;
  return t;
}

namespace {

MatrixK sample_skew_in_omega(Rng& rng, const FieldContext& ctx, std::size_t n) {
  while (true) {
    MatrixK x = sample_skew(rng, ctx, n, -2, 2);
    if (in_omega(x)) return x;
  }
}

MatrixK sample_in_omega(Rng& rng, const FieldContext& ctx, std::size_t n) {
  while (true) {
    MatrixK x = sample_matrix(rng, ctx, n, -2, 2);
    if (in_omega(x)) return x;
  }
}

// Orthogonal sampling: theta of a skew matrix, optionally mixed with a
// signed permutation.  theta-circularity is broken by verifying g^T g = 1 by
// direct multiplication inside the suite.
MatrixK sample_orthogonal(Rng& rng, const FieldContext& ctx, std::size_t n) {
  MatrixK g = theta(sample_skew_in_omega(rng, ctx, n));
  if (rng.coin()) g = sample_signed_permutation(rng, ctx, n) * g;
  return g;
}

MatrixK sample_member(Rng& rng, const KappaMap& map) {
  switch (map.tag) {
    case KappaVariant::gl:
      return sample_invertible(rng, map.ctx, map.n, -2, 2);
    case KappaVariant::sl:
      return sample_special_linear(rng, map.ctx, map.n, -2, 2);
    case KappaVariant::orth:
      return sample_orthogonal(rng, map.ctx, map.n);
    case KappaVariant::ut:
      return sample_upper_triangular_invertible(rng, map.ctx, map.n, -2, 2);
  }
  throw PreconditionError("unreachable kappa variant");
}

// y must additionally lie in kappa's domain, which only restricts orth.
MatrixK sample_domain_member(Rng& rng, const KappaMap& map) {
  if (map.tag != KappaVariant::orth) return sample_member(rng, map);
  return theta(sample_skew_in_omega(rng, map.ctx, map.n));
}

}  // namespace

SuiteReport cayley_suite(const FieldContext& ctx, std::size_t n, long samples,
                         std::uint64_t seed) {
  if (ctx.kind == FieldKind::laurent && ctx.p == 2)
    throw PreconditionError("the Cayley suite requires characteristic != 2");
  SuiteReport report;
  report.ctx = ctx;
  report.n = n;
  report.samples = samples;
  report.seed = seed;

  MatrixK id = MatrixK::identity(ctx, n);
  MatrixK two = id.scaled(FieldElement::from_integer(ctx, 2));

  auto fnv1a = [](const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
  };
  auto run = [&](const std::string& name, auto&& body) {
    SuiteLine line{name, 0, 0};
    for (long i = 0; i < samples; ++i) {
      // Per-sample derived seed keeps results independent of evaluation order
      // and of the platform's hash implementation.
      Rng rng(seed * 0x9e3779b97f4a7c15ULL +
              static_cast<std::uint64_t>(i) * 0xff51afd7ed558ccdULL + fnv1a(name));
      ++line.checked;
      if (!body(rng)) ++line.failures;
    }
    report.lines.push_back(std::move(line));
  };

  run("theta involution: theta(theta(x)) = x on Omega", [&](Rng& rng) {
    MatrixK x = sample_in_omega(rng, ctx, n);
    return theta(theta(x)) == x;
  });

  run("theta inverse identity: (1+theta(x))(1+x) = 2", [&](Rng& rng) {
    MatrixK x = sample_in_omega(rng, ctx, n);
    return (id + theta(x)) * (id + x) == two;
  });

  run("orth to skew: g in O_n n Omega => theta(g) skew, in Omega", [&](Rng& rng) {
    MatrixK g = sample_orthogonal(rng, ctx, n);
    if (!(g.transpose() * g == id)) return false;  // direct orthogonality check
    if (!in_omega(g)) return true;                 // outside the chart; nothing to test
    MatrixK x = theta(g);
    return x.transpose() == x.scaled(FieldElement::from_integer(ctx, -1)) && in_omega(x);
  });

  run("skew to orth: x skew n Omega => theta(x)^T theta(x) = 1", [&](Rng& rng) {
    MatrixK x = sample_skew_in_omega(rng, ctx, n);
    MatrixK g = theta(x);
    return g.transpose() * g == id && in_omega(g);
  });

  for (KappaVariant tag :
       {KappaVariant::gl, KappaVariant::sl, KappaVariant::orth, KappaVariant::ut}) {
    if (tag == KappaVariant::sl && ctx.kind == FieldKind::laurent &&
        static_cast<long>(n) % ctx.p == 0)
      continue;  // kappa_sl undefined when char divides n
    KappaMap map(tag, n, ctx);
    run("kappa codomain (" + variant_name(tag) + ")", [&](Rng& rng) {
      MatrixK y = sample_domain_member(rng, map);
      return in_lie_algebra(map, kappa(map, y));
    });
    run("equivariance (" + variant_name(tag) + ")", [&](Rng& rng) {
      MatrixK g = sample_member(rng, map);
      MatrixK y = sample_domain_member(rng, map);
      return equivariance_check(map, g, y);
    });
  }

  run("gl section: kappa_gl(g) + 1 = g", [&](Rng& rng) {
    KappaMap map(KappaVariant::gl, n, ctx);
    MatrixK g = sample_member(rng, map);
    return kappa(map, g) + id == g;
  });

  if (!(ctx.kind == FieldKind::laurent && static_cast<long>(n) % ctx.p == 0)) {
    run("sl derivative at 1: kappa_sl(1 + eps h) = eps h for trace-free h", [&](Rng& rng) {
      MatrixK h = sample_matrix(rng, ctx, n, -1, 1);
      // Make h trace-free by cancelling the trace on the last diagonal entry.
      h.at(n - 1, n - 1) = h.at(n - 1, n - 1) - h.trace();
      FieldElement eps = sample_element(rng, ctx, 1, 3, false);
      MatrixK arg = id + h.scaled(eps);
      FieldElement ratio =
          arg.trace() / FieldElement::from_integer(ctx, static_cast<long>(n));
      MatrixK lhs = arg - id.scaled(ratio);
      return lhs == h.scaled(eps);
    });
  }

  return report;
}

}  // namespace scaledir::cayley

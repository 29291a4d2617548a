#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "scaledir/cayley.hpp"
#include "scaledir/directions.hpp"
#include "scaledir/examples.hpp"
#include "scaledir/flat_permutation.hpp"
#include "scaledir/report.hpp"

namespace {

using namespace scaledir;

FieldContext parse_field_spec(const std::string& spec) {
  std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError("field spec must look like laurent:2 or padic:3", 0);
  std::string kind = spec.substr(0, colon);
  long p = 0;
  try {
    p = std::stol(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw ParseError("field spec needs a prime after ':'", colon + 1);
  }
  if (!is_prime(p)) throw ParseError("field characteristic/prime must be prime", colon + 1);
  if (kind == "laurent") return FieldContext::laurent(p);
  if (kind == "padic") return FieldContext::padic(p);
  throw ParseError("field kind must be 'laurent' or 'padic'", 0);
}

std::string q_str(const mpq_class& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string join_longs(const std::vector<long>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

struct Output {
  bool structured = false;
  void emit(const Report& report) const {
    std::cout << (structured ? report.structured() : report.human());
  }
};

void add_config(Report& report, const std::string& command,
                const std::vector<std::pair<std::string, std::string>>& kv) {
  Record& r = report.add("config");
  r.field("command", command);
  for (const auto& [k, v] : kv) r.field(k, v);
}

// ---- delta-seq / asymptotic dispatch over the built-in case studies ----

template <class A, class B, class S>
void emit_delta_seq(Report& report, const A& a, const B& b, const S& v, const S& w, long n) {
  DeltaTrace tr = delta_plus(a, b, v, w, n);
  for (const DeltaSample& s : tr.samples) {
    Record& r = report.add("delta_n");
    r.field("n", s.n);
    r.field("k", s.k);
    r.field("dplus", s.dplus);
    r.field("value", q_str(s.value));
  }
  DeltaTrace back = delta_plus(b, a, w, v, n);
  mpq_class total = tr.estimate + back.estimate;
  total.canonicalize();
  Record& r = report.add("summary");
  r.field("scale_a", tr.scale_a);
  r.field("scale_b", tr.scale_b);
  r.field("delta_plus_forward", q_str(tr.estimate));
  r.field("delta_plus_backward", q_str(back.estimate));
  r.field("delta", q_str(total));
  r.field("horizon", tr.horizon);
  r.field("note", "finite-horizon estimate (sup over upper half-window)");
}

template <class A, class B, class S>
void emit_asymptotic(Report& report, const A& a, const B& b, const S& v, const S& w, long n) {
  AsymptoticVerdict verdict = asymptotic_verdict(a, b, v, w, n);
  Record& r = report.add("asymptotic");
  r.field("verdict", verdict.bounded ? "bounded" : "growing");
  if (verdict.bounded) r.field("bound", verdict.bound);
  r.field("power_a", verdict.power_a);
  r.field("power_b", verdict.power_b);
  r.field("trace", join_longs(verdict.trace));
  r.field("note", "finite-horizon evidence, not a proof");
}

template <class Emit>
void dispatch_example_pair(const std::string& id, const std::string& on, long p, Emit&& emit) {
  bool linear = on == "linear";
  if (id == "ex22") {
    examples::Ex22 ex = examples::build_ex22(p);
    if (linear)
      emit(ex.l_alpha, ex.l_beta, ex.o2, ex.o2);
    else
      emit(ex.alpha, ex.beta, ex.o2, ex.o2);
    return;
  }
  if (id == "ex23") {
    examples::Ex23 ex = examples::build_ex23(p);
    if (linear)
      emit(ex.alpha, ex.alpha, ex.o1, ex.o1);  // L(alpha) = L(beta) = alpha
    else
      emit(ex.alpha, ex.beta, ex.o1, ex.o1);
    return;
  }
  if (id == "ex24") {
    if (linear) {
      FieldContext ctx = FieldContext::padic(p);
      LinearAutomorphism l(
          MatrixK::diagonal(ctx, {FieldElement::uniformizer_power(ctx, -1)}));
      BasisLattice zp = BasisLattice::standard(ctx, 1);
      emit(l, l, zp, zp);
    } else {
      examples::Ex24 ex = examples::build_ex24(p);
      emit(ex.alpha, ex.beta, ex.v, ex.v);
    }
    return;
  }
  throw PreconditionError("unknown case id: " + id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact scale, tidiness and direction computations over local fields"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human";
  app.add_option("--format", format, "output format: human or structured")
      ->check(CLI::IsMember({"human", "structured"}));

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "echo canonical forms of the text grammars");
  std::string pr_field = "laurent:2", pr_element, pr_matrix, pr_lattice, pr_perm;
  cmd_parse->add_option("--field", pr_field, "field spec, e.g. laurent:2 or padic:3");
  cmd_parse->add_option("--element", pr_element, "field element text");
  cmd_parse->add_option("--matrix", pr_matrix, "matrix text [[..],[..]]");
  cmd_parse->add_option("--lattice", pr_lattice, "monomial lattice text");
  cmd_parse->add_option("--perm", pr_perm, "shift permutation text");

  // scale / module / inner-scale
  std::string sc_field = "laurent:2", sc_matrix;
  auto* cmd_scale = app.add_subcommand("scale", "scale exponent of a linear automorphism");
  cmd_scale->add_option("--field", sc_field)->required();
  cmd_scale->add_option("--matrix", sc_matrix)->required();
  auto* cmd_module = app.add_subcommand("module", "Haar-module exponent of a linear map");
  cmd_module->add_option("--field", sc_field)->required();
  cmd_module->add_option("--matrix", sc_matrix)->required();
  auto* cmd_inner = app.add_subcommand("inner-scale", "scale exponent of conjugation by g");
  cmd_inner->add_option("--field", sc_field)->required();
  cmd_inner->add_option("--matrix", sc_matrix)->required();

  // dplus
  auto* cmd_dplus = app.add_subcommand("dplus", "d+ and d between two compact open subgroups");
  std::string dp_field = "laurent:2", dp_mono_v, dp_mono_w, dp_basis_v, dp_basis_w;
  cmd_dplus->add_option("--field", dp_field);
  cmd_dplus->add_option("--monomial-v", dp_mono_v, "monomial lattice V");
  cmd_dplus->add_option("--monomial-w", dp_mono_w, "monomial lattice W");
  cmd_dplus->add_option("--basis-v", dp_basis_v, "basis matrix of V");
  cmd_dplus->add_option("--basis-w", dp_basis_w, "basis matrix of W");

  // delta-seq / asymptotic
  auto* cmd_delta = app.add_subcommand("delta-seq", "delta_n trace and delta_+ estimates");
  auto* cmd_asym = app.add_subcommand("asymptotic", "bounded-distance probe for a pair");
  std::string dl_example, dl_on = "group", dl_field = "laurent:2";
  std::string dl_matrix_a, dl_matrix_b, dl_basis_v, dl_basis_w;
  long dl_p = 2, dl_n = 20;
  for (CLI::App* c : {cmd_delta, cmd_asym}) {
    c->add_option("--example", dl_example, "built-in pair: ex22, ex23 or ex24");
    c->add_option("--on", dl_on, "group or linear pair of the example")
        ->check(CLI::IsMember({"group", "linear"}));
    c->add_option("--p", dl_p, "prime for the built-in pair");
    c->add_option("--N", dl_n, "horizon");
    c->add_option("--field", dl_field, "field spec (explicit-matrix mode)");
    c->add_option("--matrix-a", dl_matrix_a, "matrix of the first automorphism");
    c->add_option("--matrix-b", dl_matrix_b, "matrix of the second automorphism");
    c->add_option("--basis-v", dl_basis_v, "basis of V (default identity)");
    c->add_option("--basis-w", dl_basis_w, "basis of W (default identity)");
  }

  // reproduce
  auto* cmd_repro = app.add_subcommand("reproduce", "recompute a case study against its targets");
  std::string rp_id;
  long rp_p = 2, rp_n = 50;
  cmd_repro->add_option("id", rp_id, "ex22, ex23 or ex24")->required();
  cmd_repro->add_option("--p", rp_p, "prime");
  cmd_repro->add_option("--N", rp_n, "horizon");

  // cayley
  auto* cmd_cayley = app.add_subcommand("cayley", "Cayley-transform identity suite");
  auto* cmd_cayley_check = cmd_cayley->add_subcommand("check", "run the seeded identity battery");
  std::string cy_field = "laurent:3", cy_variant = "all";
  long cy_n = 2, cy_samples = 200;
  std::uint64_t cy_seed = 1;
  cmd_cayley_check->add_option("--field", cy_field);
  cmd_cayley_check->add_option("--variant", cy_variant, "gl, sl, orth, ut or all (summary only)")
      ->check(CLI::IsMember({"gl", "sl", "orth", "ut", "all"}));
  cmd_cayley_check->add_option("--n", cy_n, "matrix dimension");
  cmd_cayley_check->add_option("--samples", cy_samples);
  cmd_cayley_check->add_option("--seed", cy_seed);

  // flat
  auto* cmd_flat = app.add_subcommand("flat", "residue-class-wise permutation analysis");
  auto* cmd_orbits = cmd_flat->add_subcommand("orbits", "orbit and finiteness analysis");
  auto* cmd_tidy = cmd_flat->add_subcommand("tidy", "pattern-subgroup tidiness");
  auto* cmd_joint = cmd_flat->add_subcommand("joint", "joint orbit partition of a window");
  std::vector<std::string> fl_perms;
  std::string fl_pattern;
  long fl_j = 0, fl_cap = 1000, fl_lo = -20, fl_hi = 20;
  cmd_orbits->add_option("--perm", fl_perms, "permutation text")->required();
  cmd_orbits->add_option("--j", fl_j, "orbit start point");
  cmd_orbits->add_option("--cap", fl_cap);
  cmd_tidy->add_option("--perm", fl_perms, "permutation text")->required();
  cmd_tidy->add_option("--pattern", fl_pattern, "pattern set, e.g. {0,1}")->required();
  cmd_joint->add_option("--perm", fl_perms, "generator (repeatable)")->required();
  cmd_joint->add_option("--window-lo", fl_lo);
  cmd_joint->add_option("--window-hi", fl_hi);
  cmd_joint->add_option("--cap", fl_cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, config errors exit 2
  }

  Output out{format == "structured"};
  Report report;
  try {
    if (cmd_parse->parsed()) {
      FieldContext ctx = parse_field_spec(pr_field);
      add_config(report, "parse", {{"field", ctx.str()}});
      if (!pr_element.empty()) {
        FieldElement e = parse_element(ctx, pr_element);
        Record& r = report.add("element");
        r.field("canonical", e.str());
        r.field("valuation", e.valuation().str());
      }
      if (!pr_matrix.empty()) {
        MatrixK m = parse_matrix(ctx, pr_matrix);
        report.add("matrix").field("canonical", m.str()).field("dim",
                                                               static_cast<long>(m.dim()));
      }
      if (!pr_lattice.empty()) {
        MonomialLattice l = parse_monomial_lattice(pr_lattice);
        report.add("lattice").field("canonical", l.str()).field("dim",
                                                                static_cast<long>(l.dim()));
      }
      if (!pr_perm.empty()) {
        flat::ShiftPermutation s = flat::parse_shift_permutation(pr_perm);
        report.add("perm").field("canonical", s.str()).field("modulus", s.modulus());
      }
    } else if (cmd_scale->parsed() || cmd_module->parsed() || cmd_inner->parsed()) {
      FieldContext ctx = parse_field_spec(sc_field);
      MatrixK m = parse_matrix(ctx, sc_matrix);
      if (cmd_scale->parsed()) {
        add_config(report, "scale", {{"field", ctx.str()}, {"matrix", m.str()}});
        long s = scale_exponent(m);
        Record& r = report.add("result");
        r.field("scale_exponent", s);
        r.field("scale", "q^" + std::to_string(s));
        r.field("moves_to_infinity", s > 0 ? "true" : "false");
      } else if (cmd_module->parsed()) {
        add_config(report, "module", {{"field", ctx.str()}, {"matrix", m.str()}});
        report.add("result").field("module_exponent", module_exponent(m));
      } else {
        add_config(report, "inner-scale", {{"field", ctx.str()}, {"matrix", m.str()}});
        report.add("result").field("scale_exponent", inner_scale_exponent(m));
      }
    } else if (cmd_dplus->parsed()) {
      FieldContext ctx = parse_field_spec(dp_field);
      DplusD dd{};
      if (!dp_mono_v.empty() || !dp_mono_w.empty()) {
        if (dp_mono_v.empty() || dp_mono_w.empty())
          throw PreconditionError("dplus needs both --monomial-v and --monomial-w");
        dd = dplus_d(parse_monomial_lattice(dp_mono_v), parse_monomial_lattice(dp_mono_w));
      } else if (!dp_basis_v.empty() || !dp_basis_w.empty()) {
        if (dp_basis_v.empty() || dp_basis_w.empty())
          throw PreconditionError("dplus needs both --basis-v and --basis-w");
        dd = dplus_d(BasisLattice(parse_matrix(ctx, dp_basis_v)),
                     BasisLattice(parse_matrix(ctx, dp_basis_w)));
      } else {
        throw PreconditionError("dplus needs a monomial or basis lattice pair");
      }
      add_config(report, "dplus", {{"field", ctx.str()}});
      Record& r = report.add("result");
      r.field("dplus_vw", dd.dplus_vw);
      r.field("dplus_wv", dd.dplus_wv);
      r.field("d", dd.d);
    } else if (cmd_delta->parsed() || cmd_asym->parsed()) {
      bool want_delta = cmd_delta->parsed();
      const char* name = want_delta ? "delta-seq" : "asymptotic";
      if (dl_n < 2) throw ParseError("horizon N must be >= 2", 0);
      if (!dl_example.empty()) {
        if (!is_prime(dl_p)) throw ParseError("--p must be prime", 0);
        add_config(report, name,
                   {{"example", dl_example},
                    {"on", dl_on},
                    {"p", std::to_string(dl_p)},
                    {"N", std::to_string(dl_n)}});
        dispatch_example_pair(dl_example, dl_on, dl_p, [&](const auto& a, const auto& b,
                                                           const auto& v, const auto& w) {
          if (want_delta)
            emit_delta_seq(report, a, b, v, w, dl_n);
          else
            emit_asymptotic(report, a, b, v, w, std::max(dl_n, 4L));
        });
      } else {
        if (dl_matrix_a.empty() || dl_matrix_b.empty())
          throw PreconditionError("need --example or both --matrix-a and --matrix-b");
        FieldContext ctx = parse_field_spec(dl_field);
        LinearAutomorphism a(parse_matrix(ctx, dl_matrix_a));
        LinearAutomorphism b(parse_matrix(ctx, dl_matrix_b));
        BasisLattice v = dl_basis_v.empty()
                             ? BasisLattice::standard(ctx, a.matrix().dim())
                             : BasisLattice(parse_matrix(ctx, dl_basis_v));
        BasisLattice w = dl_basis_w.empty()
                             ? BasisLattice::standard(ctx, b.matrix().dim())
                             : BasisLattice(parse_matrix(ctx, dl_basis_w));
        add_config(report, name, {{"field", ctx.str()}, {"N", std::to_string(dl_n)}});
        if (want_delta)
          emit_delta_seq(report, a, b, v, w, dl_n);
        else
          emit_asymptotic(report, a, b, v, w, std::max(dl_n, 4L));
      }
    } else if (cmd_repro->parsed()) {
      if (!is_prime(rp_p)) throw ParseError("--p must be prime", 0);
      if (rp_n < 2) throw ParseError("horizon N must be >= 2", 0);
      examples::ReproReport rep = examples::reproduce(rp_id, rp_p, rp_n);
      add_config(report, "reproduce",
                 {{"id", rep.id}, {"p", std::to_string(rep.p)}, {"N", std::to_string(rep.horizon)}});
      for (const examples::ReproLine& l : rep.lines) {
        Record& r = report.add("check");
        r.field("name", l.name);
        r.field("computed", l.computed);
        r.field("target", l.target);
        r.field("match", l.match ? "true" : "false");
      }
      report.add("summary").field("ok", rep.ok() ? "true" : "false");
      out.emit(report);
      return rep.ok() ? 0 : 1;
    } else if (cmd_cayley_check->parsed()) {
      FieldContext ctx = parse_field_spec(cy_field);
      cayley::SuiteReport rep =
          cayley::cayley_suite(ctx, static_cast<std::size_t>(cy_n), cy_samples, cy_seed);
      add_config(report, "cayley check",
                 {{"field", ctx.str()},
                  {"variant", cy_variant},
                  {"n", std::to_string(cy_n)},
                  {"samples", std::to_string(cy_samples)},
                  {"seed", std::to_string(cy_seed)}});
      for (const cayley::SuiteLine& l : rep.lines) {
        if (cy_variant != "all" && l.name.find("(" + cy_variant + ")") == std::string::npos &&
            l.name.find(cy_variant) == std::string::npos)
          continue;
        Record& r = report.add("identity");
        r.field("name", l.name);
        r.field("checked", l.checked);
        r.field("failures", l.failures);
      }
      report.add("summary").field("total_failures", rep.total_failures());
      out.emit(report);
      return rep.total_failures() == 0 ? 0 : 1;
    } else if (cmd_orbits->parsed() || cmd_tidy->parsed() || cmd_joint->parsed()) {
      std::vector<flat::ShiftPermutation> perms;
      for (const std::string& s : fl_perms) perms.push_back(flat::parse_shift_permutation(s));
      if (cmd_orbits->parsed()) {
        add_config(report, "flat orbits",
                   {{"perm", perms[0].str()}, {"j", std::to_string(fl_j)}});
        flat::OrbitResult orb = flat::orbit(perms[0], fl_j, fl_cap);
        Record& r = report.add("orbit");
        r.field("finite", orb.finite ? "true" : "false");
        r.field("size", static_cast<long>(orb.points.size()));
        if (orb.finite)
          r.field("points", join_longs({orb.points.begin(), orb.points.end()}));
        else
          r.field("note", "exceeded cap " + std::to_string(orb.cap));
        flat::OrbitFiniteness fin = flat::orbit_finiteness(perms[0]);
        Record& f = report.add("finiteness");
        f.field("all_finite", fin.all_finite ? "true" : "false");
        if (fin.infinite_witness_residue)
          f.field("witness_residue", *fin.infinite_witness_residue);
        for (const auto& c : fin.cycles) {
          Record& cr = report.add("cycle");
          cr.field("residues", join_longs(c.residues));
          cr.field("total_shift", c.total_shift);
        }
      } else if (cmd_tidy->parsed()) {
        std::set<long> pattern;
        if (fl_pattern.empty() || fl_pattern.front() != '{' || fl_pattern.back() != '}')
          throw ParseError("pattern must look like {0,1}", 0);
        std::stringstream ss(fl_pattern.substr(1, fl_pattern.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          if (tok.find_first_not_of(" \t") == std::string::npos) continue;
          try {
            pattern.insert(std::stol(tok));
          } catch (const std::exception&) {
            throw ParseError("pattern entries must be integers", 0);
          }
        }
        add_config(report, "flat tidy", {{"perm", perms[0].str()}, {"pattern", fl_pattern}});
        bool tidy = flat::pattern_tidy(perms[0], pattern);
        report.add("result").field("invariant", tidy ? "true" : "false");
      } else {
        add_config(report, "flat joint",
                   {{"window", std::to_string(fl_lo) + ":" + std::to_string(fl_hi)},
                    {"cap", std::to_string(fl_cap)}});
        std::vector<flat::JointOrbit> orbits =
            flat::joint_finite_orbits(perms, fl_lo, fl_hi, fl_cap);
        for (const flat::JointOrbit& o : orbits) {
          Record& r = report.add("joint-orbit");
          r.field("exceeded_cap", o.exceeded_cap ? "true" : "false");
          r.field("size", static_cast<long>(o.points.size()));
          if (!o.exceeded_cap)
            r.field("points", join_longs({o.points.begin(), o.points.end()}));
        }
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  out.emit(report);
  return 0;
}

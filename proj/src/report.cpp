#include "symgrowth/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "symgrowth/check.hpp"
#include "symgrowth/complex.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/fixtures.hpp"
#include "symgrowth/growth.hpp"
#include "symgrowth/operators.hpp"
#include "symgrowth/reductions.hpp"

namespace symgrowth {

namespace {

struct Context {
  JobSpec job;
  AlgebraPtr ring;
  GradedModule module;
  int steps = kDefaultSteps;
  int tail = kDefaultTail;
};

using Checks = std::vector<Check>;

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out;
}

std::string range_text(const std::vector<int>& v) {
  if (v.empty()) return "none";
  bool contiguous = true;
  for (std::size_t i = 1; i < v.size(); ++i) contiguous = contiguous && v[i] == v[i - 1] + 1;
  if (contiguous && v.size() > 2) return std::to_string(v.front()) + ".." + std::to_string(v.back());
  return join(v);
}

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

const char* tri_verdict(Tri t) {
  switch (t) {
    case Tri::yes:
      return "pass";
    case Tri::no:
      return "fail";
    default:
      return "inconclusive";
  }
}

Json tri_json(Tri t) {
  if (t == Tri::inconclusive) return "inconclusive";
  return t == Tri::yes;
}

Json cx_json(const Complexity& c) {
  if (c.kind == Complexity::Kind::finite) return c.value;
  return c.to_string();
}

Json series_json(const std::optional<RationalSeries>& s) {
  if (!s) return nullptr;
  return Json{{"num", s->numerator}, {"den", s->denominator}};
}

std::vector<std::size_t> plus_values(const BettiTable& t, int s) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= s; ++n) out.push_back(t.at(n));
  return out;
}

std::vector<std::size_t> minus_values(const BettiTable& t, int s) {
  std::vector<std::size_t> out;
  for (int n = 1; n <= s; ++n) out.push_back(t.at(-n));
  return out;
}

void put_betti(Json& out, const BettiTable& t, int s) {
  out["betti_plus"] = plus_values(t, s);
  out["betti_minus"] = t.lo < 0 ? minus_values(t, s) : std::vector<std::size_t>{};
}

void put_growth(Json& out, const GrowthReport& g) {
  out["poincare_plus"] = series_json(g.cx_plus.fit);
  out["poincare_minus"] = series_json(g.cx_minus.fit);
  out["cx_plus"] = cx_json(g.cx_plus);
  out["cx_minus"] = cx_json(g.cx_minus);
  out["symmetric"] = tri_json(g.symmetric);
  if (g.cx_plus.heuristic || g.cx_minus.heuristic)
    out["heuristic"] = Json{{"cx_plus", g.cx_plus.heuristic}, {"cx_minus", g.cx_minus.heuristic}};
}

Check exactness_check(const std::string& name, const FreeComplex& c) {
  ExactnessReport r = check_exactness(c);
  if (r.ok()) return {name, "pass", "d d = 0 everywhere; exact at n = " + range_text(r.checked)};
  std::string w = !r.squares_to_zero ? "d d != 0" : "not exact";
  if (r.first_failure) w += " at n = " + std::to_string(*r.first_failure);
  return {name, "fail", w};
}

Check gdim_check(const GdimCertificate& cert) {
  return {"gdim_zero", pass_fail(cert.passed()),
          cert.passed() ? "reflexive, Ext^n(M,A) = Ext^n(M*,A) = 0 for 1 <= n <= " + std::to_string(cert.window)
                        : cert.failure_summary()};
}

// Minimal Betti numbers on [-s, s], or on [0, s] when M has no complete resolution.
struct Sides {
  std::optional<CompleteResolution> cr;
  BettiTable table;
};

Sides compute_sides(const Context& c, Checks& checks) {
  Sides s;
  try {
    s.cr = complete_resolution(c.module, c.steps);
  } catch (const PreconditionError& e) {
    checks.push_back({"gdim_zero", "fail", e.what()});
    s.table = betti(minimal_resolution(c.module, c.steps).complex);
    return s;
  }
  checks.push_back(gdim_check(s.cr->certificate));
  s.table = tate_ext_dims(s.cr->complex);
  return s;
}

GrowthReport growth_of_sides(const Sides& s) {
  if (s.cr) return growth_of_table(s.table);
  GrowthReport g;
  g.steps = s.table.hi();
  g.betti_plus = positive_sequence(s.table);
  g.cx_plus = complexity(g.betti_plus);
  if (g.cx_plus.fit) g.pole_order_plus = pole_order_at_one(*g.cx_plus.fit);
  return g;
}

Check negative_paths_check(const Context& c, const CompleteResolution& cr) {
  const BettiTable spliced = betti(cr.complex);
  const BettiTable via_dual = negative_betti_via_dual(c.module, c.steps);
  for (int n = 1; n <= c.steps; ++n)
    if (spliced.at(-n) != via_dual.at(-n))
      return {"negative_paths_agree", "fail",
              "beta_" + std::to_string(-n) + ": " + std::to_string(spliced.at(-n)) + " from the splice, " +
                  std::to_string(via_dual.at(-n)) + " from cosyzygies"};
  return {"negative_paths_agree", "pass",
          "ranks of C_{-1}..C_{-" + std::to_string(c.steps) + "} equal the cosyzygy cover ranks"};
}

CIStructure require_ci(const GradedAlgebra& a) {
  auto ci = verify_ci(a);
  if (!ci) throw PreconditionError("operators need a complete intersection ring; verify_ci found no certificate");
  return *ci;
}

std::vector<Scalar> eta_of(const Context& c, const CIStructure& ci) {
  const Scalar p = c.ring->modulus();
  std::vector<Scalar> out(ci.relations.size(), 1);
  if (!c.job.eta) return out;
  if (c.job.eta->size() != ci.relations.size())
    throw InputError("eta has " + std::to_string(c.job.eta->size()) + " coefficients, the ring has " +
                     std::to_string(ci.relations.size()) + " relations");
  for (std::size_t l = 0; l < out.size(); ++l) {
    const std::int64_t v = (*c.job.eta)[l] % static_cast<std::int64_t>(p);
    out[l] = static_cast<Scalar>(v < 0 ? v + p : v);
  }
  return out;
}

void cmd_resolve(const Context& c, Json& out, Checks& checks) {
  Resolution r = minimal_resolution(c.module, c.steps);
  put_betti(out, betti(r.complex), c.steps);
  Json tw = Json::array();
  for (int n = 0; n <= c.steps; ++n) tw.push_back(r.complex.twists(n));
  out["twists"] = tw;
  checks.push_back(exactness_check("exactness", r.complex));
}

void cmd_complete(const Context& c, Json& out, Checks& checks) {
  CompleteResolution cr = complete_resolution(c.module, c.steps);
  put_betti(out, tate_ext_dims(cr.complex), c.steps);
  const BettiTable ranks = betti(cr.complex);
  out["ranks_plus"] = plus_values(ranks, c.steps);
  out["ranks_minus"] = minus_values(ranks, c.steps);
  out["free_summand"] = cr.free_summand;
  Json tw = Json::array();
  for (int n = -c.steps; n <= c.steps; ++n) tw.push_back(Json{{"n", n}, {"twists", cr.complex.twists(n)}});
  out["twists"] = tw;
  checks.push_back(gdim_check(cr.certificate));
  checks.push_back(exactness_check("exactness", cr.complex));
  checks.push_back(exactness_check("dual_exactness", dualize_complex(cr.complex)));
  checks.push_back({"spliced_complex_minimal", pass_fail(!cr.free_summand),
                    cr.free_summand ? "d_0 has a unit entry: M has a free summand" : "every differential is minimal"});
  checks.push_back(negative_paths_check(c, cr));
}

void cmd_betti(const Context& c, Json& out, Checks& checks) {
  Sides s = compute_sides(c, checks);
  put_betti(out, s.table, c.steps);
  if (s.cr) checks.push_back(negative_paths_check(c, *s.cr));
}

void cmd_growth(const Context& c, Json& out, Checks& checks, bool full) {
  Sides s = compute_sides(c, checks);
  put_betti(out, s.table, c.steps);
  GrowthReport g = growth_of_sides(s);
  if (!s.cr) g.symmetric = Tri::inconclusive;
  if (full && s.cr) {
    CompleteResolution dual_cr = complete_resolution(*s.cr->dual_module, c.steps);
    add_dual_comparison(g, dual_cr.complex);
  }
  put_growth(out, g);
  // A pole order at 1 only measures growth when the complexity is finite.
  auto pole = [](const Complexity& cx, const std::optional<int>& order) {
    return order && cx.kind == Complexity::Kind::finite ? Json(*order) : Json(nullptr);
  };
  out["pole_order"] = Json{{"plus", pole(g.cx_plus, g.pole_order_plus)}, {"minus", pole(g.cx_minus, g.pole_order_minus)}};
  if (!full) return;
  if (g.cx_plus_dual) {
    out["cx_dual"] = Json{{"plus", cx_json(*g.cx_plus_dual)}, {"minus", cx_json(*g.cx_minus_dual)}};
    checks.push_back({"four_way_symmetry", tri_verdict(*g.four_way),
                      "cx+ M = " + g.cx_plus.to_string() + ", cx- M = " + g.cx_minus.to_string() +
                          ", cx+ M* = " + g.cx_plus_dual->to_string() + ", cx- M* = " + g.cx_minus_dual->to_string()});
  }
  if (s.cr) checks.push_back(negative_paths_check(c, *s.cr));
}

void cmd_gdim(const Context& c, Json& out, Checks& checks) {
  GdimCertificate cert = gdim_zero_check(c.module, c.steps);
  out["gdim"] = Json{{"passed", cert.passed()},
                     {"reflexive", cert.reflexive},
                     {"window", cert.window},
                     {"ext_M", cert.ext_M},
                     {"ext_Mdual", cert.ext_Mdual}};
  auto ext_check = [&](const std::string& name, const std::string& label, const std::vector<std::size_t>& dims) {
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i] != 0) {
        checks.push_back({name, "fail", "dim Ext^" + std::to_string(i + 1) + label + " = " + std::to_string(dims[i])});
        return;
      }
    checks.push_back({name, "pass", "Ext^n" + label + " = 0 for 1 <= n <= " + std::to_string(cert.window)});
  };
  checks.push_back({"reflexive", pass_fail(cert.reflexive),
                    cert.reflexive ? "M -> M** is bijective" : "M -> M** is not bijective"});
  ext_check("ext_M_vanishes", "(M,A)", cert.ext_M);
  ext_check("ext_Mdual_vanishes", "(M*,A)", cert.ext_Mdual);
  checks.push_back(gdim_check(cert));
}

Json generation_json(const GenerationVerdict& v) {
  return Json{{"pass", v.pass}, {"n0", v.n0 ? Json(*v.n0) : Json(nullptr)}, {"tail", v.tail}, {"failures", v.failures}};
}

Check generation_check(const std::string& name, const GenerationVerdict& v, const std::string& label) {
  if (v.pass) return {name, "pass", "Ext^{n+2}" + label + " = sum chi_l Ext^n" + label + " for n = " + range_text(v.tail)};
  return {name, "fail", "not generated at n = " + join(v.failures)};
}

void cmd_operators(const Context& c, Json& out, Checks& checks) {
  const CIStructure ci = require_ci(*c.ring);
  CompleteResolution cr = complete_resolution(c.module, c.steps);
  put_betti(out, tate_ext_dims(cr.complex), c.steps);
  OperatorSet ops = lift_and_decompose(cr.complex, ci);
  OperatorSet dual_ops = lift_and_decompose(dualize_complex(cr.complex), ci);
  const std::vector<Scalar> eta = eta_of(c, ci);
  InjectivityVerdict inj = eventual_injectivity(ops, dual_ops, eta, c.tail, c.job.seed_or_default());
  const std::vector<Scalar>& used = inj.found ? inj.coeffs : eta;
  SurjectivityVerdict sur = eventual_surjectivity_of_chainmap(ops, used, c.tail);
  GenerationVerdict gen_m = finite_generation_check(ops, c.tail);
  GenerationVerdict gen_d = finite_generation_check(dual_ops, c.tail, 1);
  SignVerdict sign = action_sign_check(ops, ext_tail(ops, c.tail));

  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  out["operators"] = Json{{"count", ops.count()},
                          {"degrees", ci.degrees},
                          {"window", Json::array({ops.lo(), ops.hi()})},
                          {"chain_identity_checked", ops.chain_identity_checked},
                          {"homotopy_equations", ops.homotopy_equations},
                          {"eta", used},
                          {"eta_attempts", inj.attempts},
                          {"ext_tail_m", inj.tail_m},
                          {"ext_tail_mdual", inj.tail_mdual},
                          {"injective_from_m", opt(inj.first_injective_m)},
                          {"injective_from_mdual", opt(inj.first_injective_mdual)},
                          {"surjective", sur.surjective},
                          {"generation_m", generation_json(gen_m)},
                          {"generation_mdual", generation_json(gen_d)}};

  checks.push_back({"decomposition", "pass",
                    "lifted d_{n-1} d_n = sum f_l T_l exactly for n = " + std::to_string(ops.lo()) + ".." +
                        std::to_string(ops.hi())});
  checks.push_back({"chain_identity", "pass", "d t_l = t_l d at n = " + range_text(ops.chain_identity_checked)});
  if (ops.count() < 2)
    checks.push_back({"commutator_homotopy", "pass", "a single operator commutes with itself"});
  else
    checks.push_back({"commutator_homotopy", "pass",
                      "t_l t_m - t_m t_l = d h + h d solved jointly at n = " + range_text(ops.homotopy_equations)});
  if (inj.found)
    checks.push_back({"eventual_injectivity", "pass",
                      "eta injective on Ext^n(M,k) for n = " + range_text(inj.tail_m) + " and on Ext^n(M*,k) for n = " +
                          range_text(inj.tail_mdual) + (inj.attempts ? " after " + std::to_string(inj.attempts) + " retries" : "")});
  else
    checks.push_back({"eventual_injectivity", "no witness found",
                      std::to_string(kRetryBudget) + " random coefficient vectors tried"});
  checks.push_back({"surjectivity_linkage", pass_fail(sur.implication_holds),
                    "injective on Ext at n = " + range_text(sur.injective_ext) + "; onto C_n at n = " +
                        range_text(sur.surjective)});
  checks.push_back(generation_check("finite_generation_m", gen_m, "(M,k)"));
  checks.push_back(generation_check("finite_generation_mdual", gen_d, "(M*,k)"));
  checks.push_back({"action_sign", pass_fail(sign.pass),
                    sign.pass ? "operators of C and of the resolution of k act alike at n = " + range_text(sign.checked)
                              : "actions differ at n = " + std::to_string(*sign.witness)});
}

void cmd_duality(const Context& c, Json& out, Checks& checks) {
  const CIStructure ci = require_ci(*c.ring);
  CompleteResolution cr = complete_resolution(c.module, c.steps);
  put_betti(out, tate_ext_dims(cr.complex), c.steps);
  OperatorSet ops = lift_and_decompose(cr.complex, ci);
  OperatorSet dual_ops = lift_and_decompose(dualize_complex(cr.complex), ci);
  DualityVerdict v = duality_commutation_check(ops, dual_ops);
  out["duality"] = Json{{"pass", v.pass}, {"exact", v.exact}, {"equations", v.equations}};
  std::string w;
  if (!v.pass)
    w = "no homotopy; the system is inconsistent from m = " + std::to_string(v.witness.value_or(0));
  else if (v.exact)
    w = "t_l on Hom(C,A) equals the transpose of t_l on C at m = " + range_text(v.equations);
  else
    w = "equal up to a solved homotopy at m = " + range_text(v.equations);
  checks.push_back({"duality_commutation", pass_fail(v.pass), w});
}

Json identities_json(const std::vector<IdentityRow>& rows) {
  Json a = Json::array();
  for (const IdentityRow& r : rows) a.push_back(Json::array({r.n, r.lhs, r.rhs}));
  return a;
}

void cmd_reduce(const Context& c, Json& out, Checks& checks) {
  const CIStructure ci = require_ci(*c.ring);
  InductionOptions options;
  options.steps = c.steps;
  options.tail = c.tail;
  options.seed = c.job.seed_or_default();
  if (c.job.eta) options.first_eta = eta_of(c, ci);
  Ladder ladder = full_induction(c.module, ci, options);

  const GrowthReport& g0 = ladder.rungs.front().growth;
  out["betti_plus"] = g0.betti_plus;
  out["betti_minus"] = g0.betti_minus;
  put_growth(out, g0);

  Json rungs = Json::array();
  for (std::size_t i = 0; i < ladder.rungs.size(); ++i) {
    const Rung& r = ladder.rungs[i];
    const std::string tag = "rung " + std::to_string(i) + " ";
    Json j{{"rung", i},
           {"betti_plus", r.growth.betti_plus},
           {"betti_minus", r.growth.betti_minus},
           {"cx_plus", cx_json(r.growth.cx_plus)},
           {"cx_minus", cx_json(r.growth.cx_minus)},
           {"symmetric", tri_json(r.growth.symmetric)}};
    checks.push_back({tag + "symmetric", tri_verdict(r.growth.symmetric),
                      "cx+ = " + r.growth.cx_plus.to_string() + ", cx- = " + r.growth.cx_minus.to_string()});
    if (r.generation_m) checks.push_back(generation_check(tag + "finite_generation_m", *r.generation_m, "(M,k)"));
    if (r.generation_mdual)
      checks.push_back(generation_check(tag + "finite_generation_mdual", *r.generation_mdual, "(M*,k)"));
    if (i > 0) {
      const GrowthReport& prev = ladder.rungs[i - 1].growth;
      const bool drop = r.growth.cx_plus.kind == Complexity::Kind::finite &&
                        prev.cx_plus.kind == Complexity::Kind::finite &&
                        r.growth.cx_minus.kind == Complexity::Kind::finite &&
                        prev.cx_minus.kind == Complexity::Kind::finite &&
                        r.growth.cx_plus.value + 1 == prev.cx_plus.value &&
                        r.growth.cx_minus.value + 1 == prev.cx_minus.value;
      checks.push_back({tag + "complexity_drop", pass_fail(drop),
                        "cx+ " + prev.cx_plus.to_string() + " -> " + r.growth.cx_plus.to_string() + ", cx- " +
                            prev.cx_minus.to_string() + " -> " + r.growth.cx_minus.to_string()});
    }
    if (r.step) {
      const ReductionStep& s = *r.step;
      j["eta"] = s.coeffs;
      j["eta_degree"] = s.eta_degree;
      j["eta_attempts"] = r.witness ? r.witness->attempts : 0;
      j["n0"] = s.n0;
      j["extension_gdim_zero"] = s.extension_certificate.passed();
      j["identities"] = Json{{"positive", identities_json(s.positive)}, {"negative", identities_json(s.negative)}};
      checks.push_back({tag + "extension_gdim_zero", pass_fail(s.extension_certificate.passed()),
                        s.extension_certificate.passed() ? "K passes the window check"
                                                         : s.extension_certificate.failure_summary()});
      checks.push_back({tag + "betti_identities", "pass",
                        "beta_{n+1}(K) = beta_{n+2}(M) - beta_n(M) and beta_{-n}(K) = beta_{-n}(M) - beta_{2-n}(M) for n >= " +
                            std::to_string(s.n0)});
      if (r.poincare) {
        const PoincareVerdict& p = *r.poincare;
        j["poincare"] = Json{{"available", p.available},
                             {"positive_polynomial", p.positive_polynomial},
                             {"negative_polynomial", p.negative_polynomial},
                             {"pole_drop_plus", p.pole_drop_plus},
                             {"pole_drop_minus", p.pole_drop_minus}};
        checks.push_back({tag + "poincare_relation", p.available ? pass_fail(p.pass()) : "inconclusive",
                          p.available ? "(1 - t^2) P+(M) - t P+(K) and (1 - t^2) P-(M) - P-(K) are polynomials; pole order drops by one"
                                      : "no rational fit for M or K"});
      }
    }
    rungs.push_back(std::move(j));
  }
  out["ladder"] = Json{{"complexities", ladder.complexities}, {"steps_taken", ladder.steps_taken()}, {"rungs", rungs}};
  const bool length_ok = !ladder.complexities.empty() &&
                         static_cast<int>(ladder.steps_taken()) == ladder.complexities.front();
  checks.push_back({"ladder_length", pass_fail(length_ok),
                    std::to_string(ladder.steps_taken()) + " steps from complexity " +
                        std::to_string(ladder.complexities.front())});
}

void cmd_construct(const Context& c, Json& out, Checks& checks) {
  if (!c.job.ring2) throw InputError("construct needs a second ring block ring2 for A2");
  AlgebraPtr a2 = build_ring(*c.job.ring2);
  ConstructionResult r = construction_instance(c.ring, c.module, a2, c.steps);
  CompleteResolution cr = complete_resolution(r.module, c.steps);
  const BettiTable t = tate_ext_dims(cr.complex);
  put_betti(out, t, c.steps);
  put_growth(out, growth_of_table(t));
  out["construction"] = Json{{"job", canonical_text(r.fixture.job("symgrowth"))}, {"ci", r.fixture.expected.ci}};

  checks.push_back({"m1_gdim_zero", "pass", "M1 passes the window check over A1"});
  checks.push_back({"dual_compatibility", pass_fail(r.dual_compatible),
                    r.dual_compatible ? "dim (M*)_e = dim (M1* (x) A2)_e in every degree" : r.dual_witness});
  std::string mismatch;
  for (int n = -c.steps; n <= c.steps && mismatch.empty(); ++n) {
    auto want = r.fixture.expected.betti(n);
    if (want && *want != t.at(n))
      mismatch = "beta_" + std::to_string(n) + " = " + std::to_string(t.at(n)) + " over A, " + std::to_string(*want) +
                 " over A1";
  }
  checks.push_back({"betti_preserved", mismatch.empty() ? "pass" : "fail",
                    mismatch.empty() ? "beta_n(M) over A equals beta_n(M1) over A1 for |n| <= " + std::to_string(c.steps)
                                     : mismatch});
  GradedModule again = r.fixture.build_module(r.fixture.build_ring());
  const bool same = again.dims() == r.module.dims() && again.lo() == r.module.lo();
  checks.push_back({"round_trip", pass_fail(same), "the job text of M rebuilds a module with the same Hilbert function"});
}

std::string poly_text(const std::vector<std::int64_t>& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::int64_t c = f[i];
    if (c == 0) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    std::int64_t a = c < 0 ? -c : c;
    std::string term = (a == 1 && !mono.empty()) ? mono : std::to_string(a) + mono;
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + scalar_text(v[i]);
    return out;
  }
  return v.dump();
}

}  // namespace

JobSpec resolve_fixture(const JobSpec& job) {
  if (!job.fixture) return job;
  const Fixture* f = find_fixture(*job.fixture);
  if (!f) {
    std::string names;
    for (const std::string& n : fixture_names()) names += (names.empty() ? "" : ", ") + n;
    throw InputError("unknown fixture '" + *job.fixture + "' (known: " + names + ")");
  }
  JobSpec out = f->job(job.command);
  out.fixture = job.fixture;
  if (job.steps) out.steps = job.steps;
  out.tail = job.tail;
  out.eta = job.eta;
  out.seed = job.seed;
  out.ring2 = job.ring2;
  return out;
}

Report run(const JobSpec& input) {
  JobSpec job = resolve_fixture(input);
  if (job.command.empty()) throw InputError("the job names no command (cmd = ...)");
  if (!job.ring) throw InputError("the job has no ring block and names no fixture");
  Context c;
  c.ring = build_ring(*job.ring);
  c.module = build_module(c.ring, job.module);
  c.steps = job.steps_or_default();
  c.tail = job.tail_or_default();
  c.job = job;

  Json out;
  out["command"] = job.command;
  if (job.fixture) out["fixture"] = *job.fixture;
  out["steps"] = c.steps;
  Checks checks;
  const std::string& cmd = job.command;
  if (cmd == "resolve")
    cmd_resolve(c, out, checks);
  else if (cmd == "complete")
    cmd_complete(c, out, checks);
  else if (cmd == "betti")
    cmd_betti(c, out, checks);
  else if (cmd == "poincare" || cmd == "cx")
    cmd_growth(c, out, checks, false);
  else if (cmd == "symgrowth")
    cmd_growth(c, out, checks, true);
  else if (cmd == "gdim")
    cmd_gdim(c, out, checks);
  else if (cmd == "operators")
    cmd_operators(c, out, checks);
  else if (cmd == "duality-check")
    cmd_duality(c, out, checks);
  else if (cmd == "reduce")
    cmd_reduce(c, out, checks);
  else if (cmd == "construct")
    cmd_construct(c, out, checks);
  else
    throw InputError("unknown command '" + cmd + "'");

  if (cmd == "poincare") {
    out.erase("cx_plus");
    out.erase("cx_minus");
  }
  if (cmd == "cx") {
    out.erase("poincare_plus");
    out.erase("poincare_minus");
  }
  Json cj = Json::array();
  for (const Check& ch : checks) cj.push_back(Json{{"name", ch.name}, {"verdict", ch.verdict}, {"witness", ch.witness}});
  out["checks"] = cj;
  return {out, render_text(out)};
}

std::string render_text(const Json& r) {
  std::ostringstream os;
  if (r.contains("error")) {
    const Json& e = r["error"];
    os << e["kind"].get<std::string>() << " error";
    if (e["line"].get<std::size_t>() > 0) os << " at line " << e["line"] << ", column " << e["column"];
    os << ": " << e["message"].get<std::string>() << "\n";
    return os.str();
  }
  os << r.value("command", "") << (r.contains("fixture") ? " on " + r["fixture"].get<std::string>() : "")
     << ", steps " << r.value("steps", 0) << "\n";
  if (r.contains("betti_plus")) {
    const Json& plus = r["betti_plus"];
    const Json& minus = r["betti_minus"];
    os << "  n  beta\n";
    for (std::size_t i = minus.size(); i-- > 0;) os << std::setw(3) << -static_cast<int>(i + 1) << "  " << minus[i] << "\n";
    for (std::size_t i = 0; i < plus.size(); ++i) os << std::setw(3) << i << "  " << plus[i] << "\n";
  }
  for (const char* key : {"poincare_plus", "poincare_minus"}) {
    if (!r.contains(key)) continue;
    const Json& s = r[key];
    os << (std::string(key) == "poincare_plus" ? "P+ = " : "P- = ");
    if (s.is_null())
      os << "no rational fit\n";
    else
      os << "(" << poly_text(s["num"].get<std::vector<std::int64_t>>()) << ") / ("
         << poly_text(s["den"].get<std::vector<std::int64_t>>()) << ")\n";
  }
  for (const char* key : {"cx_plus", "cx_minus", "symmetric"})
    if (r.contains(key)) os << key << ": " << scalar_text(r[key]) << "\n";
  for (auto it = r.begin(); it != r.end(); ++it) {
    static const std::vector<std::string> shown{"command", "fixture", "steps", "betti_plus", "betti_minus",
                                                "poincare_plus", "poincare_minus", "cx_plus", "cx_minus",
                                                "symmetric", "checks"};
    if (std::find(shown.begin(), shown.end(), it.key()) != shown.end()) continue;
    if (it.value().is_object()) {
      os << it.key() << ":\n";
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
        if (jt.value().is_string() && jt.value().get<std::string>().find('\n') != std::string::npos) {
          os << "  " << jt.key() << ":\n";
          std::istringstream lines(jt.value().get<std::string>());
          for (std::string line; std::getline(lines, line);) os << "    " << line << "\n";
        } else if (jt.value().is_array() && !jt.value().empty() && jt.value()[0].is_structured()) {
          os << "  " << jt.key() << ":\n";
          for (const Json& v : jt.value()) os << "    " << v.dump() << "\n";
        } else {
          os << "  " << jt.key() << ": " << (jt.value().is_object() ? jt.value().dump() : scalar_text(jt.value()))
             << "\n";
        }
      }
    } else if (it.value().is_array() && !it.value().empty() && it.value()[0].is_structured()) {
      os << it.key() << ":\n";
      for (const Json& v : it.value()) os << "  " << v.dump() << "\n";
    } else {
      os << it.key() << ": " << scalar_text(it.value()) << "\n";
    }
  }
  if (r.contains("checks")) {
    os << "checks:\n";
    for (const Json& ch : r["checks"])
      os << "  [" << ch["verdict"].get<std::string>() << "] " << ch["name"].get<std::string>() << ": "
         << ch["witness"].get<std::string>() << "\n";
  }
  return os.str();
}

Json error_json(const std::string& kind, const std::string& message, std::size_t line, std::size_t column) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}, {"line", line}, {"column", column}}}};
}

}  // namespace symgrowth

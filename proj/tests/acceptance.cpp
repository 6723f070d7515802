// Acceptance run: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "symgrowth/errors.hpp"
#include "symgrowth/fixtures.hpp"
#include "symgrowth/growth.hpp"
#include "symgrowth/operators.hpp"
#include "symgrowth/reductions.hpp"
#include "symgrowth/report.hpp"

using namespace symgrowth;

namespace {

AlgebraPtr ring(const std::vector<std::string>& names, const std::vector<std::string>& rels) {
  std::vector<Polynomial> fs;
  for (const auto& r : rels) fs.push_back(parse_polynomial(r, names, kDefaultModulus));
  return GradedAlgebra::build(names.size(), kDefaultModulus, fs, std::nullopt, names);
}

AlgebraPtr r1() { return ring({"x"}, {"x^2"}); }
AlgebraPtr r2() { return ring({"x", "y"}, {"x^2", "y^2"}); }
AlgebraPtr r3() { return ring({"x", "y"}, {"x^2", "xy", "y^2"}); }
AlgebraPtr r5() { return ring({"x"}, {"x^3"}); }

// Collects the first failure of a criterion as its witness.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  bool ok() const { return failure_.empty(); }
  std::string witness() const { return ok() ? notes_.str() : failure_; }

 private:
  std::string failure_;
  std::ostringstream notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fit_text(const std::optional<RationalSeries>& f) {
  if (!f) return "none";
  std::ostringstream s;
  s << "num";
  for (auto c : f->numerator) s << ' ' << c;
  s << " / den";
  for (auto c : f->denominator) s << ' ' << c;
  return s.str();
}

PolyMatrix product(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars, Scalar p) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  PolyMatrix out(a.size(), std::vector<Polynomial>(cols, Polynomial(nvars, p)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

// 1: k over k[x]/(x^2) is periodic of period one.
void criterion1(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  CompleteResolution cr = complete_resolution(residue_field(r1()), 10);
  BettiTable b = tate_ext_dims(cr.complex);
  GrowthReport g = growth_of_table(b);
  auto plus = fit_rational(positive_sequence(b));
  auto minus = fit_rational(negative_sequence(b));
  const double secs = seconds_since(t0);
  for (int n = -10; n <= 10; ++n) v.require(b.at(n) == 1, "beta_" + std::to_string(n) + " = " + std::to_string(b.at(n)));
  const IntPoly num{1}, den{1, -1};
  v.require(plus && plus->numerator == num && plus->denominator == den, "P+ is " + fit_text(plus));
  v.require(minus && minus->numerator == num && minus->denominator == den, "P- is " + fit_text(minus));
  v.require(g.cx_plus.kind == Complexity::Kind::finite && g.cx_plus.value == 1 && !g.cx_plus.heuristic,
            "cx+ = " + g.cx_plus.to_string());
  v.require(g.cx_minus.kind == Complexity::Kind::finite && g.cx_minus.value == 1 && !g.cx_minus.heuristic,
            "cx- = " + g.cx_minus.to_string());
  v.require(g.symmetric == Tri::yes, "not symmetric");
  v.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  v.note("beta = 1 on [-10, 10], P+- = 1/(1-t), cx 1/1, " + std::to_string(secs) + " s");
}

// 2: k over k[x,y]/(x^2,y^2), beta_n = n + 1 and beta_{-n} = n.
void criterion2(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  GradedModule k = residue_field(r2());
  CompleteResolution cr = complete_resolution(k, 10);
  BettiTable b = tate_ext_dims(cr.complex);
  BettiTable ranks = betti(cr.complex);
  BettiTable via_dual = negative_betti_via_dual(k, 10);
  GrowthReport g = growth_of_table(b);
  const double secs = seconds_since(t0);
  for (int n = 0; n <= 10; ++n)
    v.require(b.at(n) == static_cast<std::size_t>(n + 1), "beta_" + std::to_string(n) + " = " + std::to_string(b.at(n)));
  for (int n = 1; n <= 10; ++n) {
    v.require(b.at(-n) == static_cast<std::size_t>(n), "beta_-" + std::to_string(n) + " = " + std::to_string(b.at(-n)));
    v.require(ranks.at(-n) == via_dual.at(-n), "negative paths disagree at -" + std::to_string(n) + ": " +
                                                   std::to_string(ranks.at(-n)) + " vs " +
                                                   std::to_string(via_dual.at(-n)));
  }
  v.require(g.pole_order_plus == 2, "pole order of P+ is not 2");
  v.require(g.pole_order_minus == 2, "pole order of P- is not 2");
  v.require(g.symmetric == Tri::yes, "not symmetric");
  v.require(secs < 5.0, "took " + std::to_string(secs) + " s");
  v.note("beta_n = n+1, beta_-n = n, pole orders 2/2, spliced ranks = cosyzygy ranks, " + std::to_string(secs) + " s");
}

// 3: the lifted square decomposes, the t_l are chain maps, and [t_1, t_2] ~ 0 on R2.
void criterion3(Verdict& v) {
  int equations = 0;
  for (AlgebraPtr a : {r1(), r2(), r5()}) {
    CIStructure ci = *verify_ci(*a);
    CompleteResolution cr = complete_resolution(residue_field(a), 6);
    OperatorSet ops = lift_and_decompose(cr.complex, ci);
    const FreeComplex& c = cr.complex;
    const std::size_t nv = a->num_vars();
    for (int n = ops.lo(); n <= ops.hi(); ++n) {
      PolyMatrix sq = product(ops.lifted[n - c.lo() - 2], ops.lifted[n - c.lo() - 1], nv, a->modulus());
      PolyMatrix sum = sq;
      for (auto& row : sum)
        for (auto& e : row) e = Polynomial(nv, a->modulus());
      for (std::size_t l = 0; l < ops.count(); ++l)
        for (std::size_t i = 0; i < sum.size(); ++i)
          for (std::size_t j = 0; j < sum[i].size(); ++j)
            sum[i][j] = sum[i][j] + ci.relations[l] * ops.cofactors[l][n - ops.lo()][i][j];
      v.require(sum == sq, "lifted square is not sum f_l T_l at n = " + std::to_string(n));
      for (std::size_t l = 0; l < ops.count(); ++l) {
        if (n == ops.lo() || !c.has_diff(n - 2)) continue;
        v.require(c.diff(n - 2) * ops.at(l, n) == ops.at(l, n - 1) * c.diff(n),
                  "t_" + std::to_string(l + 1) + " is not a chain map at n = " + std::to_string(n));
        ++equations;
      }
    }
    if (ops.count() == 2) {
      std::map<int, FreeMap> phi;
      for (int n = ops.lo() + 2; n <= ops.hi(); ++n)
        phi[n] = ops.at(0, n - 2) * ops.at(1, n) - ops.at(1, n - 2) * ops.at(0, n);
      auto h = solve_homotopy(c, phi, -4);
      v.require(h.has_value() && !h->equations.empty(), "t_1 t_2 - t_2 t_1 is not null-homotopic on R2");
    }
  }
  v.note("decomposition exact on R1, R2, k[x]/(x^3); " + std::to_string(equations) +
         " chain-map identities; commutator homotopy solved on R2");
}

// 4: operators on the dual complex are the transposed operators up to homotopy.
void criterion4(Verdict& v) {
  std::size_t equations = 0;
  for (AlgebraPtr a : {r1(), r2(), r5()}) {
    CIStructure ci = *verify_ci(*a);
    CompleteResolution cr = complete_resolution(residue_field(a), 6);
    OperatorSet ops = lift_and_decompose(cr.complex, ci);
    OperatorSet dual = lift_and_decompose(dualize_complex(cr.complex), ci);
    DualityVerdict d = duality_commutation_check(ops, dual);
    v.require(d.pass && !d.equations.empty(),
              "duality check fails" + (d.witness ? " at " + std::to_string(*d.witness) : std::string()));
    equations += d.equations.size();
  }
  v.note("R1, R2, k[x]/(x^3): " + std::to_string(equations) + " interior indices");
}

// 5: injectivity on Ext forces surjectivity of the chain map, generic eta on R2/k.
void criterion5(Verdict& v) {
  AlgebraPtr a = r2();
  CIStructure ci = *verify_ci(*a);
  CompleteResolution cr = complete_resolution(residue_field(a), 10);
  OperatorSet ops = lift_and_decompose(cr.complex, ci);
  const std::vector<Scalar> eta = random_coefficients(0, 0, a->modulus(), {true, true});
  SurjectivityVerdict s = eventual_surjectivity_of_chainmap(ops, eta, 4);
  v.require(s.tail.size() == 4, "tail has " + std::to_string(s.tail.size()) + " indices");
  v.require(!s.injective_ext.empty(), "eta is injective nowhere on the tail, the check is vacuous");
  v.require(s.implication_holds, "injective on Ext but not surjective");
  std::ostringstream w;
  w << "eta = (" << eta[0] << ", " << eta[1] << "), tail";
  for (int n : s.tail) w << ' ' << n;
  w << ": injective at " << s.injective_ext.size() << ", surjective at " << s.surjective.size();
  v.note(w.str());
}

// 6: one reduction step on R2/k and the full ladder.
void criterion6(Verdict& v) {
  AlgebraPtr a = r2();
  CIStructure ci = *verify_ci(*a);
  GradedModule k = residue_field(a);
  CompleteResolution cr = complete_resolution(k, 10);
  OperatorSet ops = lift_and_decompose(cr.complex, ci);
  OperatorSet dual = lift_and_decompose(dualize_complex(cr.complex), ci);
  InjectivityVerdict w = eventual_injectivity(ops, dual, random_coefficients(0, 0, a->modulus(), {true, true}), 4, 0);
  v.require(w.found, "no witness eta");
  if (!w.found) return;
  ReductionStep step = build_extension(cr, ops, dual, w.coeffs, 4);
  v.require(!step.positive.empty() && !step.negative.empty(), "no guaranteed indices in the window");
  for (const IdentityRow& r : step.positive)
    v.require(r.holds() && r.lhs == 2, "beta_" + std::to_string(r.n + 1) + "(K) = " + std::to_string(r.lhs));
  for (const IdentityRow& r : step.negative)
    v.require(r.holds() && r.lhs == 2, "beta_-" + std::to_string(r.n) + "(K) = " + std::to_string(r.lhs));
  v.require(gdim_zero_check(*step.extension, 4).passed(), "K fails the G-dimension zero check");
  PoincareVerdict p = verify_poincare_relation(step);
  v.require(p.pass(), "Poincare relation fails");

  InductionOptions o;
  o.steps = 10;
  Ladder l = full_induction(k, ci, o);
  v.require(l.complexities == std::vector<int>{2, 1, 0}, "complexity ladder is not (2,1,0)");
  v.require(l.steps_taken() == 2, "ladder length " + std::to_string(l.steps_taken()));
  for (std::size_t i = 0; i < l.rungs.size(); ++i)
    v.require(l.rungs[i].growth.symmetric == Tri::yes, "rung " + std::to_string(i) + " is not symmetric");
  v.note("n0 = " + std::to_string(step.n0) + ", " + std::to_string(step.positive.size() + step.negative.size()) +
         " identities with beta(K) = 2, K of G-dimension zero, Poincare residuals polynomial, ladder (2,1,0)");
}

// 7: the construction over a ring that is not a complete intersection.
void criterion7(Verdict& v) {
  AlgebraPtr a1 = r1();
  AlgebraPtr a2 = ring({"y", "z"}, {"y^2", "yz", "z^2"});
  ConstructionResult c = construction_instance(a1, residue_field(a1), a2);
  v.require(!verify_ci(*c.ring), "verify_ci certifies the tensor ring");
  CompleteResolution cr = complete_resolution(c.module, 10);
  BettiTable b = tate_ext_dims(cr.complex);
  for (int n = -8; n <= 8; ++n) v.require(b.at(n) == 1, "beta_" + std::to_string(n) + " = " + std::to_string(b.at(n)));
  GrowthReport g = growth_of_table(b);
  v.require(g.symmetric == Tri::yes, "not symmetric");
  v.require(c.dual_compatible, "dual dims differ: " + c.dual_witness);
  v.note("beta = 1 on [-8, 8], symmetric, verify_ci: none, Hilbert function of A: " +
         [&] {
           std::string s;
           for (auto h : c.ring->hilbert_function()) s += (s.empty() ? "" : " ") + std::to_string(h);
           return s;
         }());
}

// 8: k over k[x,y]/(x^2,xy,y^2).
void criterion8(Verdict& v) {
  AlgebraPtr a = r3();
  GradedModule k = residue_field(a);
  GdimCertificate c = gdim_zero_check(k, 4);
  v.require(!c.passed(), "k passes the G-dimension zero check");
  v.require(!c.reflexive, "k is reported reflexive");
  v.require(!c.ext_M_vanishes && !c.ext_M.empty() && c.ext_M[0] != 0, "Ext^1(k,A) reported zero");
  Resolution r = minimal_resolution(k, 10);
  std::vector<std::size_t> seq;
  for (int n = 0; n <= 10; ++n) {
    seq.push_back(r.complex.rank(n));
    v.require(r.complex.rank(n) == (std::size_t{1} << n), "beta_" + std::to_string(n) + " is not 2^n");
  }
  v.require(complexity(seq).kind == Complexity::Kind::exponential, "growth not marked exponential");
  try {
    complete_resolution(k, 4);
    v.require(false, "complete_resolution did not refuse");
  } catch (const PreconditionError& e) {
    const std::string what = e.what();
    v.require(what.find("not reflexive") != std::string::npos && what.find("Ext^1(M,A)") != std::string::npos,
              "wrong diagnostic: " + what);
    v.note("refused: " + what);
  }
}

// 9: every complex we produce is exact, and so is its dual.
void criterion9(Verdict& v) {
  int complexes = 0;
  auto check = [&](const FreeComplex& c, const std::string& what) {
    ExactnessReport e = check_exactness(c);
    v.require(e.squares_to_zero, what + ": d d != 0");
    v.require(e.exact, what + ": not exact at " + (e.first_failure ? std::to_string(*e.first_failure) : "?"));
    v.require(!e.checked.empty(), what + ": nothing checked");
    ++complexes;
  };
  for (const Fixture& f : standard_fixtures()) {
    AlgebraPtr a = f.build_ring();
    GradedModule m = f.build_module(a);
    if (!f.expected.gdim_zero) {
      check(minimal_resolution(m, 8).complex, f.name + " minimal resolution");
      continue;
    }
    CompleteResolution cr = complete_resolution(m, 8);
    check(cr.complex, f.name);
    check(dualize_complex(cr.complex), f.name + " dual");
  }
  // The extensions along the R2 ladder.
  InductionOptions o;
  o.steps = 10;
  Ladder l = full_induction(residue_field(r2()), *verify_ci(*r2()), o);
  for (const Rung& r : l.rungs) {
    CompleteResolution cr = complete_resolution(*r.module, 8);
    check(cr.complex, "ladder rung");
    check(dualize_complex(cr.complex), "ladder rung dual");
  }
  v.note(std::to_string(complexes) + " complexes exact at all interior indices");
}

// 10: identical jobs give identical JSON, also when run concurrently.
void criterion10(Verdict& v) {
  const std::vector<std::string> commands{"betti", "symgrowth", "gdim", "operators", "reduce"};
  int reports = 0;
  for (const std::string& name : fixture_names())
    for (const std::string& cmd : commands) {
      JobSpec job = resolve_fixture(parse_job("fixture = " + name + " cmd = " + cmd + " seed = 5"));
      auto render = [job] {
        try {
          return run(job).json.dump(2);
        } catch (const PreconditionError& e) {
          return error_json("precondition", e.what()).dump(2);
        }
      };
      const std::string first = render();
      auto second = std::async(std::launch::async, render);
      v.require(first == second.get(), name + " " + cmd + " differs between runs");
      ++reports;
    }
  v.note(std::to_string(reports) + " reports byte-identical across runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"hypersurface periodicity over k[x]/(x^2)", criterion1},
      {"symmetric growth of k over k[x,y]/(x^2,y^2)", criterion2},
      {"operator construction", criterion3},
      {"operators commute with dualization", criterion4},
      {"injectivity on Ext gives surjective chain maps", criterion5},
      {"reduction step and complexity ladder", criterion6},
      {"construction over a ring that is not a complete intersection", criterion7},
      {"negative control over k[x,y]/(x^2,xy,y^2)", criterion8},
      {"exactness of all complexes and their duals", criterion9},
      {"determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failed += !v.ok();
    std::cout << (v.ok() ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << v.witness() << ")\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}

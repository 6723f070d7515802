#include <doctest.h>

#include "rings.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/reductions.hpp"

using namespace symgrowth;

namespace {

struct Setup {
  CIStructure ci;
  CompleteResolution cr;
  OperatorSet ops;
  OperatorSet dual;
};

Setup setup(const GradedModule& m, int steps) {
  CIStructure ci = *verify_ci(m.ring());
  CompleteResolution cr = complete_resolution(m, steps);
  OperatorSet ops = lift_and_decompose(cr.complex, ci);
  OperatorSet dual = lift_and_decompose(dualize_complex(cr.complex), ci);
  return {ci, cr, ops, dual};
}

InductionOptions options(int steps = 10) {
  InductionOptions o;
  o.steps = steps;
  return o;
}

}  // namespace

TEST_CASE("over k[x]/(x^2) the extension of k is stably free") {
  Setup s = setup(residue_field(rings::r1()), 8);
  ReductionStep step = build_extension(s.cr, s.ops, s.dual, {1}, 4);
  CHECK(step.eta_degree == 2);
  // beta_{n+1}(K) = beta_{n+2}(k) - beta_n(k) = 1 - 1.
  for (const IdentityRow& row : step.positive) {
    CHECK(row.holds());
    CHECK(row.lhs == 0);
  }
  for (int n = step.n0 + 1; n <= 7; ++n) CHECK(step.betti_k.at(n) == 0);
  CHECK(step.extension_certificate.passed());
}

TEST_CASE("over k[x,y]/(x^2,y^2) the extension of k has constant Betti numbers 2") {
  Setup s = setup(residue_field(rings::r2()), 10);
  ReductionStep step = build_extension(s.cr, s.ops, s.dual, {1, 1}, 4);
  REQUIRE_FALSE(step.positive.empty());
  REQUIRE_FALSE(step.negative.empty());
  // (n + 3) - (n + 1) on the right, n - (n - 2) on the left.
  for (const IdentityRow& row : step.positive) {
    CHECK(row.holds());
    CHECK(row.lhs == 2);
  }
  for (const IdentityRow& row : step.negative) {
    CHECK(row.holds());
    CHECK(row.lhs == 2);
  }
  for (int n = step.n0 + 1; n <= 9; ++n) CHECK(step.betti_k.at(n) == 2);
  CHECK(step.extension_certificate.passed());
  CHECK(step.growth_k.cx_plus.value == 1);

  PoincareVerdict p = verify_poincare_relation(step);
  CHECK(p.available);
  CHECK(p.positive_polynomial);
  CHECK(p.negative_polynomial);
  CHECK(p.pole_drop_plus);
  CHECK(p.pole_drop_minus);
  CHECK(p.pass());
}

TEST_CASE("reductions are refused when they make no sense") {
  {
    Setup s = setup(free_module(rings::r2(), {0}), 6);
    CHECK_THROWS_AS(build_extension(s.cr, s.ops, s.dual, {1, 1}, 3), PreconditionError);
  }
  {
    Setup s = setup(residue_field(rings::r2()), 6);
    CHECK_THROWS_AS(build_extension(s.cr, s.ops, s.dual, {0, 0}, 3), PreconditionError);
    CHECK_THROWS_AS(build_extension(s.cr, s.ops, s.dual, {1}, 3), PreconditionError);
  }
  {
    // x^2 and y^3 have different degrees, so x^2 + y^3 is not homogeneous.
    Setup s = setup(residue_field(rings::r6()), 6);
    try {
      build_extension(s.cr, s.ops, s.dual, {1, 1}, 3);
      FAIL("expected a refusal");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("different degrees") != std::string::npos);
    }
  }
}

TEST_CASE("complexity ladders end at zero, one step at a time") {
  struct Case {
    GradedModule m;
    std::vector<int> expected;
  };
  AlgebraPtr r2 = rings::r2();
  std::vector<Case> cases{{residue_field(rings::r1()), {1, 0}},
                          {residue_field(rings::r5()), {1, 0}},
                          {residue_field(r2), {2, 1, 0}},
                          {residue_field(rings::r6()), {2, 1, 0}},
                          {free_module(r2, {0}), {0}},
                          {syzygy(residue_field(r2)).module, {2, 1, 0}}};
  for (const Case& c : cases) {
    Ladder l = full_induction(c.m, *verify_ci(c.m.ring()), options());
    CHECK(l.complexities == c.expected);
    CHECK(l.steps_taken() + 1 == c.expected.size());
    for (std::size_t i = 0; i < l.rungs.size(); ++i) {
      const Rung& r = l.rungs[i];
      CHECK(r.growth.symmetric == Tri::yes);
      REQUIRE(r.generation_m);
      CHECK(r.generation_m->pass);
      if (i + 1 < l.rungs.size()) {
        REQUIRE(r.step);
        CHECK(r.step->extension_certificate.passed());
        REQUIRE(r.poincare);
        CHECK(r.poincare->pass());
      } else {
        CHECK_FALSE(r.step);
      }
    }
  }
}

TEST_CASE("a requested first eta is used when it lies in one degree class") {
  InductionOptions o = options();
  o.first_eta = std::vector<Scalar>{5, 3};
  Ladder l = full_induction(residue_field(rings::r2()), *verify_ci(*rings::r2()), o);
  REQUIRE(l.rungs[0].step);
  CHECK(l.rungs[0].step->coeffs == std::vector<Scalar>{5, 3});
}

TEST_CASE("induction needs a finite complexity") {
  // Six Betti numbers are too few to validate a fit.
  CHECK_THROWS_AS(full_induction(residue_field(rings::r2()), *verify_ci(*rings::r2()), options(4)),
                  PreconditionError);
}

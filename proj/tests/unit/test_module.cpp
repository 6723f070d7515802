#include <doctest.h>

#include "generators.hpp"
#include "rings.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/operators.hpp"

using namespace symgrowth;

namespace {

GradedModule k_over(const AlgebraPtr& a) { return residue_field(a); }

}  // namespace

TEST_CASE("free modules and twists") {
  AlgebraPtr a = rings::r2();
  GradedModule f = free_module(a, {0, 1});
  CHECK(f.lo() == 0);
  CHECK(f.dims() == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(f.twisted(1).lo() == -1);
  CHECK(f.twisted(1).dim(0) == 3);
  CHECK_FALSE(f.check_axioms());
}

TEST_CASE("presentations") {
  AlgebraPtr a = rings::r2();
  const auto& names = a->names();
  auto poly = [&](const char* s) { return parse_polynomial(s, names, a->modulus()); };
  GradedModule k = from_presentation(a, {0}, {1, 1}, {{poly("x"), poly("y")}});
  CHECK(k.dims() == std::vector<std::size_t>{1});
  // A / (x): k[y]/(y^2), dims 1, 1.
  GradedModule q = from_presentation(a, {0}, {1}, {{poly("x")}});
  CHECK(q.dims() == std::vector<std::size_t>{1, 1});
  CHECK_THROWS_AS(from_presentation(a, {0}, {1}, {{poly("x^2")}}), InputError);
}

TEST_CASE("random presentations give modules satisfying the axioms") {
  gen::Rng r(20);
  for (AlgebraPtr a : {rings::r2(), rings::r3(), rings::r6()})
    for (int trial = 0; trial < 15; ++trial) {
      GradedModule m = gen::module(r, a);
      CHECK_FALSE(m.check_axioms());
      // The minimal presentation rebuilds the same Hilbert function.
      if (m.is_zero()) continue;
      Presentation p = minimal_presentation(m);
      GradedModule again = from_presentation(a, p.rows, p.cols, p.entries);
      CHECK(again.trimmed().dims() == m.trimmed().dims());
      CHECK(again.trimmed().lo() == m.trimmed().lo());
    }
}

TEST_CASE("syzygy sequence is exact degreewise") {
  gen::Rng r(21);
  for (AlgebraPtr a : {rings::r2(), rings::r3()})
    for (int trial = 0; trial < 10; ++trial) {
      GradedModule m = gen::module(r, a);
      if (m.is_zero()) continue;
      Syzygy s = syzygy(m);
      GradedModule f = free_module(a, s.cover.twists);
      for (int d = f.lo(); d <= f.hi(); ++d) CHECK(s.module.dim(d) + m.dim(d) == f.dim(d));
      CHECK(s.inclusion.is_injective());
      CHECK_FALSE(s.inclusion.check_equivariance());
    }
}

TEST_CASE("minimal generators of k and of the maximal ideal") {
  AlgebraPtr a = rings::r2();
  Generators g = minimal_generators(k_over(a));
  CHECK(g.twists == Twists{0});
  Syzygy s = syzygy(k_over(a));
  CHECK(minimal_generators(s.module).twists == Twists{1, 1});
}

TEST_CASE("duals of k sit in the socle degree") {
  // Hom(k, A) is the socle of A, which lives in the top degree for these Gorenstein rings.
  for (AlgebraPtr a : {rings::r1(), rings::r2(), rings::r5(), rings::r6()}) {
    GradedModule d = dual(k_over(a)).trimmed();
    CHECK(d.lo() == a->top());
    CHECK(d.dims() == std::vector<std::size_t>{1});
  }
  // Over R3 the socle is all of m.
  GradedModule d3 = dual(k_over(rings::r3())).trimmed();
  CHECK(d3.dims() == std::vector<std::size_t>{2});
}

TEST_CASE("dual of a free module and biduality") {
  AlgebraPtr a = rings::r2();
  GradedModule f = free_module(a, {1});
  GradedModule d = dual(f).trimmed();
  CHECK(d.lo() == -1);
  CHECK(d.dims() == f.dims());
  CHECK(biduality_map(f).is_bijective());
  CHECK(biduality_map(k_over(a)).is_bijective());
  CHECK_FALSE(biduality_map(k_over(rings::r3())).is_bijective());
}

TEST_CASE("modules over Gorenstein rings are reflexive") {
  gen::Rng r(22);
  for (AlgebraPtr a : {rings::r2(), rings::r6()})
    for (int trial = 0; trial < 8; ++trial) {
      GradedModule m = gen::module(r, a);
      if (m.is_zero()) continue;
      CHECK(biduality_map(m).is_bijective());
      CHECK(gdim_zero_check(m, 3).passed());
    }
}

TEST_CASE("G-dimension certificate over k[x,y]/(x^2,xy,y^2)") {
  // 0 -> m -> A -> k -> 0 with m = k(-1)^2: Hom(k,A) = soc A has dim 2, Hom(m,A) has dim 4,
  // so Ext^1(k,A) = 4 - (3 - 2) = 3.
  GdimCertificate c = gdim_zero_check(k_over(rings::r3()), 3);
  CHECK_FALSE(c.passed());
  CHECK_FALSE(c.reflexive);
  CHECK_FALSE(c.ext_M_vanishes);
  REQUIRE_FALSE(c.ext_M.empty());
  CHECK(c.ext_M[0] == 3);
  CHECK(c.failure_summary().find("not reflexive") != std::string::npos);
  CHECK(c.failure_summary().find("Ext^1(M,A)") != std::string::npos);

  GdimCertificate ok = gdim_zero_check(k_over(rings::r2()), 5);
  CHECK(ok.passed());
  CHECK(ok.window == 5);
}

TEST_CASE("direct sums and pushouts") {
  AlgebraPtr a = rings::r2();
  GradedModule k = k_over(a);
  GradedModule s = direct_sum(k, free_module(a, {0}));
  CHECK(s.dims() == std::vector<std::size_t>{2, 2, 1});
  CHECK_FALSE(s.check_axioms());

  // Pushout of the identity of A along itself is A.
  auto f = std::make_shared<GradedModule>(free_module(a, {0}));
  ModuleMap id;
  id.source = f;
  id.target = f;
  for (int d = f->lo(); d <= f->hi(); ++d) id.components.push_back(Matrix::identity(f->dim(d), a->modulus()));
  CHECK(pushout(id, id).dims() == f->dims());
}

TEST_CASE("tensor extension along A1 -> A1 (x) A2") {
  AlgebraPtr a1 = rings::r1();
  AlgebraPtr a2 = rings::make({"y", "z"}, {"y^2", "yz", "z^2"});
  AlgebraPtr a = tensor_algebra(*a1, *a2);
  GradedModule m = tensor_extend(k_over(a1), *a2, a);
  CHECK(m.dims() == a2->hilbert_function());
  CHECK_FALSE(m.check_axioms());
  CHECK(gdim_zero_check(m, 4).passed());
}

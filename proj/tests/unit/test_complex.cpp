#include <doctest.h>

#include "generators.hpp"
#include "rings.hpp"
#include "symgrowth/complex.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/operators.hpp"

using namespace symgrowth;

namespace {

// beta_n of k over a complete intersection in two variables: n + 1 on the right, |n| on the left.
std::size_t two_variable_ci(int n) { return static_cast<std::size_t>(n >= 0 ? n + 1 : -n); }

}  // namespace

TEST_CASE("minimal resolution of k over k[x]/(x^2) is multiplication by x") {
  AlgebraPtr a = rings::r1();
  Resolution r = minimal_resolution(residue_field(a), 6);
  for (int n = 0; n <= 6; ++n) CHECK(r.complex.twists(n) == Twists{n});
  for (int n = 1; n <= 6; ++n) {
    const FreeMap& d = r.complex.diff(n);
    REQUIRE(d.rows() == 1);
    REQUIRE(d.cols() == 1);
    CHECK(d.entry_degree(0, 0) == 1);
    CHECK(d.entry(0, 0)[0] != 0);
  }
  CHECK(check_exactness(r.complex).ok());
}

TEST_CASE("Betti numbers of k over k[x,y]/(x^2,xy,y^2) double") {
  Resolution r = minimal_resolution(residue_field(rings::r3()), 6);
  for (int n = 0; n <= 6; ++n) CHECK(r.complex.rank(n) == (std::size_t{1} << n));
}

TEST_CASE("complete resolution of k over k[x]/(x^2)") {
  CompleteResolution cr = complete_resolution(residue_field(rings::r1()), 10);
  BettiTable b = betti(cr.complex);
  CHECK(b.lo == -10);
  for (int n = -10; n <= 10; ++n) CHECK(b.at(n) == 1);
  CHECK_FALSE(cr.free_summand);
  CHECK(check_exactness(cr.complex).ok());
  CHECK(check_exactness(dualize_complex(cr.complex)).ok());
  for (int n = -9; n <= 10; ++n) CHECK(cr.complex.minimal_at(n));
}

TEST_CASE("complete resolution of k over k[x,y]/(x^2,y^2)") {
  const int s = 10;
  GradedModule k = residue_field(rings::r2());
  CompleteResolution cr = complete_resolution(k, s);
  BettiTable b = betti(cr.complex);
  for (int n = -s; n <= s; ++n) CHECK(b.at(n) == two_variable_ci(n));
  CHECK(tate_ext_dims(cr.complex) == b);
  // Cosyzygies of M, resolving nothing over M*.
  BettiTable neg = negative_betti_via_dual(k, s);
  for (int n = 1; n <= s; ++n) CHECK(neg.at(-n) == b.at(-n));
}

TEST_CASE("a free module has a contractible complete resolution") {
  CompleteResolution cr = complete_resolution(free_module(rings::r2(), {0}), 4);
  CHECK(cr.free_summand);
  BettiTable ranks = betti(cr.complex);
  for (int n = -4; n <= 4; ++n) CHECK(ranks.at(n) == (n == 0 || n == -1 ? 1u : 0u));
  BettiTable stable = tate_ext_dims(cr.complex);
  for (int n = -4; n <= 4; ++n) CHECK(stable.at(n) == 0);
  CHECK(check_exactness(cr.complex).ok());
}

TEST_CASE("the complete resolution of Omega k is that of k shifted") {
  AlgebraPtr a = rings::r2();
  GradedModule k = residue_field(a);
  Syzygy s = syzygy(k);
  BettiTable bk = tate_ext_dims(complete_resolution(k, 8).complex);
  BettiTable bo = tate_ext_dims(complete_resolution(s.module, 8).complex);
  for (int n = -8; n <= 7; ++n) CHECK(bo.at(n) == bk.at(n + 1));
}

TEST_CASE("complete resolution refuses modules without G-dimension zero") {
  try {
    complete_resolution(residue_field(rings::r3()), 4);
    FAIL("expected a refusal");
  } catch (const PreconditionError& e) {
    const std::string what = e.what();
    CHECK(what.find("not reflexive") != std::string::npos);
    CHECK(what.find("Ext^1(M,A)") != std::string::npos);
  }
}

TEST_CASE("complete resolutions of random modules over Gorenstein rings are totally acyclic") {
  gen::Rng r(30);
  int nonfree = 0;
  for (AlgebraPtr a : {rings::r2(), rings::r6()})
    for (int trial = 0; trial < 8; ++trial) {
      GradedModule m = gen::module(r, a);
      if (m.is_zero()) continue;
      const int s = 5;
      CompleteResolution cr = complete_resolution(m, s);
      ExactnessReport e = check_exactness(cr.complex);
      CHECK(e.ok());
      CHECK(e.checked.size() == static_cast<std::size_t>(2 * s - 1));
      CHECK(check_exactness(dualize_complex(cr.complex)).ok());
      BettiTable ranks = betti(cr.complex);
      BettiTable neg = negative_betti_via_dual(m, s);
      for (int n = 1; n <= s; ++n) CHECK(neg.at(-n) == ranks.at(-n));
      // The stable Betti numbers differ from the ranks only by free summands.
      BettiTable stable = tate_ext_dims(cr.complex);
      for (int n = -s; n <= s; ++n) CHECK(stable.at(n) <= ranks.at(n));
      if (!cr.free_summand) CHECK(stable == ranks);
      nonfree += stable.at(0) > 0;
    }
  CHECK(nonfree >= 8);
}

TEST_CASE("dualizing twice gives back the complex") {
  CompleteResolution cr = complete_resolution(residue_field(rings::r2()), 4);
  FreeComplex dd = dualize_complex(dualize_complex(cr.complex));
  CHECK(dd.lo() == cr.complex.lo());
  for (int n = dd.lo(); n <= dd.hi(); ++n) CHECK(dd.twists(n) == cr.complex.twists(n));
  for (int n = dd.lo() + 1; n <= dd.hi(); ++n) CHECK(dd.diff(n) == cr.complex.diff(n));
}

TEST_CASE("exactness check detects a broken complex") {
  AlgebraPtr a = rings::r1();
  CompleteResolution cr = complete_resolution(residue_field(a), 3);
  std::vector<Twists> tw;
  std::vector<FreeMap> diffs;
  for (int n = -3; n <= 3; ++n) tw.push_back(cr.complex.twists(n));
  for (int n = -2; n <= 3; ++n) diffs.push_back(n == 1 ? FreeMap::zero(a, tw[4], tw[3]) : cr.complex.diff(n));
  FreeComplex broken(a, -3, tw, diffs);
  ExactnessReport e = check_exactness(broken);
  CHECK(e.squares_to_zero);
  CHECK_FALSE(e.exact);
  REQUIRE(e.first_failure);
  CHECK((*e.first_failure == 0 || *e.first_failure == 1));
}

#include "symgrowth/fixtures.hpp"

#include <algorithm>

#include "symgrowth/complex.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/growth.hpp"

namespace symgrowth {

namespace {

using BettiFn = std::function<std::optional<std::size_t>(int)>;

Fixture make(std::string name, std::string description, const std::string& text, Expectation e) {
  JobSpec job = parse_job(text);
  Fixture f;
  f.name = std::move(name);
  f.description = std::move(description);
  f.ring = *job.ring;
  f.module = job.module;
  f.expected = std::move(e);
  return f;
}

BettiFn constant(std::size_t c) {
  return [c](int) { return std::optional<std::size_t>(c); };
}

// k over a complete intersection in two variables: the tensor product of two periodic resolutions.
BettiFn two_variable_ci(int shift) {
  return [shift](int n) -> std::optional<std::size_t> {
    n += shift;
    return static_cast<std::size_t>(n >= 0 ? n + 1 : -n);
  };
}

std::vector<Fixture> build_fixtures() {
  std::vector<Fixture> out;
  out.push_back(make("R1-k", "k over k[x]/(x^2)",
                     "ring { vars = x; rels = x^2 }\n"
                     "module { rows = [0]; cols = [1]; matrix = [[x]] }",
                     {true, true, "1", "1", true, constant(1), "the periodic complex ... -x-> A(-n) -x-> ..."}));
  out.push_back(make("R2-free", "the free module A over k[x,y]/(x^2,y^2)",
                     "ring { vars = x, y; rels = x^2, y^2 }",
                     {true, true, "0", "0", true, constant(0), "a free module has a contractible complete resolution"}));
  out.push_back(make("R2-k", "k over k[x,y]/(x^2,y^2)",
                     "ring { vars = x, y; rels = x^2, y^2 }\n"
                     "module { rows = [0]; cols = [1, 1]; matrix = [[x, y]] }",
                     {true, true, "2", "2", true, two_variable_ci(0),
                      "tensor product of the periodic resolutions over k[x]/(x^2) and k[y]/(y^2), and its dual"}));
  out.push_back(make("R2-omega-k", "the maximal ideal (x, y) of k[x,y]/(x^2,y^2)",
                     "ring { vars = x, y; rels = x^2, y^2 }\n"
                     "module { rows = [1, 1]; cols = [2, 2, 2]; matrix = [[x, 0, y], [0, y, -x]] }",
                     {true, true, "2", "2", true, two_variable_ci(1),
                      "the complete resolution of k shifted by one index"}));
  out.push_back(make("R3-k", "k over k[x,y]/(x^2,xy,y^2), not of G-dimension zero",
                     "ring { vars = x, y; rels = x^2, xy, y^2 }\n"
                     "module { rows = [0]; cols = [1, 1]; matrix = [[x, y]] }",
                     {false, false, "exponential", "", std::nullopt,
                      [](int n) -> std::optional<std::size_t> {
                        if (n < 0 || n > 40) return std::nullopt;
                        return std::size_t{1} << n;
                      },
                      "m^2 = 0, so each syzygy is a sum of copies of k and the ranks double"}));
  out.push_back(make("R4-k", "k[y,z]/(y^2,yz,z^2) over k[x]/(x^2) (x) k[y,z]/(y^2,yz,z^2)",
                     "ring { vars = x, y, z; rels = x^2, y^2, yz, z^2 }\n"
                     "module { rows = [0]; cols = [1]; matrix = [[x]] }",
                     {true, false, "1", "1", true, constant(1),
                      "the annihilator of x is (x), so multiplication by x is periodic"}));
  out.push_back(make("R5-k", "k over k[x]/(x^3)",
                     "ring { vars = x; rels = x^3 }\n"
                     "module { rows = [0]; cols = [1]; matrix = [[x]] }",
                     {true, true, "1", "1", true, constant(1), "the periodic complex alternating x and x^2"}));
  out.push_back(make("R6-k", "k over k[x,y]/(x^2,y^3)",
                     "ring { vars = x, y; rels = x^2, y^3 }\n"
                     "module { rows = [0]; cols = [1, 1]; matrix = [[x, y]] }",
                     {true, true, "2", "2", true, two_variable_ci(0),
                      "tensor product of the periodic resolutions over k[x]/(x^2) and k[y]/(y^3)"}));
  std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return out;
}

}  // namespace

JobSpec Fixture::job(const std::string& command) const {
  JobSpec j;
  j.ring = ring;
  j.module = module;
  j.command = command;
  j.steps = steps;
  return j;
}

AlgebraPtr Fixture::build_ring() const { return symgrowth::build_ring(ring); }

GradedModule Fixture::build_module(const AlgebraPtr& r) const { return symgrowth::build_module(r, module); }

const std::vector<Fixture>& standard_fixtures() {
  static const std::vector<Fixture> fixtures = build_fixtures();
  return fixtures;
}

const Fixture* find_fixture(const std::string& name) {
  for (const Fixture& f : standard_fixtures())
    if (f.name == name) return &f;
  return nullptr;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const Fixture& f : standard_fixtures()) out.push_back(f.name);
  return out;
}

ConstructionResult construction_instance(const AlgebraPtr& a1, const GradedModule& m1, const AlgebraPtr& a2,
                                         int window) {
  GdimCertificate cert = gdim_zero_check(m1, window);
  if (!cert.passed())
    throw PreconditionError("construction needs M1 of G-dimension zero over A1: " + cert.failure_summary());

  ConstructionResult r;
  r.ring = tensor_algebra(*a1, *a2);
  r.module = tensor_extend(m1, *a2, r.ring);

  // Hom_A(M1 (x) A2, A) = Hom_A1(M1, A1) (x) A2, degreewise.
  const GradedModule d = dual(r.module);
  const GradedModule d1 = dual(m1);
  r.dual_compatible = true;
  if (!d1.is_zero() || !d.is_zero()) {
    const int lo = std::min(d.lo(), d1.lo());
    const int hi = std::max(d.hi(), d1.hi() + a2->top());
    for (int e = lo; e <= hi && r.dual_compatible; ++e) {
      std::size_t expected = 0;
      for (int b = 0; b <= a2->top(); ++b) expected += d1.dim(e - b) * a2->dim(b);
      if (expected != d.dim(e)) {
        r.dual_compatible = false;
        r.dual_witness = "degree " + std::to_string(e) + ": dim (M*)_e = " + std::to_string(d.dim(e)) +
                         ", dim (M1* (x) A2)_e = " + std::to_string(expected);
      }
    }
  }

  Fixture& f = r.fixture;
  f.name = "construction";
  f.description = "M1 (x) A2 over A1 (x) A2";
  JobSpec job = parse_job(canonical_text([&] {
    JobSpec j;
    j.ring = ring_spec_of(*r.ring);
    j.module = module_spec_of(minimal_presentation(r.module));
    return j;
  }()));
  f.ring = *job.ring;
  f.module = job.module;

  // The expectations are those of M1 over A1.
  CompleteResolution cr1 = complete_resolution(m1, f.steps);
  const BettiTable t1 = tate_ext_dims(cr1.complex);
  const GrowthReport g1 = growth_of_table(t1);
  f.expected.gdim_zero = true;
  f.expected.ci = verify_ci(*r.ring).has_value();
  f.expected.cx_plus = g1.cx_plus.to_string();
  f.expected.cx_minus = g1.cx_minus.to_string();
  f.expected.symmetric = g1.symmetric == Tri::inconclusive ? std::nullopt : std::optional<bool>(g1.symmetric == Tri::yes);
  f.expected.betti = [t1](int n) -> std::optional<std::size_t> {
    if (n < t1.lo || n > t1.hi()) return std::nullopt;
    return t1.at(n);
  };
  f.expected.oracle = "Betti numbers of M1 over A1; minimal resolutions extend along the flat map A1 -> A";
  return r;
}

}  // namespace symgrowth

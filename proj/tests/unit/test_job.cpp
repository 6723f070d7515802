#include <doctest.h>

#include "generators.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/job.hpp"

using namespace symgrowth;

namespace {

Polynomial poly(const std::string& s, const std::vector<std::string>& names) {
  return parse_polynomial(s, names, kDefaultModulus);
}

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
};

Position error_of(const std::string& text) {
  try {
    parse_job(text);
  } catch (const InputError& e) {
    return {e.line(), e.column(), e.what()};
  }
  FAIL("expected an input error for: " << text);
  return {};
}

bool mentions(const Position& p, const std::string& word) { return p.message.find(word) != std::string::npos; }

}  // namespace

TEST_CASE("the free module over k[x,y]/(x^2,y^2)") {
  JobSpec j = parse_job("ring{p=32003; vars=x,y; rels=x^2,y^2} module{cols=[]; rows=[0]} cmd=resolve steps=8");
  REQUIRE(j.ring);
  CHECK(j.ring->p == 32003);
  CHECK(j.ring->vars == std::vector<std::string>{"x", "y"});
  CHECK(j.ring->rels == std::vector<Polynomial>{poly("x^2", {"x", "y"}), poly("y^2", {"x", "y"})});
  REQUIRE(j.module);
  CHECK(j.module->rows == Twists{0});
  CHECK(j.module->cols.empty());
  CHECK(j.command == "resolve");
  CHECK(j.steps == 8);
  GradedModule m = build_module(build_ring(*j.ring), j.module);
  CHECK(m.dims() == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("a module block with a matrix and all parameters") {
  const std::string text =
      "# k over R2\n"
      "ring {\n  p = 32003\n  vars = x, y\n  rels = x^2,\n         y^2\n}\n"
      "module { rows = [0]; cols = [1, 1]; matrix = [[x, y]] }  # the maximal ideal\n"
      "cmd = reduce steps = 6 tail = 3 eta = 1, -1 seed = 7\n";
  JobSpec j = parse_job(text);
  CHECK(j.ring->rels.size() == 2);
  CHECK(j.module->matrix.size() == 1);
  CHECK(j.module->matrix[0].size() == 2);
  CHECK(j.eta == std::vector<std::int64_t>{1, -1});
  CHECK(j.tail == 3);
  CHECK(j.seed == 7u);
  CHECK(j.steps_or_default() == 6);
  CHECK(build_module(build_ring(*j.ring), j.module).dims() == std::vector<std::size_t>{1});
}

TEST_CASE("defaults") {
  JobSpec j = parse_job("fixture = R1-k cmd = betti");
  CHECK(j.fixture == "R1-k");
  CHECK(j.steps_or_default() == kDefaultSteps);
  CHECK(j.tail_or_default() == kDefaultTail);
  CHECK(j.seed_or_default() == 0);
  CHECK(parse_job("fixture = R1-k cmd = symgrowth").steps_or_default() == kDefaultGrowthSteps);
  // No module block: the ring itself.
  JobSpec r = parse_job("ring { vars = x; rels = x^2 } cmd = betti");
  CHECK(r.ring->p == kDefaultModulus);
  CHECK(build_module(build_ring(*r.ring), r.module).dims() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("diagnostics carry line and column") {
  Position p = error_of("ring { vars = x, y; rels = x^2+y }");
  CHECK(p.line == 1);
  CHECK(p.column == 28);
  CHECK(mentions(p, "homogeneous"));

  p = error_of("ring { p = 32004; vars = x; rels = x^2 }");
  CHECK(p.line == 1);
  CHECK(p.column == 12);
  CHECK(mentions(p, "prime"));

  p = error_of("ring { vars = x, y; rels = x^2, y^2 }\nmodule { rows = [0]; cols = [1]; matrix = [[y^2]] }");
  CHECK(p.line == 2);
  CHECK(p.column > 40);
  CHECK(mentions(p, "degree 1"));

  p = error_of("ring { vars = x; rels = x^2 }\n\n  cmd = frobnicate");
  CHECK(p.line == 3);
  CHECK(p.column == 9);
}

TEST_CASE("malformed jobs are rejected") {
  const std::vector<std::string> bad{
      "ring { vars = x; rels = x^2 ",                                    // unterminated
      "ring { vars = x; rels = x^2; rels = x^3 }",                       // duplicate entry
      "ring { vars = x; rels = x^2; colour = red }",                     // unknown entry
      "ring { vars = x; rels = x^2 } ring { vars = y; rels = y^2 }",     // duplicate block
      "ring { vars = x; rels = x^2 } cmd = betti cmd = cx",              // duplicate parameter
      "ring { vars = x; rels = x^2 } speed = 3",                         // unknown parameter
      "ring { vars = x, x; rels = x^2 }",                                // repeated variable
      "ring { vars = x; rels = x }",                                     // degree 1
      "ring { vars = x; rels = 0 }",                                     // zero relation
      "ring { vars = x; rels = x^2 } steps = 0",                         // out of range
      "ring { vars = x; rels = x^2 } steps = many",                      // not an integer
      "ring { vars = x; rels = x^2 } seed = -1",                         // negative seed
      "module { rows = [0]; cols = []; matrix = [] }",                   // module without ring
      "fixture = R1-k ring { vars = x; rels = x^2 }",                    // both
      "ring { vars = x; rels = x^2 } module { rows = [0]; cols = [1]; matrix = [[x], [x]] }",  // shape
      "ring { vars = x; rels = x^2 } module { rows = [0]; cols = [1]; matrix = [[z]] }",       // unknown variable
  };
  for (const std::string& text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_job(text), InputError);
  }
}

TEST_CASE("comments and whitespace are ignored") {
  JobSpec a = parse_job("ring{vars=x;rels=x^2}cmd=betti");
  JobSpec b = parse_job("# header\nring {   # ring\n vars = x   # one variable\n rels = x ^ 2\n}\n\ncmd = betti # done\n");
  CHECK(a == b);
}

TEST_CASE("canonical text round-trips random jobs") {
  gen::Rng r(60);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 60; ++trial) {
    JobSpec j;
    const std::size_t nv = static_cast<std::size_t>(r.uniform(1, 3));
    RingSpec ring;
    ring.p = r.coin(50) ? kDefaultModulus : 101;
    ring.vars.assign(names.begin(), names.begin() + static_cast<long>(nv));
    for (int k = r.uniform(1, 3); k > 0; --k) {
      Polynomial f = gen::homogeneous(r, nv, r.uniform(2, 3), ring.p, 30);
      if (!f.is_zero()) ring.rels.push_back(f);
    }
    if (ring.rels.empty()) ring.rels.push_back(parse_polynomial(names[0] + "^2", ring.vars, ring.p));
    j.ring = ring;
    if (r.coin(70)) {
      ModuleSpec m;
      for (int i = r.uniform(1, 2); i > 0; --i) m.rows.push_back(r.uniform(-2, 2));
      for (int i = r.uniform(0, 3); i > 0; --i) m.cols.push_back(r.uniform(-1, 4));
      for (int row : m.rows) {
        std::vector<Polynomial> line;
        for (int col : m.cols) line.push_back(gen::homogeneous(r, nv, col - row, ring.p, 40));
        m.matrix.push_back(line);
      }
      j.module = m;
    }
    if (r.coin(30)) j.ring2 = RingSpec{kDefaultModulus, {"u"}, {parse_polynomial("u^3", {"u"}, kDefaultModulus)}};
    j.command = known_commands()[static_cast<std::size_t>(r.uniform(0, static_cast<int>(known_commands().size()) - 1))];
    if (r.coin(50)) j.steps = r.uniform(1, 20);
    if (r.coin(50)) j.tail = r.uniform(1, 6);
    if (r.coin(50)) j.seed = r.next() % 1000;
    if (r.coin(50)) j.eta = std::vector<std::int64_t>{r.uniform(-5, 5), r.uniform(0, 9)};
    const std::string text = canonical_text(j);
    CAPTURE(text);
    JobSpec again = parse_job(text);
    CHECK(again == j);
    CHECK(canonical_text(again) == text);
  }
}

TEST_CASE("ring and presentation specs rebuild the same objects") {
  JobSpec j = parse_job("ring { vars = x, y; rels = x^2, y^2 } module { rows = [0]; cols = [1, 1]; matrix = [[x, y]] }");
  AlgebraPtr a = build_ring(*j.ring);
  CHECK(ring_spec_of(*a) == *j.ring);
  GradedModule k = build_module(a, j.module);
  ModuleSpec spec = module_spec_of(minimal_presentation(k));
  CHECK(build_module(a, spec).dims() == k.dims());
}

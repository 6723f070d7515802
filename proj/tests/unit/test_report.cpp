#include <doctest.h>

#include "symgrowth/errors.hpp"
#include "symgrowth/fixtures.hpp"
#include "symgrowth/report.hpp"

using namespace symgrowth;

namespace {

Report run_text(const std::string& text) { return run(resolve_fixture(parse_job(text))); }

const Json* find_check(const Json& report, const std::string& name) {
  for (const Json& c : report.at("checks"))
    if (c.at("name") == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("symgrowth of k over k[x]/(x^2)") {
  Report r = run_text("fixture = R1-k cmd = symgrowth");
  const Json& j = r.json;
  CHECK(j.at("cx_plus") == 1);
  CHECK(j.at("cx_minus") == 1);
  CHECK(j.at("symmetric") == true);
  CHECK(j.at("betti_plus") == Json(std::vector<int>(11, 1)));
  CHECK(j.at("betti_minus") == Json(std::vector<int>(10, 1)));
  CHECK(j.at("poincare_plus").at("num") == Json({1}));
  CHECK(j.at("poincare_plus").at("den") == Json({1, -1}));
  CHECK(j.begin().key() == "command");
  CHECK((--j.end()).key() == "checks");
  for (const Json& c : j.at("checks")) {
    CHECK(c.size() == 3);
    CHECK(c.at("verdict") == "pass");
  }
  CHECK(r.text.find("P+ = (1) / (1 - t)") != std::string::npos);
}

TEST_CASE("gdim of k over k[x,y]/(x^2,xy,y^2) fails with a certificate") {
  Report r = run_text("fixture = R3-k cmd = gdim");
  const Json* reflexive = find_check(r.json, "reflexive");
  const Json* ext = find_check(r.json, "ext_M_vanishes");
  const Json* gdim = find_check(r.json, "gdim_zero");
  REQUIRE(reflexive);
  REQUIRE(ext);
  REQUIRE(gdim);
  CHECK(reflexive->at("verdict") == "fail");
  CHECK(ext->at("verdict") == "fail");
  CHECK(gdim->at("verdict") == "fail");
  const std::string w = gdim->at("witness");
  CHECK(w.find("not reflexive") != std::string::npos);
  CHECK(w.find("Ext^1") != std::string::npos);
}

TEST_CASE("refusals surface as precondition errors") {
  CHECK_THROWS_AS(run_text("fixture = R3-k cmd = complete"), PreconditionError);
  CHECK_THROWS_AS(run_text("fixture = R4-k cmd = operators"), PreconditionError);
  CHECK_THROWS_AS(run_text("fixture = R1-k cmd = construct"), InputError);
  CHECK_THROWS_AS(run_text("fixture = R2-k cmd = reduce eta = 1, 1, 1"), InputError);
}

TEST_CASE("betti of a free module is a table of zeros") {
  Report r = run_text("ring { vars = x, y; rels = x^2, y^2 } module { rows = [0]; cols = [] } cmd = betti steps = 5");
  CHECK(r.json.at("betti_plus") == Json(std::vector<int>(6, 0)));
  CHECK(r.json.at("betti_minus") == Json(std::vector<int>(5, 0)));
}

TEST_CASE("betti over a ring without complete resolutions falls back to the minimal resolution") {
  Report r = run_text("fixture = R3-k cmd = cx");
  CHECK(r.json.at("betti_plus").at(5) == 32);
  CHECK(r.json.at("cx_plus") == "exponential");
  CHECK(r.json.at("betti_minus").empty());
  const Json* gdim = find_check(r.json, "gdim_zero");
  REQUIRE(gdim);
  CHECK(gdim->at("verdict") == "fail");
}

TEST_CASE("reports are deterministic and flags override the job") {
  for (const std::string& name : fixture_names()) {
    JobSpec j = parse_job("fixture = " + name + " cmd = symgrowth seed = 3");
    CHECK(run(resolve_fixture(j)).json.dump() == run(resolve_fixture(j)).json.dump());
  }
  JobSpec j = parse_job("fixture = R1-k cmd = betti steps = 3");
  CHECK(resolve_fixture(j).steps == 3);
  CHECK(run(resolve_fixture(j)).json.at("betti_plus").size() == 4);
}

TEST_CASE("error JSON") {
  Json e = error_json("input", "bad", 2, 5);
  CHECK(e.at("error").at("kind") == "input");
  CHECK(e.at("error").at("message") == "bad");
  CHECK(e.at("error").at("line") == 2);
  CHECK(e.at("error").at("column") == 5);
  CHECK(error_json("internal", "x").at("error").at("line") == 0);
}

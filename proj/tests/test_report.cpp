#include <doctest.h>

#include "sigma3/families.hpp"
#include "sigma3/report.hpp"
#include "sigma3/suites.hpp"

using namespace sigma3;

namespace {

nlohmann::ordered_json without_timing(nlohmann::ordered_json j) {
  j["provenance"].erase("seconds");
  return j;
}

}  // namespace

TEST_CASE("report of an abelian group") {
  PcPresentation pc = p_quotient(parse_fp("gens x,y; rel x^9, y^3, [y,x];"), 3).pc;
  Report r = make_report(pc, "C9 x C3", {});
  CHECK(r.lo == 3);
  CHECK(r.cl == 1);
  CHECK(r.sl == 1);
  CHECK(r.d == 2);
  CHECK(r.r == 3);  // x^9, y^3, [y,x]
  CHECK(r.commutator_quotient.to_string() == "21");
  REQUIRE(r.artin);
  CHECK(r.artin->kappa.to_string() == "(000;0)");
  CHECK(r.sigma);
  CHECK_FALSE(r.schur);
}

TEST_CASE("report without a (3^e,3) commutator quotient") {
  PcPresentation pc = p_quotient(parse_fp("gens x,y; rel x^3, y^3, [y,x];"), 3).pc;
  Report r = make_report(pc, "C3 x C3", {});
  CHECK_FALSE(r.artin);
  CHECK_FALSE(r.artin_note.empty());
  auto j = to_json(r);
  CHECK(j["kappa"].is_null());
  CHECK(j.contains("artin_note"));
}

TEST_CASE("report json is deterministic and ordered") {
  PcPresentation pc = instantiate_family({Family::bifurcation, 3});
  ReportOptions opt;
  opt.depth = 2;
  opt.with_descendants = true;
  opt.steps = {1};
  auto a = to_json(make_report(pc, "bifurcation(3)", opt));
  auto b = to_json(make_report(pc, "bifurcation(3)", opt));
  CHECK(without_timing(a).dump() == without_timing(b).dump());
  CHECK(a.begin().key() == "subject");
  CHECK(a["lo"] == 9);
  CHECK(a["commutator_quotient"] == "31");
  CHECK(a.contains("alpha2"));
  CHECK(a["alpha2"]["layers"].size() == 4);
  CHECK(a["descendants"].size() == 1);
  CHECK(a["provenance"]["tool"] == "sigma3");
  CHECK(to_text(make_report(pc, "bifurcation(3)", {})).find("bifurcation(3)") != std::string::npos);
}

TEST_CASE("descendant steps past the order cap") {
  PcPresentation pc = instantiate_family({Family::bifurcation, 3});
  ReportOptions opt;
  opt.with_descendants = true;
  opt.steps = {2};
  opt.max_order_exp = 10;
  CHECK_THROWS_AS(make_report(pc, "bifurcation(3)", opt), ResourceCapExceeded);
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("no-such-suite"), std::invalid_argument);
  SuiteResult r = run_suite("bifurcation-orders");
  CHECK(r.status == SuiteStatus::pass);
  CHECK(r.failures() == 0);
  auto j = to_json(r);
  CHECK(j["suite"] == "bifurcation-orders");
  CHECK(j["status"] == "PASS");
  SuiteOptions capped;
  capped.max_order_exp = 20;
  CHECK(run_suite("elevated-census-stretch", capped).status == SuiteStatus::cap);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(50, 0);
  parallel_for(50, [&](int i) { hits[i]++; });
  for (int h : hits) CHECK(h == 1);
}

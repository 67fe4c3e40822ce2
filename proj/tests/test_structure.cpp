#include <doctest.h>

#include "sigma3/families.hpp"
#include "sigma3/structure.hpp"

using namespace sigma3;

namespace {

const char* kAbelian93 =
    "pc p=3 n=3\n"
    "g1 name=x1 w=1 def=none\n"
    "g2 name=y w=1 def=none\n"
    "g3 name=x2 w=2 def=p:1\n"
    "pow g1 = g3\n";

}  // namespace

TEST_CASE("commutator quotients of the bifurcation family") {
  for (int e = 2; e <= 4; ++e) {
    Collector c(instantiate_family({Family::bifurcation, e}));
    auto g = whole_group(c);
    auto ab = abelian_quotient(c, g, derived_subgroup(c, g));
    CHECK(ab.type == AbelianType{{e, 1}});
  }
  Collector c4(instantiate_family({Family::bifurcation, 4}));
  CHECK(summarize(c4).nilpotency_class == 4);
}

TEST_CASE("metabelian chain structure") {
  Collector c(instantiate_family({Family::metabelian_chain, 6}));
  auto s = summarize(c);
  CHECK(s.derived_length == 2);
  REQUIRE(s.lower_central_factors.size() >= 3);
  CHECK(s.lower_central_factors[2] == AbelianType{{1, 1}});
  CHECK(s.bcf);
  auto ml = maximal_layers(c, true);
  for (int i = 0; i < 4; ++i) CHECK(ml.second[i].size() == (ml.h_ab[i].rank() == 3 ? 13u : 4u));
}

TEST_CASE("abelian (9,3) layers") {
  Collector c(parse_pcp(kAbelian93));
  auto s = summarize(c);
  CHECK(s.nilpotency_class == 1);
  CHECK(s.derived_length == 1);
  auto ml = maximal_layers(c, true);
  std::vector<std::string> got;
  for (auto& t : ml.h_ab) got.push_back(t.to_string());
  CHECK(got == std::vector<std::string>{"2", "2", "2", "11"});
  // (p^r - 1)/(p - 1) maximal subgroups for an abelian H of rank r
  for (int i = 0; i < 4; ++i) CHECK(ml.second[i].size() == (ml.h_ab[i].rank() == 2 ? 4u : 1u));
}

#include <doctest.h>

#include "sigma3/consistency.hpp"
#include "sigma3/families.hpp"

using namespace sigma3;

TEST_CASE("bifurcation expansions are consistent") {
  for (int e = 2; e <= 8; ++e) {
    CAPTURE(e);
    auto pc = expand_family({Family::bifurcation, e});
    CHECK(pc.size() == e + 6);
    auto bad = check_consistency(pc);
    if (!bad.empty()) MESSAGE(bad[0].kind << " " << pc.name(bad[0].gens[0]) << " " << pc.name(bad[0].gens.back()));
    CHECK(bad.empty());
  }
}

TEST_CASE("metabelian chain expansions are consistent") {
  for (int e = 5; e <= 9; ++e) {
    CAPTURE(e);
    auto pc = expand_family({Family::metabelian_chain, e});
    CHECK(pc.size() == e + 7);
    auto bad = check_consistency(pc);
    if (!bad.empty()) MESSAGE(bad[0].kind << " " << pc.name(bad[0].gens[0]) << " " << pc.name(bad[0].gens.back()));
    CHECK(bad.empty());
  }
}

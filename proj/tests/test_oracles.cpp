#include <doctest.h>

#include "sigma3/consistency.hpp"
#include "sigma3/families.hpp"
#include "sigma3/oracles.hpp"
#include "sigma3/quotients.hpp"

using namespace sigma3;

TEST_CASE("coset enumeration of small groups") {
  CHECK(coset_enumeration_order(parse_fp("gens a; rel a^5;")) == 5);
  CHECK(coset_enumeration_order(parse_fp("gens a,b; rel a^3, b^2, (a*b)^2;")) == 6);
  CHECK(coset_enumeration_order(parse_fp("gens a,b; rel a^4, a^2*b^-2, b^-1*a*b*a;")) == 8);
  CHECK(coset_enumeration_order(parse_fp("gens x,y; rel x^9, y^3, [y,x];")) == 27);
  CHECK(coset_enumeration_order(parse_fp("gens a,b; rel a^2, b^3, (a*b)^5;")) == 60);
}

TEST_CASE("coset enumeration gives up on infinite groups") {
  CHECK_FALSE(coset_enumeration_order(parse_fp("gens a,b; rel a^3, b^3, (a*b)^3;"), 5000));
  CHECK_FALSE(coset_enumeration_order(parse_fp("gens a;"), 1000));
}

TEST_CASE("pc presentations as finite presentations") {
  for (int e = 2; e <= 3; ++e) {
    PcPresentation pc = instantiate_family({Family::bifurcation, e});
    PcPresentation low = truncate(pc, 3);
    auto order = coset_enumeration_order(pc_to_fp(low));
    REQUIRE(order);
    std::int64_t expected = 1;
    for (int i = 0; i < low.size(); ++i) expected *= 3;
    CHECK(*order == expected);
  }
}

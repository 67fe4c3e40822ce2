#include <doctest.h>

#include "sigma3/consistency.hpp"
#include "sigma3/families.hpp"
#include "sigma3/quotients.hpp"
#include "sigma3/structure.hpp"

using namespace sigma3;

TEST_CASE("p-quotients of small presentations") {
  auto free2 = p_quotient(parse_fp("gens x,y;"), 3, 1);
  CHECK(free2.pc.size() == 2);
  auto ab = p_quotient(parse_fp("gens x,y; rel x^9, y^3, [y,x];"), 3);
  CHECK(ab.stabilized);
  CHECK(ab.pc.size() == 3);
  Collector c(ab.pc);
  CHECK(abelianization_type(c, whole_group(c)).to_string() == "21");
}

TEST_CASE("covers of elementary and (9,3)") {
  auto el = p_quotient(parse_fp("gens x,y; rel x^3, y^3, [y,x];"), 3);
  auto cd = p_cover(el.pc);
  CHECK(cd.generator_rank == 2);
  CHECK(cd.multiplicator_rank == 3);
  CHECK(cd.nuclear_rank == 3);
  auto ab = p_quotient(parse_fp("gens x,y; rel x^9, y^3, [y,x];"), 3);
  auto cd2 = p_cover(ab.pc);
  CHECK(cd2.multiplicator_rank == 3);
  CHECK(check_consistency(cd2.cover).empty());
}

TEST_CASE("family read as fp group") {
  auto pq = p_quotient(family_fp({Family::bifurcation, 2}), 3, 0);
  CHECK(pq.stabilized);
  CHECK(pq.pc.size() == 8);
  MESSAGE(pq.p_class);
}

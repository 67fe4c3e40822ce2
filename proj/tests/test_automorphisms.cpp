#include <doctest.h>

#include "sigma3/automorphisms.hpp"
#include "sigma3/quotients.hpp"

using namespace sigma3;

namespace {

PcPresentation pq(const char* text) { return p_quotient(parse_fp(text), 3).pc; }

// Order of the group generated by `gens`, by closing the set of all products.
std::size_t closure_size(const Collector& c, const std::vector<Automorphism>& gens) {
  std::vector<Automorphism> seen{identity_automorphism(c)};
  for (std::size_t k = 0; k < seen.size(); ++k)
    for (const auto& g : gens) {
      Automorphism x = compose(c, seen[k], g);
      bool found = false;
      for (const auto& s : seen)
        if (s == x) found = true;
      if (!found) seen.push_back(x);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("automorphisms of elementary abelian of rank 2") {
  Collector c(pq("gens x,y; rel x^3, y^3, [y,x];"));
  auto all = bruteforce_automorphisms(c);
  CHECK(all.size() == 48);
  CHECK(gl_order(2, 3) == 48);
  AutGroup g(c);
  for (const auto& a : general_linear_generators(c)) g.add(a);
  CHECK(g.order() == 48);
  CHECK(closure_size(c, g.generators()) == 48);
}

TEST_CASE("automorphisms of cyclic of order 9") {
  Collector c(pq("gens x; rel x^9;"));
  auto all = bruteforce_automorphisms(c);
  CHECK(all.size() == 6);
  AutGroup g(c);
  for (const auto& a : all) g.add(a);
  CHECK(g.order() == 6);
}

TEST_CASE("automorphism groups match exhaustive search") {
  for (const char* text : {"gens x,y; rel x^9, y^3, [y,x];", "gens x,y; rel x^3, y^3, [y,x,x], [y,x,y];",
                           "gens x,y; rel x^9, y^3, [y,x]^3, [y,x,x], [y,x,y];"}) {
    Collector c(pq(text));
    auto all = bruteforce_automorphisms(c);
    AutGroup g(c);
    for (const auto& a : all) {
      CHECK(is_automorphism(c, a));
      g.add(a);
    }
    CHECK(g.order() == all.size());
    CHECK(closure_size(c, g.generators()) == all.size());
    for (const auto& a : all) {
      CHECK(g.contains(a));
      CHECK(compose(c, a, inverse(c, a)) == identity_automorphism(c));
    }
  }
}

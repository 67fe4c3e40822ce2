#include <doctest.h>

#include "sigma3/consistency.hpp"
#include "sigma3/genealogy.hpp"
#include "sigma3/structure.hpp"

using namespace sigma3;

namespace {

PcPresentation elementary() { return p_quotient(parse_fp("gens x,y; rel x^3, y^3, [y,x];"), 3).pc; }

std::vector<Element> all_elements(const Collector& c) {
  std::vector<Element> out;
  std::vector<int> ex(c.size(), 0);
  for (;;) {
    out.push_back(Element{ex});
    int k = c.size() - 1;
    while (k >= 0 && ++ex[k] == c.prime()) ex[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

// Exhaustive isomorphism test between labelled groups of equal order: every
// choice of images for the weight-1 generators of a, extended through a's
// definitions computed in b, checked against all relations of a.
bool isomorphic(const PcPresentation& a, const PcPresentation& b) {
  if (a.size() != b.size() || a.generator_rank() != b.generator_rank()) return false;
  Collector cb(b);
  const int d = a.generator_rank(), n = a.size(), p = a.prime();
  auto all = all_elements(cb);
  std::vector<std::size_t> pick(d, 0);
  for (;;) {
    gfp::Mat top(d, gfp::Vec(d));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) top[i][k] = all[pick[i]][k];
    if (gfp::rank(top, p) == d) {
      std::vector<Element> img(n);
      for (int i = 0; i < d; ++i) img[i] = all[pick[i]];
      auto word = [&](const PcWord& w) {
        Element e = cb.identity();
        for (auto [g, x] : w)
          for (int r = 0; r < x; ++r) cb.mul_into(e, img[g]);
        return e;
      };
      for (int i = d; i < n; ++i) {
        const Definition& def = a.definition(i);
        PcWord u = def.kind == Definition::Kind::power ? a.power(def.j) : a.comm(def.j, def.i);
        Element lhs = def.kind == Definition::Kind::power ? cb.pow(img[def.j], p) : cb.comm(img[def.j], img[def.i]);
        u.pop_back();
        img[i] = cb.mul(cb.inv(word(u)), lhs);
      }
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) {
        if (cb.pow(img[j], p) != word(a.power(j))) ok = false;
        for (int i = 0; i < j && ok; ++i)
          if (cb.comm(img[j], img[i]) != word(a.comm(j, i))) ok = false;
      }
      if (ok) return true;
    }
    int k = d - 1;
    while (k >= 0 && ++pick[k] == all.size()) pick[k--] = 0;
    if (k < 0) return false;
  }
}

// Every allowable subgroup, by testing all subspaces of the right dimension.
std::vector<gfp::Mat> all_allowable(const CoverData& cd, int s) {
  const int m = cd.multiplicator_rank;
  std::vector<gfp::Mat> out;
  gfp::for_each_subspace(m, m - s, 3, [&](const gfp::Mat& u) {
    if (gfp::rank(gfp::sum(u, cd.nucleus, 3), 3) == m) out.push_back(u);
    return true;
  });
  return out;
}

void check_children(const PcPresentation& pc, const AutGroup& aut, int s) {
  CoverData cd = p_cover(pc);
  DescendantReport r = immediate_descendants(pc, aut, s);
  auto all = all_allowable(cd, s);
  CHECK(r.allowable_count == static_cast<std::int64_t>(all.size()));
  CHECK(allowable_subgroup_count(cd.multiplicator_rank, cd.nuclear_rank, s, 3) == static_cast<std::int64_t>(all.size()));
  for (std::size_t a = 0; a < r.children.size(); ++a)
    for (std::size_t b = a + 1; b < r.children.size(); ++b) CHECK_FALSE(isomorphic(r.children[a].pc, r.children[b].pc));
  for (const auto& u : all) {
    PcPresentation q = cover_quotient(cd, u).pc;
    int matches = 0;
    for (const auto& ch : r.children) matches += isomorphic(q, ch.pc);
    CHECK(matches == 1);
  }
  for (const auto& ch : r.children) {
    Collector c(ch.pc);
    REQUIRE(ch.aut);
    for (const auto& g : ch.aut->generators()) CHECK(is_automorphism(c, g));
    if (ch.pc.size() <= 4) CHECK(ch.aut->order() == bruteforce_automorphisms(c).size());
  }
}

}  // namespace

TEST_CASE("automorphism groups by lifting agree with exhaustive search") {
  for (const char* text : {"gens x,y; rel x^9, y^3, [y,x];", "gens x,y; rel x^3, y^3, [y,x,x], [y,x,y];",
                           "gens x,y; rel x^9, y^3, [y,x]^3, [y,x,x], [y,x,y];", "gens x; rel x^27;",
                           "gens x,y; rel x^9, y^9, [y,x];"}) {
    PcPresentation pc = p_quotient(parse_fp(text), 3).pc;
    AutGroup a = automorphism_group(pc);
    CHECK(a.order() == bruteforce_automorphisms(Collector(pc)).size());
  }
}

TEST_CASE("descendants of the elementary group of order 9") {
  PcPresentation el = elementary();
  AutGroup aut = automorphism_group(el);
  CHECK(aut.order() == 48);
  DescendantReport r1 = immediate_descendants(el, aut, 1);
  CHECK(r1.nuclear_rank == 3);
  CHECK(r1.allowable_count == 13);
  MESSAGE("order 27: N = " << r1.total() << ", C = " << r1.capable());
  check_children(el, aut, 1);
  check_children(el, aut, 2);
  for (const auto& ch : r1.children)
    if (ch.nuclear_rank >= 1) check_children(ch.pc, *ch.aut, 1);
}

TEST_CASE("tree paths") {
  TreePath t = parse_tree_path("\xE2\x9F\xA8" "2187,3\xE2\x9F\xA9-#3;2-#4;37-#3;32");
  CHECK(t.order == 2187);
  CHECK(t.index == 3);
  CHECK(t.steps == std::vector<std::pair<int, int>>{{3, 2}, {4, 37}, {3, 32}});
  CHECK(parse_tree_path("<729,10>").steps.empty());
  CHECK(parse_tree_path("<2187,3>-#3;2[-#1;1]^3-#1;2").steps ==
        std::vector<std::pair<int, int>>{{3, 2}, {1, 1}, {1, 1}, {1, 1}, {1, 2}});
  CHECK(format_tree_path(t) == "\xE2\x9F\xA8" "2187,3\xE2\x9F\xA9-#3;2-#4;37-#3;32");
  CHECK(parse_tree_path(format_tree_path(t)) == t);
  CHECK_THROWS_AS(parse_tree_path("<2187,3>-#3"), ParseError);
  CHECK_THROWS_AS(parse_tree_path("2187,3"), ParseError);
}

TEST_CASE("root registry") {
  const auto& reg = root_registry();
  REQUIRE(reg.size() >= 5);
  for (const auto& e : reg) CHECK(check_consistency(e.pc).empty());
  Collector el(reg[0].pc);
  CHECK(abelianization_type(el, whole_group(el)).to_string() == "11");
  ResolvedPath rp = resolve_tree_path(parse_tree_path("<2187,3>-#3;2"));
  CHECK(rp.pc.size() == 10);
  CHECK(rp.own_steps == 0);
}

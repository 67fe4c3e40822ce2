#include <doctest.h>

#include <set>

#include "sigma3/artin.hpp"
#include "sigma3/families.hpp"
#include "sigma3/genealogy.hpp"

using namespace sigma3;

namespace {

PcPresentation from_fp(const char* text) { return p_quotient(parse_fp(text), 3).pc; }

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

std::set<Element> set_closure(const Collector& c, std::vector<Element> gens) {
  std::set<Element> s{c.identity()};
  std::vector<Element> frontier{c.identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        Element b = c.mul(a, g);
        if (s.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return s;
}

// Groups of order 27 and 81 with two generators: the children of the
// elementary group and of C9 x C3.
std::vector<PcPresentation> small_two_generator_groups() {
  std::vector<PcPresentation> out;
  for (const char* fp : {"gens x,y; rel x^3, y^3, [y,x];", "gens x,y; rel x^9, y^3, [y,x];"}) {
    PcPresentation g = from_fp(fp);
    out.push_back(g);
    AutGroup a = automorphism_group(g);
    CoverData cd = p_cover(g);
    for (int s = 1; s <= cd.nuclear_rank && g.size() + s <= 4; ++s)
      for (auto& ch : immediate_descendants(g, a, s).children) out.push_back(ch.pc);
  }
  return out;
}

}  // namespace

TEST_CASE("kernel type relabelings") {
  KernelType k = KernelType::parse("(414;4)");
  CHECK(k.to_string() == "(414;4)");
  CHECK(canonical(k).to_string() == "(144;4)");
  CHECK(relabelings(k).size() == 36);
  CHECK(KernelType::parse("(0⊥1;2)").labels[1] == KernelType::kBottom);
  CHECK(KernelType::parse("(0⊥1;2)").to_string() == "(0⊥1;2)");
  for (const auto& q : relabelings(k)) CHECK(canonical(q) == canonical(k));
  CHECK(kernel_type_name(KernelType::parse("(414;4)")) == "B.18");
  CHECK(kernel_type_name(KernelType::parse("(000;0)")) == "a.1");
  CHECK(kernel_type_name(KernelType::parse("(012;3)")).empty());
}

TEST_CASE("kernel labels") {
  // basis (y, x) of (9,3): E = <x^3, y>
  CHECK(kernel_label({{0, 0}, {1, 0}, {2, 0}, {0, 3}, {1, 3}, {2, 3}, {0, 6}, {1, 6}, {2, 6}}, 2, 3) == 0);
  CHECK(kernel_label({{0, 0}, {1, 0}, {2, 0}}, 2, 3) == 1);
  CHECK(kernel_label({{0, 0}, {1, 3}, {2, 6}}, 2, 3) == 2);
  CHECK(kernel_label({{0, 0}, {1, 6}, {2, 3}}, 2, 3) == 3);
  CHECK(kernel_label({{0, 0}, {0, 3}, {0, 6}}, 2, 3) == 4);
  CHECK(kernel_label({{0, 0}}, 2, 3) == KernelType::kBottom);
}

TEST_CASE("abelian groups transfer by the p-th power") {
  // For abelian G the transfer to an index-p subgroup is g -> g^p, whose
  // kernel in (p^e, p) is always E.
  for (const char* fp : {"gens x,y; rel x^9, y^3, [y,x];", "gens x,y; rel x^27, y^3, [y,x];"}) {
    Collector c(from_fp(fp));
    CHECK(transfer_kernel_type(c).to_string() == "(000;0)");
    CHECK(sigma_test(c.presentation()).sigma);
  }
}

TEST_CASE("transfer kernel does not depend on the transversal") {
  Collector c(instantiate_family({Family::bifurcation, 3}));
  MaximalLayers ml = maximal_layers(c, false);
  std::mt19937 rng(3);
  for (const auto& h : ml.h) {
    auto k0 = transfer_kernel(ml.abelianization, artin_transfer(c, ml.abelianization, h));
    for (int t = 0; t < 5; ++t) {
      auto tr = right_transversal(c, h, &rng);
      auto k1 = transfer_kernel(ml.abelianization, artin_transfer(c, ml.abelianization, h, tr));
      CHECK(k0 == k1);
    }
  }
}

TEST_CASE("maximal subgroup abelianizations against enumeration") {
  int checked = 0;
  for (const auto& pc : small_two_generator_groups()) {
    Collector c(pc);
    if (abelianization_type(c, whole_group(c)).to_string() != "21") continue;
    MaximalLayers ml = maximal_layers(c, false);
    auto all = all_elements(c);
    for (int i = 0; i < 4; ++i) {
      std::vector<Element> h;
      for (const auto& g : all)
        if (contains(c, ml.h[i], g)) h.push_back(g);
      std::vector<Element> comms;
      for (const auto& a : h)
        for (const auto& b : h) comms.push_back(c.comm(a, b));
      auto hd = set_closure(c, comms);
      int log_index = 0;
      for (std::size_t q = h.size() / hd.size(); q > 1; q /= 3) ++log_index;
      // p^rank = number of cosets of H' whose p-th power lies in H'
      std::size_t omega = 0;
      for (const auto& g : h) omega += hd.count(c.pow(g, 3));
      int rank = 0;
      for (std::size_t q = omega / hd.size(); q > 1; q /= 3) ++rank;
      CHECK(ml.h_ab[i].log_order() == log_index);
      CHECK(ml.h_ab[i].rank() == rank);
      ++checked;
    }
  }
  CHECK(checked >= 8);
}

TEST_CASE("sigma test against brute-force automorphisms") {
  int with = 0, without = 0;
  for (const auto& pc : small_two_generator_groups()) {
    Collector c(pc);
    Subgroup d = derived_subgroup(c, whole_group(c));
    auto gens = weight_one_generators(c);
    bool expected = false;
    for (const auto& a : bruteforce_automorphisms(c)) {
      bool inverts = true;
      for (const auto& g : gens) inverts = inverts && contains(c, d, c.mul(apply(c, a, g), g));
      if (inverts) {
        expected = true;
        break;
      }
    }
    SigmaResult r = sigma_test(pc);
    CHECK(r.sigma == expected);
    if (r.sigma) {
      REQUIRE(r.witness);
      CHECK(is_automorphism(c, *r.witness));
      for (const auto& g : gens) CHECK(contains(c, d, c.mul(apply(c, *r.witness, g), g)));
    }
    (expected ? with : without)++;
  }
  CHECK(with > 0);
  MESSAGE("groups with sigma: " << with << ", without: " << without);
}

#include "sigma3/families.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sigma3/consistency.hpp"

namespace sigma3 {

Family parse_family(std::string_view name) {
  if (name == "bifurcation") return Family::bifurcation;
  if (name == "metabelian-chain") return Family::metabelian_chain;
  throw std::invalid_argument("unknown family " + std::string(name));
}

std::string family_name(Family f) {
  return f == Family::bifurcation ? "bifurcation" : "metabelian-chain";
}

int family_min_e(Family f) { return f == Family::bifurcation ? 2 : 5; }

namespace {

struct GenSpec {
  std::string name;
  int weight;
  int kind;  // ordering within a weight: x, y, s, t
};

std::vector<GenSpec> generator_list(const FamilySpec& spec) {
  std::vector<GenSpec> gens;
  for (int k = 1; k <= spec.e; ++k) gens.push_back({"x" + std::to_string(k), k, 0});
  gens.push_back({"y", 1, 1});
  gens.push_back({"s2", 2, 2});
  gens.push_back({"s3", 3, 2});
  gens.push_back({"t3", 3, 3});
  gens.push_back({"s4", 4, 2});
  gens.push_back({"t4", 4, 3});
  if (spec.family == Family::metabelian_chain) gens.push_back({"s5", 5, 2});
  std::stable_sort(gens.begin(), gens.end(), [](const GenSpec& a, const GenSpec& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.kind < b.kind;
  });
  return gens;
}

}  // namespace

PcPresentation expand_family(const FamilySpec& spec) {
  if (spec.e < family_min_e(spec.family))
    throw std::invalid_argument(family_name(spec.family) + " requires e >= " +
                                std::to_string(family_min_e(spec.family)));
  PcPresentation pc(3);
  std::map<std::string, int> idx;
  for (const auto& g : generator_list(spec)) idx[g.name] = pc.add_generator(g.name, g.weight);
  auto at = [&](const std::string& n) { return idx.at(n); };
  auto word = [&](std::initializer_list<std::pair<const char*, int>> fs) {
    PcWord w;
    for (auto [n, e] : fs) w.emplace_back(at(n), e);
    std::sort(w.begin(), w.end());
    return w;
  };
  auto define_comm = [&](const char* g, const char* a, const char* b) {
    pc.set_definition(at(g), Definition::commutator(at(a), at(b)));
    pc.set_comm(at(a), at(b), word({{g, 1}}));
  };

  for (int k = 1; k < spec.e; ++k) {
    std::string cur = "x" + std::to_string(k), next = "x" + std::to_string(k + 1);
    pc.set_definition(at(next), Definition::power(at(cur)));
    pc.set_power(at(cur), {{at(next), 1}});
  }
  define_comm("s2", "y", "x1");
  define_comm("s3", "s2", "x1");
  define_comm("t3", "s2", "y");
  define_comm("s4", "s3", "x1");
  define_comm("t4", "t3", "y");

  // y^3 = s3 s4^2, s2^3 = s4 t4^2
  pc.set_power(at("y"), word({{"s3", 1}, {"s4", 2}}));
  pc.set_power(at("s2"), word({{"s4", 1}, {"t4", 2}}));
  if (spec.family == Family::bifurcation) {
    // [x^3, y] = s4 t4
    pc.set_comm(at("x2"), at("y"), word({{"s4", 1}, {"t4", 1}}));
  } else {
    define_comm("s5", "s4", "x1");
    // s3^3 = s5, t3^3 = s5^2, [x^3,y] = s4 t4 s5^2, [x^3,s2] = s5, t5 = [t4,y] = s5
    pc.set_power(at("s3"), word({{"s5", 1}}));
    pc.set_power(at("t3"), word({{"s5", 2}}));
    pc.set_comm(at("x2"), at("y"), word({{"s4", 1}, {"t4", 1}, {"s5", 2}}));
    // stored as [s2, x2] = [x2, s2]^-1 = s5^-1
    pc.set_comm(at("s2"), at("x2"), word({{"s5", 2}}));
    pc.set_comm(at("t4"), at("y"), word({{"s5", 1}}));
  }
  pc.validate();
  return pc;
}

PcPresentation instantiate_family(const FamilySpec& spec) {
  PcPresentation pc = expand_family(spec);
  auto bad = check_consistency(pc);
  if (!bad.empty()) {
    std::string msg = family_name(spec.family) + "(e=" + std::to_string(spec.e) +
                      ") expansion is inconsistent; first violated overlap " + bad[0].kind + " on";
    for (int g : bad[0].gens) msg += " " + pc.name(g);
    throw std::runtime_error(msg);
  }
  return pc;
}

FpPresentation family_fp(const FamilySpec& spec) {
  PcPresentation pc = expand_family(spec);
  FpPresentation fp;
  fp.generators = {"x", "y"};
  std::vector<Word> image(pc.size());
  for (int i = 0; i < pc.size(); ++i) {
    const std::string& n = pc.name(i);
    if (n[0] == 'x') {
      std::int64_t pw = 1;
      for (int k = 1; k < std::stoi(n.substr(1)); ++k) pw *= 3;
      image[i] = Word::generator("x", pw);
    } else if (n == "y") {
      image[i] = Word::generator("y");
    }
  }
  // commutator-defined generators, in index order so operands exist
  for (int i = 0; i < pc.size(); ++i) {
    const Definition& d = pc.definition(i);
    if (d.kind == Definition::Kind::commutator) image[i] = Word::comm(image[d.j], image[d.i]);
  }
  auto eval = [&](const PcWord& w) {
    Word r;
    for (auto [g, e] : w) r *= image[g].pow(e);
    return r;
  };
  for (int i = 0; i < pc.size(); ++i) fp.relators.push_back(image[i].pow(3) * eval(pc.power(i)).inverse());
  for (int j = 0; j < pc.size(); ++j)
    for (int i = 0; i < j; ++i)
      fp.relators.push_back(Word::comm(image[j], image[i]) * eval(pc.comm(j, i)).inverse());
  return fp;
}

}  // namespace sigma3

#include "sigma3/genealogy.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "sigma3/families.hpp"

namespace sigma3 {

namespace {

Element pad(const Element& e, int n) {
  Element r = e;
  r.exps.resize(n, 0);
  return r;
}

std::vector<Element> padded_top_images(const Automorphism& a, int d, int n) {
  std::vector<Element> imgs;
  for (int i = 0; i < d; ++i) imgs.push_back(pad(a.images[i], n));
  return imgs;
}

// w -> w (A^-1)^T, given A^-1; result in canonical form.
gfp::Mat act_dual(const gfp::Mat& w, const gfp::Mat& a_inv, int p) {
  const int m = static_cast<int>(a_inv.size());
  gfp::Mat out(w.size(), gfp::Vec(m, 0));
  for (std::size_t r = 0; r < w.size(); ++r)
    for (int j = 0; j < m; ++j) {
      int s = 0;
      for (int k = 0; k < m; ++k) s += w[r][k] * a_inv[j][k];
      out[r][j] = s % p;
    }
  gfp::rref(out, p);
  return out;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Dual action matrices (inverse actions) for the generators of a group.
std::vector<gfp::Mat> dual_actions(const AutGroup& group, const CoverData& cd, const Collector& cover) {
  std::vector<gfp::Mat> out;
  for (const auto& g : group.inverse_generators()) out.push_back(multiplicator_action(cd, cover, g));
  return out;
}

}  // namespace

gfp::Mat multiplicator_action(const CoverData& cd, const Collector& cover, const Automorphism& a) {
  Automorphism lift = extend_by_definitions(cover, padded_top_images(a, cd.generator_rank, cover.size()));
  gfp::Mat m;
  for (int k = 0; k < cd.multiplicator_rank; ++k) m.push_back(multiplicator_coords(cd, lift.images[cd.n + k]));
  return m;
}

std::vector<Automorphism> central_automorphisms(const Collector& h) {
  const PcPresentation& pc = h.presentation();
  const int d = pc.generator_rank();
  auto [lo, hi] = pc.layer(pc.p_class());
  std::vector<Automorphism> out;
  if (pc.p_class() < 2) return out;
  for (int i = 0; i < d; ++i)
    for (int k = lo; k < hi; ++k) {
      std::vector<Element> imgs;
      for (int j = 0; j < d; ++j) imgs.push_back(h.generator(j));
      h.mul_gen(imgs[i], k);
      out.push_back(extend_by_definitions(h, imgs));
    }
  return out;
}

AutGroup lift_automorphisms(const AutGroup& stabilizer, const Collector& h) {
  const int d = h.presentation().generator_rank();
  AutGroup out(h);
  for (const auto& a : central_automorphisms(h)) out.add(a);
  for (const auto& g : stabilizer.generators()) {
    Automorphism a = extend_by_definitions(h, padded_top_images(g, d, h.size()));
    if (!is_automorphism(h, a)) throw std::logic_error("stabilizer element does not lift");
    out.add(a);
  }
  const PcPresentation& pc = h.presentation();
  auto [lo, hi] = pc.layer(pc.p_class());
  mpz_class expect = stabilizer.order();
  if (pc.p_class() >= 2) {
    mpz_class k;
    mpz_ui_pow_ui(k.get_mpz_t(), pc.prime(), static_cast<unsigned long>(d * (hi - lo)));
    expect *= k;
  }
  if (out.order() != expect) throw std::logic_error("lifted automorphism group has the wrong order");
  return out;
}

StabilizerResult subspace_stabilizer(const AutGroup& group, const CoverData& cd, const gfp::Mat& w0) {
  const int p = cd.group.prime();
  const Collector& coll = group.collector();
  Collector cover(cd.cover);
  std::vector<gfp::Mat> dual = dual_actions(group, cd, cover);
  const auto& gens = group.generators();
  const auto& gens_inv = group.inverse_generators();

  gfp::Mat start = w0;
  gfp::rref(start, p);
  std::vector<gfp::Mat> orbit{start};
  std::vector<int> parent{-1}, via{-1};
  std::unordered_map<std::string, int> index{{gfp::key(start), 0}};
  for (std::size_t o = 0; o < orbit.size(); ++o)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      gfp::Mat x = act_dual(orbit[o], dual[g], p);
      std::string k = gfp::key(x);
      if (index.count(k)) continue;
      index.emplace(std::move(k), static_cast<int>(orbit.size()));
      orbit.push_back(std::move(x));
      parent.push_back(static_cast<int>(o));
      via.push_back(static_cast<int>(g));
    }

  // transversal elements, built on demand
  std::unordered_map<int, std::pair<Automorphism, Automorphism>> memo;
  std::function<const std::pair<Automorphism, Automorphism>&(int)> trans = [&](int o) -> const std::pair<Automorphism, Automorphism>& {
    auto it = memo.find(o);
    if (it != memo.end()) return it->second;
    std::pair<Automorphism, Automorphism> t;
    if (parent[o] < 0) {
      t.first = t.second = identity_automorphism(coll);
    } else {
      const auto& up = trans(parent[o]);
      t.first = compose(coll, up.first, gens[via[o]]);
      t.second = compose(coll, gens_inv[via[o]], up.second);
    }
    return memo.emplace(o, std::move(t)).first->second;
  };

  StabilizerResult res{AutGroup(coll), static_cast<std::int64_t>(orbit.size())};
  mpz_class target = group.order();
  if (target % res.orbit_size != 0) throw std::logic_error("orbit length does not divide the group order");
  target /= res.orbit_size;

  auto schreier = [&](int o, int g) {
    gfp::Mat x = act_dual(orbit[o], dual[g], p);
    int img = index.at(gfp::key(x));
    Automorphism s = compose(coll, compose(coll, trans(o).first, gens[g]), trans(img).second);
    if (!res.stabilizer.contains(s)) res.stabilizer.add(s);
  };
  if (!gens.empty()) {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick_o(0, static_cast<int>(orbit.size()) - 1);
    std::uniform_int_distribution<int> pick_g(0, static_cast<int>(gens.size()) - 1);
    for (int tries = 0; tries < 64 && res.stabilizer.order() != target; ++tries) schreier(pick_o(rng), pick_g(rng));
    for (std::size_t o = 0; o < orbit.size() && res.stabilizer.order() != target; ++o)
      for (std::size_t g = 0; g < gens.size() && res.stabilizer.order() != target; ++g)
        schreier(static_cast<int>(o), static_cast<int>(g));
  }
  if (res.stabilizer.order() != target) throw std::logic_error("stabilizer order does not match the orbit length");
  return res;
}

AutGroup automorphism_group(const PcPresentation& pc) {
  if (!pc.is_labelled()) throw std::invalid_argument("automorphism_group needs a labelled presentation");
  const int c = pc.p_class();
  Collector g1(truncate(pc, 1));
  AutGroup aut(g1);
  for (const auto& a : general_linear_generators(g1)) aut.add(a);
  for (int k = 1; k < c; ++k) {
    PcPresentation gk = truncate(pc, k);
    Collector next(truncate(pc, k + 1));
    CoverData cd = p_cover(gk);
    // the epimorphism from the cover onto G/P_{k+1}, restricted to the multiplicator
    auto [lo, hi] = next.presentation().layer(k + 1);
    gfp::Mat w(hi - lo, gfp::Vec(cd.multiplicator_rank, 0));
    for (int t = 0; t < cd.multiplicator_rank; ++t) {
      const RelationRef& r = cd.defining[t];
      Element lhs = r.is_power() ? next.pow(next.generator(r.j), pc.prime())
                                 : next.comm(next.generator(r.j), next.generator(r.i));
      Element rhs = next.from_word(r.is_power() ? gk.power(r.j) : gk.comm(r.j, r.i));
      Element v = next.mul(next.inv(rhs), lhs);
      for (int q = 0; q < lo; ++q)
        if (v[q] != 0) throw std::logic_error("tail image outside the last layer");
      for (int q = lo; q < hi; ++q) w[q - lo][t] = v[q];
    }
    if (gfp::rank(w, pc.prime()) != hi - lo) throw std::logic_error("layer is not covered by the multiplicator");
    StabilizerResult st = subspace_stabilizer(aut, cd, w);
    aut = lift_automorphisms(st.stabilizer, next);
  }
  return aut;
}

int DescendantReport::capable() const {
  int c = 0;
  for (const auto& ch : children)
    if (ch.nuclear_rank >= 1) ++c;
  return c;
}

std::int64_t allowable_subgroup_count(int m, int nu, int s, int p) {
  if (s < 1 || s > nu) return 0;
  return gfp::gaussian_binomial(nu, s, p) * ipow(p, s * (m - nu));
}

DescendantReport immediate_descendants(const PcPresentation& pc, const AutGroup& aut, int s,
                                       const DescendantOptions& opt) {
  const int p = pc.prime();
  CoverData cd = p_cover(pc);
  const int m = cd.multiplicator_rank, nu = cd.nuclear_rank, free = m - nu;
  DescendantReport rep;
  rep.step = s;
  rep.nuclear_rank = nu;
  rep.multiplicator_rank = m;
  if (s < 1 || s > nu)
    throw std::invalid_argument("step size " + std::to_string(s) + " outside 1.." + std::to_string(nu));
  const std::int64_t count = allowable_subgroup_count(m, nu, s, p);
  if (count > opt.max_allowable)
    throw ResourceCapExceeded(std::to_string(count) + " allowable subgroups exceed the cap of " +
                              std::to_string(opt.max_allowable));

  Collector cover(cd.cover);
  std::vector<gfp::Mat> dual = dual_actions(aut, cd, cover);

  struct Orbit {
    std::string rep_key;
    gfp::Mat u, w;
    std::int64_t size;
  };
  std::vector<Orbit> orbits;
  std::unordered_set<std::string> seen;
  std::int64_t visited = 0;
  auto explore = [&](gfp::Mat w) {
    gfp::rref(w, p);
    std::string k = gfp::key(w);
    if (seen.count(k)) return;
    seen.insert(k);
    std::vector<gfp::Mat> pts{w};
    for (std::size_t o = 0; o < pts.size(); ++o)
      for (const auto& a : dual) {
        gfp::Mat x = act_dual(pts[o], a, p);
        if (seen.insert(gfp::key(x)).second) pts.push_back(std::move(x));
      }
    Orbit best{"", {}, {}, static_cast<std::int64_t>(pts.size())};
    for (const auto& x : pts) {
      gfp::Mat u = gfp::nullspace(x, m, p);
      std::string uk = gfp::key(u);
      if (best.rep_key.empty() || uk < best.rep_key) {
        best.rep_key = uk;
        best.u = u;
        best.w = x;
      }
    }
    visited += best.size;
    orbits.push_back(std::move(best));
  };
  // annihilators W = [A | B]: B an s-dimensional subspace of the nucleus
  // coordinates, A arbitrary
  gfp::for_each_subspace(nu, s, p, [&](const gfp::Mat& b) {
    std::vector<int> a(s * free, 0);
    for (;;) {
      gfp::Mat w(s, gfp::Vec(m, 0));
      for (int r = 0; r < s; ++r) {
        for (int c = 0; c < free; ++c) w[r][c] = a[r * free + c];
        for (int c = 0; c < nu; ++c) w[r][free + c] = b[r][c];
      }
      explore(std::move(w));
      int k = s * free - 1;
      while (k >= 0 && ++a[k] == p) a[k--] = 0;
      if (k < 0) break;
    }
    return true;
  });
  if (visited != count) throw std::logic_error("orbit lengths do not add up to the allowable subgroup count");
  rep.allowable_count = visited;

  std::sort(orbits.begin(), orbits.end(), [](const Orbit& a, const Orbit& b) { return a.rep_key < b.rep_key; });
  for (const auto& o : orbits) {
    Descendant ch;
    CoverQuotient q = cover_quotient(cd, o.u);
    ch.pc = std::move(q.pc);
    ch.orbit_size = o.size;
    ch.allowable = o.u;
    if (opt.with_nuclear_rank) ch.nuclear_rank = p_cover(ch.pc).nuclear_rank;
    if (opt.with_automorphisms) {
      StabilizerResult st = subspace_stabilizer(aut, cd, o.w);
      if (st.orbit_size != o.size) throw std::logic_error("orbit length mismatch");
      ch.aut = lift_automorphisms(st.stabilizer, Collector(ch.pc));
    }
    rep.children.push_back(std::move(ch));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// tree paths

namespace {

struct PathLexer {
  std::string_view s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, static_cast<int>(i) + 1);
  }
  bool eat(std::string_view t) {
    if (s.substr(i, t.size()) == t) {
      i += t.size();
      return true;
    }
    return false;
  }
  void skip_space() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool dash() { return eat("-") || eat("\xE2\x88\x92"); }
  std::int64_t number() {
    skip_space();
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (start == i) fail("expected a number");
    if (i - start > 15) fail("number too large");
    return std::stoll(std::string(s.substr(start, i - start)));
  }
  void steps(std::vector<std::pair<int, int>>& out, bool nested) {
    for (;;) {
      skip_space();
      if (i >= s.size()) return;
      if (s[i] == ']') {
        if (!nested) fail("unbalanced ']'");
        return;
      }
      if (eat("[")) {
        std::vector<std::pair<int, int>> inner;
        steps(inner, true);
        if (!eat("]")) fail("expected ']'");
        if (!eat("^")) fail("expected '^' after a repeated block");
        bool braced = eat("{");
        std::int64_t r = number();
        if (braced && !eat("}")) fail("expected '}'");
        if (r > 10000) fail("repetition count too large");
        for (std::int64_t k = 0; k < r; ++k) out.insert(out.end(), inner.begin(), inner.end());
        continue;
      }
      if (!dash()) fail("expected '-#'");
      if (!eat("#")) fail("expected '#'");
      std::int64_t st = number();
      skip_space();
      if (!eat(";")) fail("expected ';'");
      std::int64_t k = number();
      if (st < 1 || k < 1) fail("step sizes and child indices start at 1");
      out.emplace_back(static_cast<int>(st), static_cast<int>(k));
    }
  }
};

}  // namespace

TreePath parse_tree_path(std::string_view text) {
  PathLexer lx{text};
  TreePath path;
  lx.skip_space();
  if (!lx.eat("<") && !lx.eat("\xE2\x9F\xA8")) lx.fail("expected '<' or U+27E8");
  path.order = lx.number();
  lx.skip_space();
  if (!lx.eat(",")) lx.fail("expected ','");
  path.index = static_cast<int>(lx.number());
  lx.skip_space();
  if (!lx.eat(">") && !lx.eat("\xE2\x9F\xA9")) lx.fail("expected '>' or U+27E9");
  lx.steps(path.steps, false);
  return path;
}

std::string format_tree_path(const TreePath& path) {
  std::string out = "\xE2\x9F\xA8" + std::to_string(path.order) + "," + std::to_string(path.index) + "\xE2\x9F\xA9";
  for (auto [s, k] : path.steps) out += "-#" + std::to_string(s) + ";" + std::to_string(k);
  return out;
}

const std::vector<RegistryEntry>& root_registry() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<RegistryEntry> out;
    PcPresentation el(3);
    el.add_generator("x", 1);
    el.add_generator("y", 1);
    out.push_back({"<9,2>", "elementary abelian (3,3)", el});
    PcPresentation b4 = instantiate_family({Family::bifurcation, 4});
    out.push_back({"<81,3>", "bifurcation(4) modulo P_2", truncate(b4, 2)});
    out.push_back({"<2187,3>", "bifurcation(4) modulo P_3", truncate(b4, 3)});
    out.push_back({"<2187,3>-#3;2", "bifurcation(4)", b4});
    PcPresentation b2 = instantiate_family({Family::bifurcation, 2});
    out.push_back({"<729,10>", "p-parent of bifurcation(2)", truncate(b2, b2.p_class() - 1)});
    out.push_back({"<6561,165>", "bifurcation(2)", b2});
    out.push_back({"<729,10>-#2;2", "bifurcation(2)", b2});
    for (const auto& e : out) {
      TreePath tp = parse_tree_path(e.path);
      std::int64_t order = 1;
      for (int k = 0; k < e.pc.size(); ++k) order *= 3;
      for (auto [s, k] : tp.steps) order /= ipow(3, s);
      if (order != tp.order) throw std::logic_error("registry entry " + e.path + " has the wrong order");
    }
    return out;
  }();
  return entries;
}

ResolvedPath resolve_tree_path(const TreePath& path, const DescendantOptions& opt) {
  const RegistryEntry* best = nullptr;
  TreePath best_path;
  for (const auto& e : root_registry()) {
    TreePath tp = parse_tree_path(e.path);
    if (tp.order != path.order || tp.index != path.index || tp.steps.size() > path.steps.size()) continue;
    if (!std::equal(tp.steps.begin(), tp.steps.end(), path.steps.begin())) continue;
    if (!best || tp.steps.size() > best_path.steps.size()) {
      best = &e;
      best_path = tp;
    }
  }
  if (!best) throw std::invalid_argument("unknown root " + format_tree_path(TreePath{path.order, path.index, {}}));
  ResolvedPath res{best->pc, best_path, 0};
  if (best_path.steps.size() == path.steps.size()) return res;
  AutGroup aut = automorphism_group(res.pc);
  for (std::size_t k = best_path.steps.size(); k < path.steps.size(); ++k) {
    auto [s, idx] = path.steps[k];
    DescendantOptions o = opt;
    o.with_automorphisms = k + 1 < path.steps.size();
    o.with_nuclear_rank = false;
    DescendantReport r = immediate_descendants(res.pc, aut, s, o);
    if (idx > r.total())
      throw std::invalid_argument("vertex has only " + std::to_string(r.total()) + " descendants of step size " +
                                  std::to_string(s));
    Descendant& ch = r.children[idx - 1];
    res.pc = std::move(ch.pc);
    if (ch.aut) aut = std::move(*ch.aut);
    ++res.own_steps;
  }
  return res;
}

}  // namespace sigma3

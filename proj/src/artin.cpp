#include "sigma3/artin.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sigma3/genealogy.hpp"

namespace sigma3 {

namespace {

int find_coset(const Collector& coll, const Subgroup& h, const std::vector<Element>& reps, const Element& g) {
  for (std::size_t j = 0; j < reps.size(); ++j)
    if (contains(coll, h, coll.mul(g, coll.inv(reps[j])))) return static_cast<int>(j);
  return -1;
}

Element random_element(const Collector& coll, const Subgroup& h, std::mt19937& rng) {
  std::uniform_int_distribution<int> ex(0, coll.prime() - 1);
  Element e = coll.identity();
  for (const auto& g : h.gens) coll.mul_into(e, coll.pow(g, ex(rng)));
  return e;
}

std::int64_t ipow(int p, int k) {
  std::int64_t r = 1;
  while (k-- > 0) r *= p;
  return r;
}

}  // namespace

std::vector<Element> right_transversal(const Collector& coll, const Subgroup& h, std::mt19937* rng) {
  std::vector<Element> reps{coll.identity()};
  const std::int64_t index = ipow(coll.prime(), coll.size() - h.log_order());
  for (std::size_t k = 0; k < reps.size() && static_cast<std::int64_t>(reps.size()) < index; ++k)
    for (int g = 0; g < coll.size(); ++g) {
      Element x = coll.mul(reps[k], coll.generator(g));
      if (find_coset(coll, h, reps, x) < 0) reps.push_back(std::move(x));
    }
  if (static_cast<std::int64_t>(reps.size()) != index) throw std::logic_error("transversal is incomplete");
  if (rng)
    for (std::size_t k = 1; k < reps.size(); ++k) reps[k] = coll.mul(random_element(coll, h, *rng), reps[k]);
  return reps;
}

TransferHom artin_transfer(const Collector& coll, const AbelianQuotient& source, const Subgroup& h,
                           const std::vector<Element>& reps) {
  TransferHom t;
  t.subgroup = h;
  t.target = abelian_quotient(coll, h, derived_subgroup(coll, h));
  for (const auto& g : source.basis) {
    Element v = coll.identity();
    for (const auto& r : reps) {
      Element x = coll.mul(r, g);
      int j = find_coset(coll, h, reps, x);
      if (j < 0) throw std::logic_error("transversal does not cover the group");
      coll.mul_into(v, coll.mul(x, coll.inv(reps[j])));
    }
    t.matrix.push_back(t.target.coords(v));
  }
  return t;
}

TransferHom artin_transfer(const Collector& coll, const AbelianQuotient& source, const Subgroup& h) {
  return artin_transfer(coll, source, h, right_transversal(coll, h));
}

std::vector<std::vector<int>> transfer_kernel(const AbelianQuotient& source, const TransferHom& t) {
  const int p = source.factor_prime;
  const std::size_t k = source.logs.size();
  std::vector<std::int64_t> ord(k);
  for (std::size_t i = 0; i < k; ++i) ord[i] = ipow(p, source.logs[i]);
  std::vector<mpz_class> mod;
  for (int l : t.target.logs) mod.push_back(mpz_class(static_cast<unsigned long>(ipow(p, l))));
  std::vector<std::vector<int>> out;
  std::vector<int> c(k, 0);
  for (;;) {
    bool zero = true;
    for (std::size_t j = 0; j < mod.size() && zero; ++j) {
      mpz_class s = 0;
      for (std::size_t i = 0; i < k; ++i) s += c[i] * t.matrix[i][j];
      if (s % mod[j] != 0) zero = false;
    }
    if (zero) out.push_back(c);
    std::size_t i = 0;
    while (i < k && ++c[i] == ord[i]) c[i++] = 0;
    if (i == k) break;
  }
  return out;
}

std::string KernelType::to_string() const {
  auto one = [](int l) { return l == kBottom ? std::string("\xE2\x8A\xA5") : std::to_string(l); };
  return "(" + one(labels[0]) + one(labels[1]) + one(labels[2]) + ";" + one(labels[3]) + ")";
}

KernelType KernelType::parse(std::string_view s) {
  KernelType k;
  int pos = 0;
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("bad kernel type: " + std::string(s)); };
  if (s.empty() || s[i++] != '(') fail();
  while (i < s.size() && pos < 4) {
    if (pos == 3) {
      if (s[i] != ';') fail();
      ++i;
    }
    if (s.substr(i, 3) == "\xE2\x8A\xA5") {
      k.labels[pos++] = kBottom;
      i += 3;
    } else if (s[i] >= '0' && s[i] <= '4') {
      k.labels[pos++] = s[i++] - '0';
    } else {
      fail();
    }
  }
  if (pos != 4 || i + 1 != s.size() || s[i] != ')') fail();
  return k;
}

std::vector<KernelType> relabelings(const KernelType& k) {
  std::vector<KernelType> out;
  std::array<int, 3> sigma{1, 2, 3};
  do {
    KernelType r;
    for (int i = 0; i < 4; ++i) {
      int l = k.labels[i];
      r.labels[i] = (l >= 1 && l <= 3) ? sigma[l - 1] : l;
    }
    std::array<int, 3> pos{0, 1, 2};
    do {
      KernelType q = r;
      for (int i = 0; i < 3; ++i) q.labels[i] = r.labels[pos[i]];
      out.push_back(q);
    } while (std::next_permutation(pos.begin(), pos.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

KernelType canonical(const KernelType& k) {
  auto all = relabelings(k);
  return *std::min_element(all.begin(), all.end());
}

const std::vector<std::pair<std::string, KernelType>>& named_kernel_types() {
  static const std::vector<std::pair<std::string, KernelType>> table = [] {
    std::vector<std::pair<std::string, KernelType>> t;
    for (auto [name, form] : std::vector<std::pair<const char*, const char*>>{
             {"a.1", "(000;0)"},
             {"A.1", "(111;1)"},
             {"A.20", "(444;4)"},
             {"b.31", "(044;4)"},
             {"B.18", "(144;4)"},
             {"C.4", "(311;3)"},
             {"D.5", "(211;3)"},
             {"D.6", "(123;1)"},
             {"D.10", "(411;3)"},
             {"D.11", "(124;1)"}})
      t.emplace_back(name, KernelType::parse(form));
    return t;
  }();
  return table;
}

std::string kernel_type_name(const KernelType& k) {
  KernelType c = canonical(k);
  for (const auto& [name, form] : named_kernel_types())
    if (canonical(form) == c) return name;
  return "";
}

int kernel_label(const std::vector<std::vector<int>>& kernel, int e, int p) {
  // coordinates (a, b): a for y of order p, b for x of order p^e
  const int q = static_cast<int>(ipow(p, e - 1));
  auto in_e = [&](const std::vector<int>& v) { return v[1] % q == 0; };
  for (const auto& v : kernel)
    if (!in_e(v)) return KernelType::kBottom;
  if (static_cast<int>(kernel.size()) == p * p) return 0;
  if (static_cast<int>(kernel.size()) != p) return KernelType::kBottom;
  std::vector<int> gen;
  for (const auto& v : kernel)
    if (v[0] != 0 || v[1] != 0) gen = v;
  // normalize to y-exponent 1 when possible
  if (gen[0] == 0) return 4;
  int inv = 1;
  while (gen[0] * inv % p != 1) ++inv;
  int b = (gen[1] / q) * inv % p;
  return b == 0 ? 1 : (b == 1 ? 2 : 3);
}

KernelType transfer_kernel_type(const Collector& coll, const MaximalLayers& ml) {
  if (coll.prime() != 3) throw std::invalid_argument("kernel labels are defined for p = 3");
  KernelType k;
  for (int i = 0; i < 4; ++i) {
    TransferHom t = artin_transfer(coll, ml.abelianization, ml.h[i]);
    k.labels[i] = kernel_label(transfer_kernel(ml.abelianization, t), ml.e, coll.prime());
  }
  return k;
}

KernelType transfer_kernel_type(const Collector& coll) {
  return transfer_kernel_type(coll, maximal_layers(coll, false));
}

ArtinPattern artin_pattern(const Collector& coll, int depth) {
  MaximalLayers ml = maximal_layers(coll, depth >= 2);
  ArtinPattern a;
  a.kappa = transfer_kernel_type(coll, ml);
  a.kappa_canonical = canonical(a.kappa);
  a.kappa_name = kernel_type_name(a.kappa);
  a.commutator_quotient = ml.abelianization.type;
  a.alpha1 = ml.h_ab;
  for (int i = 0; i < 4; ++i) a.rho[i] = ml.h_ab[i].rank();
  if (depth >= 2)
    for (int i = 0; i < 4; ++i) {
      SecondLayer l{ml.h_ab[i], ml.second_ab[i]};
      std::sort(l.types.begin(), l.types.end(), std::greater<>());
      a.alpha2.push_back(std::move(l));
    }
  return a;
}

std::string format_alpha2(const ArtinPattern& a) {
  std::string out = "[" + a.commutator_quotient.to_string() + ";";
  for (std::size_t i = 0; i < a.alpha2.size(); ++i) {
    if (i) out += i == 3 ? ";" : ",";
    out += "(" + a.alpha2[i].h.to_string() + ";";
    for (std::size_t j = 0; j < a.alpha2[i].types.size(); ++j) {
      if (j) out += ",";
      out += a.alpha2[i].types[j].to_string();
    }
    out += ")";
  }
  return out + "]";
}

SigmaResult sigma_test(const PcPresentation& pc) { return sigma_test(pc, automorphism_group(pc)); }

SigmaResult sigma_test(const PcPresentation& pc, const AutGroup& aut) {
  Collector coll(pc);
  const Collector& ac = aut.collector();
  if (ac.size() != coll.size()) throw std::invalid_argument("automorphism group belongs to another group");
  Subgroup g = whole_group(coll);
  AbelianQuotient ab = abelian_quotient(coll, g, derived_subgroup(coll, g));
  const std::size_t k = ab.basis.size();
  std::vector<mpz_class> mod;
  for (int l : ab.logs) mod.push_back(mpz_class(static_cast<unsigned long>(ipow(pc.prime(), l))));
  // induced action on G/G' as the images of the basis
  using Action = std::vector<std::vector<mpz_class>>;
  auto action = [&](const Automorphism& a) {
    Action m;
    for (const auto& b : ab.basis) m.push_back(ab.coords(apply(coll, a, b)));
    return m;
  };
  auto compose_action = [&](const Action& x, const Action& y) {
    // first x then y: b_i -> sum_j x_ij b_j -> sum_j x_ij y_j
    Action r(k, std::vector<mpz_class>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) r[i][l] += x[i][j] * y[j][l];
      }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l) mpz_fdiv_r(r[i][l].get_mpz_t(), r[i][l].get_mpz_t(), mod[l].get_mpz_t());
    return r;
  };
  Action target(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) target[i][i] = mod[i] - 1;
  std::vector<Action> gen_act;
  for (const auto& a : aut.generators()) gen_act.push_back(action(a));
  Action id(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) id[i][i] = mod[i] == 1 ? 0 : 1;

  std::map<Action, int> index{{id, 0}};
  std::vector<Action> pts{id};
  std::vector<int> parent{-1}, via{-1};
  SigmaResult res;
  for (std::size_t o = 0; o < pts.size(); ++o) {
    if (pts[o] == target) {
      Automorphism w = identity_automorphism(coll);
      std::vector<int> path;
      for (int q = static_cast<int>(o); parent[q] >= 0; q = parent[q]) path.push_back(via[q]);
      for (auto it = path.rbegin(); it != path.rend(); ++it) w = compose(coll, w, aut.generators()[*it]);
      if (!is_automorphism(coll, w) || action(w) != target) throw std::logic_error("sigma witness failed to verify");
      res.sigma = true;
      res.witness = std::move(w);
      return res;
    }
    for (std::size_t g = 0; g < gen_act.size(); ++g) {
      Action x = compose_action(pts[o], gen_act[g]);
      if (index.count(x)) continue;
      index.emplace(x, static_cast<int>(pts.size()));
      pts.push_back(std::move(x));
      parent.push_back(static_cast<int>(o));
      via.push_back(static_cast<int>(g));
    }
  }
  return res;
}

namespace {

bool same_multiset(std::vector<AbelianType> a, std::vector<AbelianType> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

bool match_bracket(const SecondLayer& layer, const BracketScheme& s, int e) {
  if (!match_pattern(layer.h, s.h, e)) return false;
  std::vector<std::vector<TypePattern>> groups{s.triplet};
  std::vector<int> counts{3};
  if (!s.nonet.empty()) {
    groups.push_back(s.nonet);
    counts.push_back(9);
  } else {
    groups.push_back(s.octet);
    counts.push_back(8);
    groups.push_back(s.singlet);
    counts.push_back(1);
  }
  std::vector<std::size_t> pick(groups.size(), 0);
  for (;;) {
    std::vector<AbelianType> expect{s.fixed.evaluate(e)};
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (int c = 0; c < counts[g]; ++c) expect.push_back(groups[g][pick[g]].evaluate(e));
    if (same_multiset(layer.types, expect)) return true;
    std::size_t g = 0;
    while (g < groups.size() && ++pick[g] == groups[g].size()) pick[g++] = 0;
    if (g == groups.size()) return false;
  }
}

bool match_alpha2(const std::vector<SecondLayer>& layers, const std::vector<BracketScheme>& schemes, int e) {
  if (layers.size() != 4 || schemes.size() != 4) return false;
  if (!match_bracket(layers[3], schemes[3], e)) return false;
  std::array<int, 3> perm{0, 1, 2};
  do {
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) ok = match_bracket(layers[i], schemes[perm[i]], e);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<BracketScheme> b18_second_order_scheme() {
  auto P = [](const char* s) { return TypePattern::parse(s); };
  std::vector<BracketScheme> out;
  out.push_back({P("(e+1)21"), P("e2111"), {P("(e+1)211"), P("(e+1)1111")}, {P("(e+1)2")}, {}, {}});
  for (int i = 0; i < 2; ++i)
    out.push_back({P("e11"), P("e2111"), {P("(e+1)21"), P("(e+1)111")}, {P("(e+1)2"), P("e21")}, {}, {}});
  out.push_back({P("(e-1)21"), P("e2111"), {P("e31"), P("e211")}, {}, {P("e21")}, {P("(e-1)22")}});
  return out;
}

}  // namespace sigma3

#include "sigma3/automorphisms.hpp"

#include <map>
#include <stdexcept>

namespace sigma3 {

Automorphism identity_automorphism(const Collector& coll) {
  Automorphism a;
  for (int i = 0; i < coll.size(); ++i) a.images.push_back(coll.generator(i));
  return a;
}

Element apply(const Collector& coll, const Automorphism& a, const Element& g) {
  Element e = coll.identity();
  for (int k = 0; k < g.size(); ++k)
    for (int r = 0; r < g[k]; ++r) coll.mul_into(e, a.images[k]);
  return e;
}

Automorphism compose(const Collector& coll, const Automorphism& a, const Automorphism& b) {
  Automorphism c;
  c.images.reserve(a.images.size());
  for (const auto& img : a.images) c.images.push_back(apply(coll, b, img));
  return c;
}

Automorphism power(const Collector& coll, const Automorphism& a, std::int64_t k) {
  if (k < 0) return power(coll, inverse(coll, a), -k);
  Automorphism result = identity_automorphism(coll);
  Automorphism base = a;
  while (k > 0) {
    if (k & 1) result = compose(coll, result, base);
    k >>= 1;
    if (k > 0) base = compose(coll, base, base);
  }
  return result;
}

Automorphism extend_by_definitions(const Collector& coll, const std::vector<Element>& weight_one_images) {
  const PcPresentation& pc = coll.presentation();
  Automorphism a;
  a.images.resize(pc.size());
  const int d = pc.generator_rank();
  if (static_cast<int>(weight_one_images.size()) != d) throw std::invalid_argument("need one image per weight-1 generator");
  for (int i = 0; i < d; ++i) a.images[i] = weight_one_images[i];
  for (int i = d; i < pc.size(); ++i) {
    // lhs = u * g_i, so g_i = u^-1 lhs
    const Definition& def = pc.definition(i);
    Element lhs;
    PcWord u;
    if (def.kind == Definition::Kind::power) {
      lhs = coll.pow(a.images[def.j], pc.prime());
      u = pc.power(def.j);
    } else if (def.kind == Definition::Kind::commutator) {
      lhs = coll.comm(a.images[def.j], a.images[def.i]);
      u = pc.comm(def.j, def.i);
    } else {
      throw std::invalid_argument("generator " + pc.name(i) + " has no definition");
    }
    if (u.empty() || u.back() != std::pair<int, int>{i, 1})
      throw std::invalid_argument("definition of " + pc.name(i) + " does not end in it");
    u.pop_back();
    Element img = coll.identity();
    for (auto [g, e] : u) {
      if (g >= i) throw std::invalid_argument("definition of " + pc.name(i) + " uses later generators");
      for (int r = 0; r < e; ++r) coll.mul_into(img, a.images[g]);
    }
    img = coll.inv(img);
    coll.mul_into(img, lhs);
    a.images[i] = std::move(img);
  }
  return a;
}

gfp::Mat top_matrix(const Collector& coll, const Automorphism& a) {
  const int d = coll.presentation().generator_rank();
  gfp::Mat m(d, gfp::Vec(d));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) m[i][k] = a.images[i][k];
  return m;
}

bool is_automorphism(const Collector& coll, const Automorphism& a) {
  const PcPresentation& pc = coll.presentation();
  const int n = pc.size();
  if (static_cast<int>(a.images.size()) != n) return false;
  const int d = pc.generator_rank();
  if (gfp::rank(top_matrix(coll, a), pc.prime()) != d) return false;
  for (int j = 0; j < n; ++j) {
    if (coll.pow(a.images[j], pc.prime()) != apply(coll, a, coll.from_word(pc.power(j)))) return false;
    for (int i = 0; i < j; ++i)
      if (coll.comm(a.images[j], a.images[i]) != apply(coll, a, coll.from_word(pc.comm(j, i)))) return false;
  }
  return true;
}

std::int64_t matrix_order(const gfp::Mat& m, int p) {
  const gfp::Mat id = gfp::identity(static_cast<int>(m.size()));
  gfp::Mat x = m;
  std::int64_t k = 1;
  while (x != id) {
    x = gfp::mul(x, m, p);
    if (++k > 1'000'000) throw std::logic_error("matrix is not invertible");
  }
  return k;
}

Automorphism inverse(const Collector& coll, const Automorphism& a) {
  const int p = coll.prime();
  std::int64_t o = matrix_order(top_matrix(coll, a), p);
  Automorphism b = power(coll, a, o);
  const Automorphism id = identity_automorphism(coll);
  while (b != id) {
    b = power(coll, b, p);
    o *= p;
  }
  return power(coll, a, o - 1);
}

mpz_class gl_order(int d, int p) {
  mpz_class pd, pi = 1, r = 1;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
  for (int i = 0; i < d; ++i) {
    r *= pd - pi;
    pi *= p;
  }
  return r;
}

AutGroup::AutGroup(const Collector& coll) : coll_(coll), d_(coll.presentation().generator_rank()), p_(coll.prime()) {
  top_.push_back(gfp::identity(d_));
  rep_.push_back(identity_automorphism(coll_));
  rep_inv_.push_back(rep_.back());
  table_.resize(std::max(1, coll.presentation().p_class()));
}

mpz_class AutGroup::order() const {
  std::size_t k = 0;
  for (const auto& layer : table_) k += layer.size();
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p_, k);
  return r * static_cast<unsigned long>(top_.size());
}

AutGroup::Lead AutGroup::lead_of(const Automorphism& a) const {
  const PcPresentation& pc = coll_.presentation();
  std::vector<Element> delta;
  int best = -1;
  for (int i = 0; i < d_; ++i) {
    Element x = coll_.mul(coll_.inv(coll_.generator(i)), a.images[i]);
    int dep = coll_.depth(x);
    if (dep < coll_.size()) {
      int l = pc.weight(dep) - 1;
      if (l < 1) throw std::logic_error("kernel element moves G/Phi(G)");
      if (best < 0 || l < best) best = l;
    }
    delta.push_back(std::move(x));
  }
  Lead lead{best, {}};
  if (best < 0) return lead;
  auto [lo, hi] = pc.layer(best + 1);
  for (const auto& x : delta)
    for (int k = lo; k < hi; ++k) lead.v.push_back(x[k]);
  return lead;
}

Automorphism AutGroup::sift(Automorphism a, Lead& lead) const {
  for (;;) {
    lead = lead_of(a);
    if (lead.layer < 0) return a;
    for (const auto& e : table_[lead.layer]) {
      int c = lead.v[e.pivot];
      if (c == 0) continue;
      a = compose(coll_, a, power(coll_, e.a, p_ - c));
      for (std::size_t k = 0; k < lead.v.size(); ++k) lead.v[k] = (lead.v[k] + (p_ - c) * e.lead[k]) % p_;
    }
    if (!gfp::is_zero(lead.v)) return a;
  }
}

Automorphism AutGroup::kernel_inverse(const Automorphism& a) const {
  const Automorphism id = identity_automorphism(coll_);
  std::int64_t o = 1;
  Automorphism q = a;
  while (q != id) {
    q = power(coll_, q, p_);
    o *= p_;
  }
  return power(coll_, a, o - 1);
}

void AutGroup::insert_kernel(const Automorphism& a0) {
  std::vector<Automorphism> queue{a0};
  while (!queue.empty()) {
    Automorphism x = std::move(queue.back());
    queue.pop_back();
    Lead lead;
    Automorphism r = sift(std::move(x), lead);
    if (lead.layer < 0) continue;
    int pivot = 0;
    while (lead.v[pivot] == 0) ++pivot;
    int k = gfp::inv(lead.v[pivot], p_);
    if (k != 1) {
      r = power(coll_, r, k);
      for (int& v : lead.v) v = v * k % p_;
    }
    Automorphism r_inv = kernel_inverse(r);
    queue.push_back(power(coll_, r, p_));
    for (const auto& layer : table_)
      for (const auto& e : layer)
        queue.push_back(compose(coll_, compose(coll_, r_inv, e.a_inv), compose(coll_, r, e.a)));
    if (static_cast<int>(table_.size()) <= lead.layer) table_.resize(lead.layer + 1);
    table_[lead.layer].push_back(Entry{std::move(lead.v), pivot, std::move(r), std::move(r_inv)});
  }
}

void AutGroup::add_schreier(int g, int t) {
  gfp::Mat target = gfp::mul(top_[t], top_matrix(coll_, gens_[g]), p_);
  int idx = -1;
  for (std::size_t k = 0; k < top_.size(); ++k)
    if (top_[k] == target) {
      idx = static_cast<int>(k);
      break;
    }
  if (idx < 0) throw std::logic_error("top group not closed");
  Automorphism x = compose(coll_, compose(coll_, rep_[t], gens_[g]), rep_inv_[idx]);
  insert_kernel(x);
}

void AutGroup::rebuild_top() {
  top_.assign(1, gfp::identity(d_));
  rep_.assign(1, identity_automorphism(coll_));
  rep_inv_.assign(1, rep_.back());
  std::map<gfp::Mat, int> index{{top_[0], 0}};
  for (std::size_t t = 0; t < top_.size(); ++t) {
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      gfp::Mat m = gfp::mul(top_[t], top_matrix(coll_, gens_[g]), p_);
      if (index.count(m)) continue;
      index.emplace(m, static_cast<int>(top_.size()));
      top_.push_back(m);
      rep_.push_back(compose(coll_, rep_[t], gens_[g]));
      rep_inv_.push_back(compose(coll_, gens_inv_[g], rep_inv_[t]));
    }
  }
  for (std::size_t t = 0; t < top_.size(); ++t)
    for (std::size_t g = 0; g < gens_.size(); ++g) add_schreier(static_cast<int>(g), static_cast<int>(t));
}

bool AutGroup::contains(const Automorphism& a) const {
  gfp::Mat m = top_matrix(coll_, a);
  for (std::size_t k = 0; k < top_.size(); ++k) {
    if (top_[k] != m) continue;
    Lead lead;
    sift(compose(coll_, a, rep_inv_[k]), lead);
    return lead.layer < 0;
  }
  return false;
}

bool AutGroup::add(const Automorphism& a) {
  if (contains(a)) return false;
  gens_.push_back(a);
  gens_inv_.push_back(inverse(coll_, a));
  gfp::Mat m = top_matrix(coll_, a);
  bool in_top = false;
  for (const auto& t : top_)
    if (t == m) in_top = true;
  if (!in_top) {
    rebuild_top();
  } else {
    const int g = static_cast<int>(gens_.size()) - 1;
    for (std::size_t t = 0; t < top_.size(); ++t) add_schreier(g, static_cast<int>(t));
  }
  return true;
}

std::vector<Automorphism> general_linear_generators(const Collector& el) {
  const int d = el.size();
  const int p = el.prime();
  int omega = 1;
  for (int w = 2; w < p; ++w) {
    int x = w, ord = 1;
    while (x != 1) {
      x = x * w % p;
      ++ord;
    }
    if (ord == p - 1) {
      omega = w;
      break;
    }
  }
  if (p == 2) omega = 1;
  std::vector<Automorphism> out;
  auto make = [&](const gfp::Mat& m) {
    Automorphism a;
    for (int i = 0; i < d; ++i) a.images.push_back(Element{m[i]});
    return a;
  };
  if (omega != 1) {
    gfp::Mat m = gfp::identity(d);
    m[0][0] = omega;
    out.push_back(make(m));
  }
  if (d >= 2) {
    gfp::Mat t = gfp::identity(d);
    t[0][1] = 1;
    out.push_back(make(t));
    gfp::Mat c(d, gfp::Vec(d, 0));
    for (int i = 0; i < d; ++i) c[i][(i + 1) % d] = 1;
    out.push_back(make(c));
  }
  return out;
}

std::vector<Automorphism> bruteforce_automorphisms(const Collector& coll) {
  const PcPresentation& pc = coll.presentation();
  const int n = pc.size();
  const int p = pc.prime();
  if (n > 6) throw std::invalid_argument("exhaustive automorphism search is limited to order p^6");
  const int d = pc.generator_rank();
  std::vector<Element> all;
  std::vector<int> ex(n, 0);
  for (;;) {
    all.push_back(Element{ex});
    int k = n - 1;
    while (k >= 0 && ++ex[k] == p) ex[k--] = 0;
    if (k < 0) break;
  }
  std::vector<Automorphism> out;
  std::vector<std::size_t> pick(d, 0);
  for (;;) {
    std::vector<Element> imgs;
    gfp::Mat top(d, gfp::Vec(d));
    for (int i = 0; i < d; ++i) {
      imgs.push_back(all[pick[i]]);
      for (int k = 0; k < d; ++k) top[i][k] = all[pick[i]][k];
    }
    if (gfp::rank(top, p) == d) {
      Automorphism a = extend_by_definitions(coll, imgs);
      if (is_automorphism(coll, a)) out.push_back(std::move(a));
    }
    int k = d - 1;
    while (k >= 0 && ++pick[k] == all.size()) pick[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

}  // namespace sigma3

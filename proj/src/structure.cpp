#include "sigma3/structure.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "sigma3/gfp.hpp"

namespace sigma3 {

namespace {

// Sifting table indexed by leading depth.
class Table {
 public:
  explicit Table(const Collector& coll) : coll_(coll), slot_(coll.size()) {}

  // Reduces g by the table; returns the remainder.
  Element sift(Element g) const {
    const int p = coll_.prime();
    for (;;) {
      int d = coll_.depth(g);
      if (d == coll_.size() || !slot_[d]) return g;
      coll_.mul_into(g, coll_.pow(*slot_[d], p - g[d]));
    }
  }

  // Inserts the remainder of g; returns the inserted element if any.
  std::optional<Element> insert(const Element& g) {
    Element r = sift(g);
    int d = coll_.depth(r);
    if (d == coll_.size()) return std::nullopt;
    if (r[d] != 1) r = coll_.pow(r, gfp::inv(r[d], coll_.prime()));
    slot_[d] = r;
    return r;
  }

  Subgroup canonical() const {
    Subgroup h;
    for (int d = 0; d < coll_.size(); ++d)
      if (slot_[d]) {
        h.gens.push_back(*slot_[d]);
        h.depths.push_back(d);
      }
    const int p = coll_.prime();
    for (std::size_t i = 0; i < h.gens.size(); ++i)
      for (std::size_t j = i + 1; j < h.gens.size(); ++j) {
        int a = h.gens[i][h.depths[j]];
        if (a != 0) coll_.mul_into(h.gens[i], coll_.pow(h.gens[j], p - a));
      }
    return h;
  }

  const std::vector<std::optional<Element>>& slots() const { return slot_; }

 private:
  const Collector& coll_;
  std::vector<std::optional<Element>> slot_;
};

}  // namespace

Subgroup whole_group(const Collector& coll) {
  Subgroup h;
  for (int i = 0; i < coll.size(); ++i) {
    h.gens.push_back(coll.generator(i));
    h.depths.push_back(i);
  }
  return h;
}

Subgroup trivial_subgroup() { return {}; }

Subgroup closure(const Collector& coll, const std::vector<Element>& gens) {
  Table t(coll);
  std::vector<Element> queue(gens.rbegin(), gens.rend());
  while (!queue.empty()) {
    Element g = std::move(queue.back());
    queue.pop_back();
    auto r = t.insert(g);
    if (!r) continue;
    queue.push_back(coll.pow(*r, coll.prime()));
    for (const auto& s : t.slots())
      if (s && !(*s == *r)) queue.push_back(coll.comm(*r, *s));
  }
  return t.canonical();
}

bool contains(const Collector& coll, const Subgroup& h, const Element& g) {
  Element x = g;
  const int p = coll.prime();
  std::size_t k = 0;
  for (;;) {
    int d = coll.depth(x);
    if (d == coll.size()) return true;
    while (k < h.depths.size() && h.depths[k] < d) ++k;
    if (k == h.depths.size() || h.depths[k] != d) return false;
    coll.mul_into(x, coll.pow(h.gens[k], p - x[d]));
  }
}

bool is_subgroup_of(const Collector& coll, const Subgroup& a, const Subgroup& b) {
  for (const auto& g : a.gens)
    if (!contains(coll, b, g)) return false;
  return true;
}

bool is_normalized_by(const Collector& coll, const Subgroup& h, const std::vector<Element>& xs) {
  for (const auto& g : h.gens)
    for (const auto& x : xs)
      if (!contains(coll, h, coll.conj(g, x))) return false;
  return true;
}

Subgroup normal_closure(const Collector& coll, const std::vector<Element>& gens,
                        const std::vector<Element>& conjugators) {
  Subgroup h = closure(coll, gens);
  for (;;) {
    std::vector<Element> extra;
    for (const auto& g : h.gens)
      for (const auto& x : conjugators) {
        Element c = coll.comm(g, x);
        if (!contains(coll, h, c)) extra.push_back(std::move(c));
      }
    if (extra.empty()) return h;
    extra.insert(extra.begin(), h.gens.begin(), h.gens.end());
    h = closure(coll, extra);
  }
}

Subgroup normal_closure(const Collector& coll, const std::vector<Element>& gens) {
  return normal_closure(coll, gens, whole_group(coll).gens);
}

Subgroup commutator_subgroup(const Collector& coll, const Subgroup& a, const Subgroup& b,
                             const std::vector<Element>& conjugators) {
  std::vector<Element> cs;
  for (const auto& x : a.gens)
    for (const auto& y : b.gens) {
      Element c = coll.comm(x, y);
      if (!c.is_identity()) cs.push_back(std::move(c));
    }
  return normal_closure(coll, cs, conjugators);
}

Subgroup derived_subgroup(const Collector& coll, const Subgroup& h) {
  return commutator_subgroup(coll, h, h, h.gens);
}

Subgroup frattini_subgroup(const Collector& coll, const Subgroup& h) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < h.gens.size(); ++i) {
    gens.push_back(coll.pow(h.gens[i], coll.prime()));
    for (std::size_t j = 0; j < i; ++j) gens.push_back(coll.comm(h.gens[i], h.gens[j]));
  }
  return normal_closure(coll, gens, h.gens);
}

FactorCoords::FactorCoords(const Collector& coll, const Subgroup& h, const Subgroup& k) : coll_(&coll) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < h.depths.size(); ++i) {
    while (j < k.depths.size() && k.depths[j] < h.depths[i]) ++j;
    if (j < k.depths.size() && k.depths[j] == h.depths[i]) {
      seq_.push_back(k.gens[j]);
      seq_factor_.push_back(-1);
    } else {
      seq_.push_back(h.gens[i]);
      seq_factor_.push_back(static_cast<int>(factor_.size()));
      factor_.push_back(h.gens[i]);
    }
  }
  if (seq_.size() - factor_.size() != k.depths.size())
    throw std::invalid_argument("FactorCoords: K is not contained in H");
}

std::vector<int> FactorCoords::coords(const Element& g) const {
  const Collector& coll = *coll_;
  std::vector<int> c(factor_.size(), 0);
  Element x = g;
  std::size_t k = 0;
  for (;;) {
    int d = coll.depth(x);
    if (d == coll.size()) return c;
    while (k < seq_.size() && coll.depth(seq_[k]) < d) ++k;
    if (k == seq_.size() || coll.depth(seq_[k]) != d) throw std::logic_error("element outside subgroup");
    int a = x[d];
    if (seq_factor_[k] >= 0) c[seq_factor_[k]] = a;
    x = coll.mul(coll.pow(coll.inv(seq_[k]), a), x);
  }
}

Element FactorCoords::element(const std::vector<long>& c) const {
  Element e = coll_->identity();
  for (std::size_t i = 0; i < factor_.size(); ++i)
    if (c[i] != 0) coll_->mul_into(e, coll_->pow(factor_[i], c[i]));
  return e;
}

std::vector<mpz_class> AbelianQuotient::coords(const Element& g) const {
  std::vector<int> c = factor.coords(g);
  std::vector<mpz_class> out(logs.size(), 0);
  for (std::size_t j = 0; j < logs.size(); ++j) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * to_basis(static_cast<int>(i), static_cast<int>(j));
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), factor_prime, logs[j]);
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    out[j] = s;
  }
  return out;
}

AbelianQuotient abelian_quotient(const Collector& coll, const Subgroup& h, const Subgroup& k) {
  const int p = coll.prime();
  FactorCoords fc(coll, h, k);
  const int m = fc.size();
  IntMatrix rel(m, m);
  for (int i = 0; i < m; ++i) {
    auto c = fc.coords(coll.pow(fc.factor_gens()[i], p));
    for (int j = 0; j < m; ++j) rel(i, j) = -c[j];
    rel(i, i) += p;
  }
  SmithForm s = smith_normal_form(rel);
  AbelianQuotient q{AbelianType{}, {}, {}, fc, IntMatrix(m, 0)};
  q.factor_prime = p;
  auto diag = s.diagonal();
  mpz_class order;
  mpz_ui_pow_ui(order.get_mpz_t(), p, m);
  std::vector<int> cols;
  for (int j = 0; j < m; ++j) {
    mpz_class d = diag[j];
    if (d == 1) continue;
    int lg = 0;
    while (d % p == 0) {
      d /= p;
      ++lg;
    }
    if (d != 1) throw std::logic_error("abelian quotient is not a p-group");
    std::vector<long> v(m);
    for (int i = 0; i < m; ++i) {
      mpz_class x;
      mpz_fdiv_r(x.get_mpz_t(), s.Vinv(j, i).get_mpz_t(), order.get_mpz_t());
      v[i] = x.get_si();
    }
    q.basis.push_back(fc.element(v));
    q.logs.push_back(lg);
    cols.push_back(j);
  }
  q.to_basis = IntMatrix(m, static_cast<int>(cols.size()));
  for (int i = 0; i < m; ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) q.to_basis(i, static_cast<int>(c)) = s.V(i, cols[c]);
  q.type = AbelianType::from_logs(q.logs);
  return q;
}

AbelianType abelianization_type(const Collector& coll, const Subgroup& h) {
  return abelian_quotient(coll, h, derived_subgroup(coll, h)).type;
}

SeriesResult series(const Collector& coll, SeriesKind kind) {
  SeriesResult r;
  Subgroup g = whole_group(coll);
  const auto& all = g.gens;
  r.terms.push_back(g);
  while (!r.terms.back().is_trivial()) {
    const Subgroup& cur = r.terms.back();
    Subgroup next;
    if (kind == SeriesKind::lower_central) {
      next = commutator_subgroup(coll, cur, g, all);
    } else if (kind == SeriesKind::derived) {
      next = commutator_subgroup(coll, cur, cur, all);
    } else {
      std::vector<Element> gens;
      for (const auto& a : cur.gens) {
        gens.push_back(coll.pow(a, coll.prime()));
        for (const auto& x : all) gens.push_back(coll.comm(a, x));
      }
      next = normal_closure(coll, gens, all);
    }
    if (next == cur) throw std::logic_error("series does not terminate (group is not a p-group?)");
    r.terms.push_back(std::move(next));
  }
  for (std::size_t i = 0; i + 1 < r.terms.size(); ++i)
    r.factors.push_back(abelian_quotient(coll, r.terms[i], r.terms[i + 1]).type);
  return r;
}

StructureSummary summarize(const Collector& coll) {
  StructureSummary s;
  s.lo = coll.size();
  auto lcs = series(coll, SeriesKind::lower_central);
  s.nilpotency_class = static_cast<int>(lcs.factors.size());
  s.lower_central_factors = lcs.factors;
  for (std::size_t j = 2; j < lcs.factors.size(); ++j)
    if (lcs.factors[j].rank() >= 2) s.bcf = true;
  s.derived_length = static_cast<int>(series(coll, SeriesKind::derived).factors.size());
  s.p_class = static_cast<int>(series(coll, SeriesKind::exponent_p_central).factors.size());
  return s;
}

PcPresentation quotient(const Collector& coll, const Subgroup& n) {
  const PcPresentation& pc = coll.presentation();
  Subgroup g = whole_group(coll);
  FactorCoords fc(coll, g, n);
  std::vector<int> keep;
  for (int i = 0, k = 0; i < coll.size(); ++i) {
    while (k < n.log_order() && n.depths[k] < i) ++k;
    if (k < n.log_order() && n.depths[k] == i) continue;
    keep.push_back(i);
  }
  PcPresentation out(pc.prime());
  for (int i : keep) out.add_generator(pc.name(i), pc.weight(i));
  auto word = [&](const Element& e) {
    auto c = fc.coords(e);
    PcWord w;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) w.emplace_back(static_cast<int>(i), c[i]);
    return w;
  };
  const int m = static_cast<int>(keep.size());
  for (int a = 0; a < m; ++a) {
    Element ga = coll.generator(keep[a]);
    out.set_power(a, word(coll.pow(ga, pc.prime())));
    for (int b = 0; b < a; ++b) out.set_comm(a, b, word(coll.comm(ga, coll.generator(keep[b]))));
  }
  // inherited weights may decrease along the kept subsequence only if the
  // input was unweighted; force monotonicity
  for (int a = 1; a < m; ++a)
    if (out.weight(a) < out.weight(a - 1)) out.set_weight(a, out.weight(a - 1));
  return out;
}

std::vector<Element> weight_one_generators(const Collector& coll) {
  std::vector<Element> out;
  const auto& pc = coll.presentation();
  for (int i = 0; i < pc.size() && pc.weight(i) == 1; ++i) out.push_back(coll.generator(i));
  return out;
}

std::vector<Subgroup> maximal_subgroups(const Collector& coll, const Subgroup& h) {
  const int p = coll.prime();
  Subgroup phi = frattini_subgroup(coll, h);
  FactorCoords fc(coll, h, phi);
  const int d = fc.size();
  std::vector<Subgroup> out;
  // hyperplanes as kernels of functionals with leading coefficient 1
  gfp::for_each_subspace(d, 1, p, [&](const gfp::Mat& lambda) {
    gfp::Mat ker = gfp::nullspace(lambda, d, p);
    std::vector<Element> gens = phi.gens;
    for (const auto& v : ker) gens.push_back(fc.element(std::vector<long>(v.begin(), v.end())));
    out.push_back(closure(coll, gens));
    return true;
  });
  return out;
}

MaximalLayers maximal_layers(const Collector& coll, bool with_second_layer) {
  const int p = coll.prime();
  MaximalLayers ml;
  Subgroup g = whole_group(coll);
  ml.derived = derived_subgroup(coll, g);
  ml.abelianization = abelian_quotient(coll, g, ml.derived);
  const auto& logs = ml.abelianization.logs;
  if (logs.size() != 2 || logs[0] != 1 || logs[1] < 2)
    throw std::invalid_argument("commutator quotient is " + ml.abelianization.type.to_string() +
                                ", expected type (p^e, p) with e >= 2");
  ml.e = logs[1];
  ml.y = ml.abelianization.basis[0];
  ml.x = ml.abelianization.basis[1];
  const Element& x = ml.x;
  const Element& y = ml.y;
  auto with_derived = [&](std::vector<Element> extra) {
    extra.insert(extra.end(), ml.derived.gens.begin(), ml.derived.gens.end());
    return closure(coll, extra);
  };
  ml.h.push_back(with_derived({x}));
  ml.h.push_back(with_derived({coll.mul(x, y)}));
  ml.h.push_back(with_derived({coll.mul(x, coll.pow(y, 2))}));
  ml.h.push_back(with_derived({y, coll.pow(x, p)}));
  for (const auto& h : ml.h) ml.h_ab.push_back(abelianization_type(coll, h));
  if (with_second_layer) {
    for (const auto& h : ml.h) {
      auto subs = maximal_subgroups(coll, h);
      std::vector<AbelianType> types;
      for (const auto& s : subs) types.push_back(abelianization_type(coll, s));
      ml.second.push_back(std::move(subs));
      ml.second_ab.push_back(std::move(types));
    }
  }
  return ml;
}

}  // namespace sigma3

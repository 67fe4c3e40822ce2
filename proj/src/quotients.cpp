#include "sigma3/quotients.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "sigma3/consistency.hpp"

namespace sigma3 {

namespace {

bool is_definition(const PcPresentation& pc, const RelationRef& r) {
  for (int k = 0; k < pc.size(); ++k) {
    const Definition& d = pc.definition(k);
    if (r.is_power() && d.kind == Definition::Kind::power && d.j == r.j) return true;
    if (!r.is_power() && d.kind == Definition::Kind::commutator && d.j == r.j && d.i == r.i) return true;
  }
  return false;
}

bool is_canonical(const PcPresentation& pc, const RelationRef& r, int c) {
  if (pc.weight(r.j) != c) return false;
  return r.is_power() || pc.weight(r.i) == 1;
}

const PcWord& rhs_of(const PcPresentation& pc, const RelationRef& r) {
  return r.is_power() ? pc.power(r.j) : pc.comm(r.j, r.i);
}

Definition definition_of(const RelationRef& r) {
  return r.is_power() ? Definition::power(r.j) : Definition::commutator(r.j, r.i);
}

// G with a fresh central tail of order p on every non-definition relation,
// plus `extra` free central generators placed before them. Tail columns are
// ordered: extra, non-canonical relations, canonical relations.
struct TailSystem {
  int n = 0;
  int c = 0;
  int p = 3;
  int extra = 0;
  std::vector<RelationRef> cols;
  int canonical_from = 0;  // first canonical column among cols
  std::unique_ptr<Collector> coll;
  gfp::Mat rows;

  TailSystem(const PcPresentation& pc, int extra_cols) : n(pc.size()), c(pc.p_class()), p(pc.prime()), extra(extra_cols) {
    std::vector<RelationRef> plain, canon;
    for (int j = 0; j < n; ++j) {
      for (int i = -1; i < j; ++i) {
        RelationRef r{j, i};
        if (is_definition(pc, r)) continue;
        (is_canonical(pc, r, c) ? canon : plain).push_back(r);
      }
    }
    cols = plain;
    canonical_from = static_cast<int>(cols.size());
    cols.insert(cols.end(), canon.begin(), canon.end());

    PcPresentation t(p);
    for (int k = 0; k < n; ++k) t.add_generator(pc.name(k), pc.weight(k), pc.definition(k));
    for (int k = 0; k < width(); ++k) t.add_generator("_t" + std::to_string(k + 1), c + 1);
    for (int k = 0; k < n; ++k) {
      t.set_power(k, pc.power(k));
      for (int i = 0; i < k; ++i) t.set_comm(k, i, pc.comm(k, i));
    }
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const RelationRef& r = cols[k];
      PcWord w = rhs_of(pc, r);
      w.emplace_back(n + extra + static_cast<int>(k), 1);
      if (r.is_power())
        t.set_power(r.j, w);
      else
        t.set_comm(r.j, r.i, w);
    }
    coll = std::make_unique<Collector>(std::move(t));
  }

  int width() const { return extra + static_cast<int>(cols.size()); }

  gfp::Vec tail_part(const Element& e) const { return gfp::Vec(e.exps.begin() + n, e.exps.end()); }

  bool head_is_identity(const Element& e) const {
    for (int k = 0; k < n; ++k)
      if (e[k] != 0) return false;
    return true;
  }

  void add_row(gfp::Vec v) {
    if (!gfp::is_zero(v)) rows.push_back(std::move(v));
  }

  void add_consistency_rows() {
    for_each_overlap(
        *coll,
        [&](const std::string& kind, const std::vector<int>&, const Element& lhs, const Element& rhs) {
          for (int k = 0; k < n; ++k)
            if (lhs[k] != rhs[k]) throw std::invalid_argument("presentation is inconsistent (" + kind + " overlap)");
          gfp::Vec v(width());
          for (int k = 0; k < width(); ++k) v[k] = ((lhs[n + k] - rhs[n + k]) % p + p) % p;
          add_row(std::move(v));
        },
        n);
  }

  // Solves the accumulated linear system. Returns the free columns, and the
  // value of every column in terms of them.
  struct Solution {
    std::vector<int> free;
    std::vector<gfp::Vec> value;  // per column, length free.size()
    std::vector<char> is_pivot;
  };

  Solution solve() {
    Solution s;
    const int w = width();
    std::vector<int> piv = gfp::rref(rows, p);
    s.is_pivot.assign(w, 0);
    for (int col : piv) s.is_pivot[col] = 1;
    std::vector<int> pos(w, -1);
    for (int col = 0; col < w; ++col)
      if (!s.is_pivot[col]) {
        pos[col] = static_cast<int>(s.free.size());
        s.free.push_back(col);
      }
    const int m = static_cast<int>(s.free.size());
    s.value.assign(w, gfp::Vec(m, 0));
    for (int col = 0; col < w; ++col)
      if (!s.is_pivot[col]) s.value[col][pos[col]] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (int f = 0; f < m; ++f) s.value[piv[r]][f] = (p - rows[r][s.free[f]]) % p;
    return s;
  }
};

// Presentation extending pc by one layer: generators for the free columns
// (all of which must be relation columns), relation tails rewritten.
PcPresentation extend_by_layer(const PcPresentation& pc, const TailSystem& ts, const TailSystem::Solution& sol,
                               const std::vector<std::string>& new_names) {
  const int n = pc.size();
  PcPresentation out(pc.prime());
  for (int k = 0; k < n; ++k) out.add_generator(pc.name(k), pc.weight(k), pc.definition(k));
  for (std::size_t f = 0; f < sol.free.size(); ++f) {
    int col = sol.free[f] - ts.extra;
    if (col < 0) throw std::logic_error("free tail on a generator image");
    out.add_generator(new_names[f], ts.c + 1, definition_of(ts.cols[col]));
  }
  for (int k = 0; k < n; ++k) {
    out.set_power(k, pc.power(k));
    for (int i = 0; i < k; ++i) out.set_comm(k, i, pc.comm(k, i));
  }
  for (std::size_t k = 0; k < ts.cols.size(); ++k) {
    const RelationRef& r = ts.cols[k];
    PcWord w = rhs_of(pc, r);
    const gfp::Vec& v = sol.value[ts.extra + k];
    for (std::size_t f = 0; f < v.size(); ++f)
      if (v[f]) w.emplace_back(n + static_cast<int>(f), v[f]);
    if (r.is_power())
      out.set_power(r.j, w);
    else
      out.set_comm(r.j, r.i, w);
  }
  out.validate();
  return out;
}

std::string fresh_name(const PcPresentation& pc, int index) {
  std::string base = "g" + std::to_string(index + 1);
  if (pc.index_of(base) < 0) return base;
  for (int k = 0;; ++k) {
    std::string alt = "a" + std::to_string(index + 1) + (k ? "_" + std::to_string(k) : "");
    if (pc.index_of(alt) < 0) return alt;
  }
}

}  // namespace

CoverData p_cover(const PcPresentation& pc) {
  if (!pc.is_labelled()) throw std::invalid_argument("p_cover needs a labelled presentation; standardize it first");
  TailSystem ts(pc, 0);
  ts.add_consistency_rows();
  auto sol = ts.solve();

  CoverData cd;
  cd.group = pc;
  cd.n = pc.size();
  cd.p_class = ts.c;
  cd.generator_rank = pc.generator_rank();
  cd.multiplicator_rank = static_cast<int>(sol.free.size());
  for (int col : sol.free) cd.defining.push_back(ts.cols[col]);
  cd.relations = ts.cols;
  cd.values = sol.value;

  std::vector<std::string> names;
  for (int k = 0; k < cd.multiplicator_rank; ++k) {
    std::string nm = "t" + std::to_string(k + 1);
    while (pc.index_of(nm) >= 0) nm = "_" + nm;
    names.push_back(nm);
  }
  cd.cover = extend_by_layer(pc, ts, sol, names);

  gfp::Mat canon;
  for (std::size_t k = ts.canonical_from; k < ts.cols.size(); ++k) canon.push_back(sol.value[k]);
  cd.nucleus = gfp::span(canon, pc.prime());
  cd.nuclear_rank = static_cast<int>(cd.nucleus.size());
  cd.nucleus_start = cd.multiplicator_rank - cd.nuclear_rank;
  // the nucleus is spanned by the trailing coordinates (canonical columns come last)
  gfp::Mat trailing;
  for (int k = cd.nucleus_start; k < cd.multiplicator_rank; ++k) {
    gfp::Vec v(cd.multiplicator_rank, 0);
    v[k] = 1;
    trailing.push_back(v);
  }
  if (cd.nucleus != trailing) throw std::logic_error("nucleus is not spanned by the trailing tails");
  return cd;
}

gfp::Vec multiplicator_coords(const CoverData& cd, const Element& e) {
  for (int k = 0; k < cd.n; ++k)
    if (e[k] != 0) throw std::logic_error("element is not in the multiplicator");
  return gfp::Vec(e.exps.begin() + cd.n, e.exps.end());
}

CoverQuotient cover_quotient(const CoverData& cd, const gfp::Mat& u) {
  const int p = cd.group.prime();
  const int m = cd.multiplicator_rank;
  gfp::Mat basis = u;
  std::vector<int> piv = gfp::rref(basis, p);
  CoverQuotient q;
  std::vector<int> pos(m, -1);
  std::vector<char> is_piv(m, 0);
  for (int c : piv) is_piv[c] = 1;
  for (int c = 0; c < m; ++c)
    if (!is_piv[c]) {
      pos[c] = static_cast<int>(q.kept.size());
      q.kept.push_back(c);
    }
  const int s = static_cast<int>(q.kept.size());
  q.projection.assign(m, gfp::Vec(s, 0));
  for (int c : q.kept) q.projection[c][pos[c]] = 1;
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (int c : q.kept) q.projection[piv[r]][pos[c]] = (p - basis[r][c]) % p;

  const PcPresentation& g = cd.group;
  const int n = cd.n;
  PcPresentation out(p);
  for (int k = 0; k < n; ++k) out.add_generator(g.name(k), g.weight(k), g.definition(k));
  for (int k = 0; k < s; ++k) out.add_generator(fresh_name(g, n + k), cd.p_class + 1, definition_of(cd.defining[q.kept[k]]));
  for (int k = 0; k < n; ++k) {
    out.set_power(k, g.power(k));
    for (int i = 0; i < k; ++i) out.set_comm(k, i, g.comm(k, i));
  }
  for (std::size_t r = 0; r < cd.relations.size(); ++r) {
    const RelationRef& rel = cd.relations[r];
    PcWord w = rhs_of(g, rel);
    gfp::Vec v = gfp::vec_mat(cd.values[r], q.projection, p);
    for (int k = 0; k < s; ++k)
      if (v[k]) w.emplace_back(n + k, v[k]);
    if (rel.is_power())
      out.set_power(rel.j, w);
    else
      out.set_comm(rel.j, rel.i, w);
  }
  out.validate();
  q.pc = std::move(out);
  return q;
}

Element project_to_quotient(const CoverData& cd, const CoverQuotient& q, const Element& e) {
  const int p = cd.group.prime();
  Element out{std::vector<int>(e.exps.begin(), e.exps.begin() + cd.n)};
  gfp::Vec t(e.exps.begin() + cd.n, e.exps.end());
  gfp::Vec v = gfp::vec_mat(t, q.projection, p);
  out.exps.insert(out.exps.end(), v.begin(), v.end());
  return out;
}

FpPresentation pc_to_fp(const PcPresentation& pc) {
  FpPresentation fp;
  fp.generators = pc.names();
  auto word = [&](const PcWord& w) {
    Word r;
    for (auto [g, e] : w) r *= Word::generator(pc.name(g), e);
    return r;
  };
  for (int j = 0; j < pc.size(); ++j) {
    Word gj = Word::generator(pc.name(j));
    fp.relators.push_back(Word::generator(pc.name(j), pc.prime()) * word(pc.power(j)).inverse());
    for (int i = 0; i < j; ++i)
      fp.relators.push_back(Word::comm(gj, Word::generator(pc.name(i))) * word(pc.comm(j, i)).inverse());
  }
  return fp;
}

PQuotientResult p_quotient(const FpPresentation& fp, int p, int class_bound, int hard_cap) {
  const int k = static_cast<int>(fp.generators.size());
  PQuotientResult res;

  // class 1: exponent sums mod p, columns reversed so earlier generators stay free
  gfp::Mat sums;
  for (const Word& r : fp.relators) {
    gfp::Vec v(k, 0);
    for (const auto& f : r.factors()) {
      int g = fp.generator_index(f.gen);
      if (g < 0) throw std::invalid_argument("undeclared generator " + f.gen);
      long long e = f.exp % p;
      int col = k - 1 - g;
      v[col] = static_cast<int>(((v[col] + e) % p + p) % p);
    }
    if (!gfp::is_zero(v)) sums.push_back(v);
  }
  std::vector<int> piv = gfp::rref(sums, p);
  std::vector<char> is_piv(k, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<int> pc_index(k, -1);  // fp generator -> weight-1 pc generator
  PcPresentation q(p);
  for (int g = 0; g < k; ++g)
    if (!is_piv[k - 1 - g]) pc_index[g] = q.add_generator(fp.generators[g], 1);
  const int d = q.size();
  std::vector<Element> images(k, Element{std::vector<int>(d, 0)});
  for (int g = 0; g < k; ++g)
    if (pc_index[g] >= 0) images[g].exps[pc_index[g]] = 1;
  for (std::size_t r = 0; r < piv.size(); ++r) {
    int g = k - 1 - piv[r];
    for (int h = 0; h < k; ++h)
      if (pc_index[h] >= 0) images[g].exps[pc_index[h]] = (p - sums[r][k - 1 - h]) % p;
  }
  std::vector<int> non_defining;
  for (int g = 0; g < k; ++g)
    if (pc_index[g] < 0) non_defining.push_back(g);

  int cls = d > 0 ? 1 : 0;
  if (d == 0) res.stabilized = true;
  while (d > 0) {
    if (class_bound > 0 && cls >= class_bound) break;
    if (cls >= hard_cap) {
      res.capped = true;
      break;
    }
    const int n = q.size();
    const int extra = static_cast<int>(non_defining.size());
    TailSystem ts(q, extra);
    ts.add_consistency_rows();
    const Collector& tc = *ts.coll;
    std::vector<Element> lifted(k);
    for (int g = 0; g < k; ++g) {
      lifted[g] = tc.identity();
      std::copy(images[g].exps.begin(), images[g].exps.end(), lifted[g].exps.begin());
    }
    for (int x = 0; x < extra; ++x) lifted[non_defining[x]].exps[n + x] = 1;
    for (const Word& r : fp.relators) {
      Element e = tc.identity();
      for (const auto& f : r.factors()) tc.mul_into(e, tc.pow(lifted[fp.generator_index(f.gen)], f.exp));
      if (!ts.head_is_identity(e)) throw std::logic_error("relator does not hold in the quotient");
      ts.add_row(ts.tail_part(e));
    }
    auto sol = ts.solve();
    for (int x = 0; x < extra; ++x)
      if (!sol.is_pivot[x]) throw std::logic_error("generator image tail is free");
    if (sol.free.empty()) {
      res.stabilized = true;
      break;
    }
    std::vector<std::string> names;
    PcPresentation probe = q;
    for (std::size_t f = 0; f < sol.free.size(); ++f) {
      names.push_back(fresh_name(probe, n + static_cast<int>(f)));
      probe.add_generator(names.back(), cls + 1);
    }
    PcPresentation next = extend_by_layer(q, ts, sol, names);
    const int m = static_cast<int>(sol.free.size());
    for (int g = 0; g < k; ++g) images[g].exps.resize(n + m, 0);
    for (int x = 0; x < extra; ++x) {
      const gfp::Vec& v = sol.value[x];
      for (int f = 0; f < m; ++f) images[non_defining[x]].exps[n + f] = v[f];
    }
    q = std::move(next);
    ++cls;
  }
  res.pc = std::move(q);
  res.images = std::move(images);
  res.p_class = cls;
  return res;
}

PQuotientResult standardize(const PcPresentation& pc, int hard_cap) {
  PQuotientResult r = p_quotient(pc_to_fp(pc), pc.prime(), 0, hard_cap);
  if (!r.stabilized) throw std::runtime_error("standardization did not stabilize");
  if (r.pc.size() != pc.size()) throw std::invalid_argument("presentation is inconsistent (order mismatch)");
  return r;
}

}  // namespace sigma3

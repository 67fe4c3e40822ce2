#include "sigma3/oracles.hpp"

#include <deque>
#include <vector>

namespace sigma3 {

namespace {

// Column 2g is generator g, column 2g+1 its inverse.
class CosetTable {
 public:
  CosetTable(int cols, std::int64_t limit) : cols_(cols), limit_(limit) { add_row(); }

  bool overflow() const { return overflow_; }
  int size() const { return static_cast<int>(parent_.size()); }
  bool live(int c) const { return parent_[c] == c; }
  int get(int c, int x) const { return t_[static_cast<std::size_t>(c) * cols_ + x]; }

  void define(int c, int x) {
    if (static_cast<std::int64_t>(parent_.size()) >= limit_) {
      overflow_ = true;
      return;
    }
    int d = add_row();
    set(c, x, d);
    set(d, x ^ 1, c);
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && get(f, w[i]) >= 0) f = get(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && get(b, w[j] ^ 1) >= 0) b = get(b, w[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        set(f, w[i], b);
        set(b, w[i] ^ 1, f);
        return;
      }
      define(f, w[i]);
      if (overflow_) return;
    }
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int n = parent_[c];
      parent_[c] = r;
      c = n;
    }
    return r;
  }

  void coincidence(int a, int b) {
    std::deque<int> q;
    merge(a, b, q);
    while (!q.empty()) {
      int g = q.front();
      q.pop_front();
      for (int x = 0; x < cols_; ++x) {
        int d = get(g, x);
        if (d < 0) continue;
        if (get(d, x ^ 1) == g) set(d, x ^ 1, -1);
        int m = rep(g), n = rep(d);
        if (get(m, x) >= 0) {
          merge(n, get(m, x), q);
        } else if (get(n, x ^ 1) >= 0) {
          merge(m, get(n, x ^ 1), q);
        } else {
          set(m, x, n);
          set(n, x ^ 1, m);
        }
      }
    }
  }

 private:
  int add_row() {
    int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    t_.resize(t_.size() + cols_, -1);
    return c;
  }
  void set(int c, int x, int v) { t_[static_cast<std::size_t>(c) * cols_ + x] = v; }

  void merge(int a, int b, std::deque<int>& q) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    q.push_back(b);
  }

  int cols_;
  std::int64_t limit_;
  bool overflow_ = false;
  std::vector<int> parent_;
  std::vector<int> t_;
};

}  // namespace

std::optional<std::int64_t> coset_enumeration_order(const FpPresentation& fp, std::int64_t max_cosets) {
  int ngens = static_cast<int>(fp.generators.size());
  std::vector<std::vector<int>> rels;
  for (const Word& r : fp.relators) {
    std::vector<int> w;
    for (const Factor& f : r.factors()) {
      int g = fp.generator_index(f.gen);
      int col = 2 * g + (f.exp < 0 ? 1 : 0);
      for (std::int64_t k = 0; k < (f.exp < 0 ? -f.exp : f.exp); ++k) w.push_back(col);
    }
    if (!w.empty()) rels.push_back(std::move(w));
  }
  CosetTable t(2 * ngens, max_cosets);
  for (int c = 0; c < t.size(); ++c) {
    if (!t.live(c)) continue;
    for (const auto& r : rels) {
      t.scan_and_fill(c, r);
      if (t.overflow()) return std::nullopt;
      if (!t.live(c)) break;
    }
    if (!t.live(c)) continue;
    for (int x = 0; x < 2 * ngens; ++x) {
      if (t.get(c, x) < 0) t.define(c, x);
      if (t.overflow()) return std::nullopt;
    }
  }
  std::int64_t n = 0;
  for (int c = 0; c < t.size(); ++c)
    if (t.live(c)) ++n;
  return n;
}

}  // namespace sigma3

#include "sigma3/gfp.hpp"

#include <stdexcept>

namespace sigma3::gfp {

int inv(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
  int r = 1;
  for (int e = p - 2, b = a; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

std::vector<int> rref(Mat& m, int p) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int cols = static_cast<int>(m[0].size());
  int row = 0;
  const int rows = static_cast<int>(m.size());
  for (int c = 0; c < cols && row < rows; ++c) {
    int sel = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][c] % p != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    int f = inv(m[row][c], p);
    for (int& x : m[row]) x = x * f % p;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][c] == 0) continue;
      int g = m[r][c];
      for (int k = c; k < cols; ++k) m[r][k] = ((m[r][k] - g * m[row][k]) % p + p) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

int rank(Mat m, int p) { return static_cast<int>(rref(m, p).size()); }

Mat nullspace(const Mat& m, int cols, int p) {
  Mat a = m;
  auto piv = rref(a, p);
  std::vector<int> is_pivot(cols, -1);
  for (std::size_t r = 0; r < piv.size(); ++r) is_pivot[piv[r]] = static_cast<int>(r);
  Mat out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f] >= 0) continue;
    Vec v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = (p - a[r][f]) % p;
    out.push_back(std::move(v));
  }
  rref(out, p);
  return out;
}

Mat identity(int n) {
  Mat m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mul(const Mat& a, const Mat& b, int p) {
  Mat out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(vec_mat(row, b, p));
  return out;
}

Vec vec_mat(const Vec& v, const Mat& a, int p) {
  const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  Vec out(cols, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < cols; ++j) out[j] += v[i] * a[i][j];
  }
  for (int& x : out) x %= p;
  return out;
}

Vec reduce(const Mat& basis, const std::vector<int>& pivots, Vec v, int p) {
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    int c = pivots[r];
    int g = v[c] % p;
    if (g == 0) continue;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = ((v[k] - g * basis[r][k]) % p + p) % p;
  }
  return v;
}

bool is_zero(const Vec& v) {
  for (int x : v)
    if (x != 0) return false;
  return true;
}

Mat span(Mat rows, int p) {
  rref(rows, p);
  return rows;
}

Mat sum(const Mat& a, const Mat& b, int p) {
  Mat m = a;
  m.insert(m.end(), b.begin(), b.end());
  return span(std::move(m), p);
}

Mat intersection(const Mat& a, const Mat& b, int cols, int p) {
  if (a.empty() || b.empty()) return {};
  // solve x A = y B: kernel of the stacked matrix [A; -B] acting on the left
  const int ra = static_cast<int>(a.size());
  const int rb = static_cast<int>(b.size());
  Mat t(cols, Vec(ra + rb, 0));
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < ra; ++r) t[c][r] = a[r][c] % p;
    for (int r = 0; r < rb; ++r) t[c][ra + r] = (p - b[r][c] % p) % p;
  }
  Mat ker = nullspace(t, ra + rb, p);
  Mat out;
  for (const auto& k : ker) {
    Vec v(cols, 0);
    for (int r = 0; r < ra; ++r)
      if (k[r] != 0)
        for (int c = 0; c < cols; ++c) v[c] = (v[c] + k[r] * a[r][c]) % p;
    out.push_back(std::move(v));
  }
  return span(std::move(out), p);
}

bool contains(const Mat& space, const Vec& v, int p) {
  std::vector<int> piv;
  for (const auto& row : space) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    piv.push_back(static_cast<int>(c));
  }
  return is_zero(reduce(space, piv, v, p));
}

Mat image(const Mat& space, const Mat& a, int p) { return span(mul(space, a, p), p); }

std::string key(const Mat& space) {
  std::string k;
  for (const auto& row : space) {
    for (int x : row) k.push_back(static_cast<char>(x));
    k.push_back('|');
  }
  return k;
}

std::int64_t gaussian_binomial(int n, int k, int p) {
  if (k < 0 || k > n) return 0;
  std::int64_t num = 1, den = 1;
  std::int64_t pn = 1, pk = 1;
  for (int i = 0; i < n - k; ++i) pn *= p;  // p^{n-k}
  // prod_{i=1..k} (p^{n-k+i} - 1)/(p^i - 1)
  for (int i = 1; i <= k; ++i) {
    pn *= p;
    pk *= p;
    num *= pn - 1;
    den *= pk - 1;
  }
  return num / den;
}

namespace {

// Pivot sets are k-subsets of columns; free entries are those right of each
// pivot in non-pivot columns.
void subspaces_rec(int n, int k, int p, std::vector<int>& piv, int start,
                   const std::function<bool(const Mat&)>& visit, bool& stop) {
  if (stop) return;
  if (static_cast<int>(piv.size()) == k) {
    std::vector<std::pair<int, int>> slots;
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    for (int r = 0; r < k; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (!is_piv[c]) slots.emplace_back(r, c);
    Mat m(k, Vec(n, 0));
    for (int r = 0; r < k; ++r) m[r][piv[r]] = 1;
    std::vector<int> digits(slots.size(), 0);
    for (;;) {
      if (!visit(m)) {
        stop = true;
        return;
      }
      std::size_t i = 0;
      for (; i < digits.size(); ++i) {
        auto [r, c] = slots[i];
        if (++digits[i] < p) {
          m[r][c] = digits[i];
          break;
        }
        digits[i] = 0;
        m[r][c] = 0;
      }
      if (i == digits.size()) return;
    }
  }
  for (int c = start; c <= n - (k - static_cast<int>(piv.size())); ++c) {
    piv.push_back(c);
    subspaces_rec(n, k, p, piv, c + 1, visit, stop);
    piv.pop_back();
    if (stop) return;
  }
}

}  // namespace

void for_each_subspace(int n, int k, int p, const std::function<bool(const Mat&)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> piv;
  bool stop = false;
  subspaces_rec(n, k, p, piv, 0, visit, stop);
}

}  // namespace sigma3::gfp

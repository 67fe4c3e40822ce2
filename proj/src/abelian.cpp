#include "sigma3/abelian.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sigma3 {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix");
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntMatrix::append_row(const std::vector<mpz_class>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(row.size());
  if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
  IntMatrix out(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const mpz_class& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& b) const {
  return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
}

mpz_class IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  const int n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  mpz_class prev = 1;
  int sign = 1;
  // Bareiss elimination
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int sel = -1;
      for (int r = k + 1; r < n; ++r)
        if (m(r, k) != 0) {
          sel = r;
          break;
        }
      if (sel < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(m(k, c), m(sel, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<mpz_class> SmithForm::diagonal() const {
  std::vector<mpz_class> d;
  for (int i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Row and column operations applied to D while mirroring them on U (rows),
// V (columns) and Vinv (rows, inverse operation).
struct SnfState {
  IntMatrix D, U, V, Vinv;

  void swap_rows(int a, int b) {
    for (int c = 0; c < D.cols(); ++c) std::swap(D(a, c), D(b, c));
    for (int c = 0; c < U.cols(); ++c) std::swap(U(a, c), U(b, c));
  }
  void swap_cols(int a, int b) {
    for (int r = 0; r < D.rows(); ++r) std::swap(D(r, a), D(r, b));
    for (int r = 0; r < V.rows(); ++r) std::swap(V(r, a), V(r, b));
    for (int c = 0; c < Vinv.cols(); ++c) std::swap(Vinv(a, c), Vinv(b, c));
  }
  // row_dst -= q * row_src
  void add_row(int dst, int src, const mpz_class& q) {
    for (int c = 0; c < D.cols(); ++c) D(dst, c) -= q * D(src, c);
    for (int c = 0; c < U.cols(); ++c) U(dst, c) -= q * U(src, c);
  }
  // col_dst -= q * col_src; inverse on Vinv: row_src += q * row_dst
  void add_col(int dst, int src, const mpz_class& q) {
    for (int r = 0; r < D.rows(); ++r) D(r, dst) -= q * D(r, src);
    for (int r = 0; r < V.rows(); ++r) V(r, dst) -= q * V(r, src);
    for (int c = 0; c < Vinv.cols(); ++c) Vinv(src, c) += q * Vinv(dst, c);
  }
  void negate_row(int r) {
    for (int c = 0; c < D.cols(); ++c) D(r, c) = -D(r, c);
    for (int c = 0; c < U.cols(); ++c) U(r, c) = -U(r, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SnfState s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), IntMatrix::identity(m.cols())};
  const int rows = m.rows(), cols = m.cols();
  for (int k = 0; k < std::min(rows, cols); ++k) {
    for (;;) {
      // smallest nonzero entry of the remaining block becomes the pivot
      int pr = -1, pc = -1;
      for (int r = k; r < rows; ++r)
        for (int c = k; c < cols; ++c) {
          if (s.D(r, c) == 0) continue;
          if (pr < 0 || abs(s.D(r, c)) < abs(s.D(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr < 0) goto done;
      if (pr != k) s.swap_rows(k, pr);
      if (pc != k) s.swap_cols(k, pc);
      bool clean = true;
      for (int r = k + 1; r < rows; ++r) {
        if (s.D(r, k) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), s.D(r, k).get_mpz_t(), s.D(k, k).get_mpz_t());
        s.add_row(r, k, q);
        if (s.D(r, k) != 0) clean = false;
      }
      for (int c = k + 1; c < cols; ++c) {
        if (s.D(k, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), s.D(k, c).get_mpz_t(), s.D(k, k).get_mpz_t());
        s.add_col(c, k, q);
        if (s.D(k, c) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into row k and go again
      int bad = -1;
      for (int r = k + 1; r < rows && bad < 0; ++r)
        for (int c = k + 1; c < cols; ++c)
          if (s.D(r, c) % s.D(k, k) != 0) {
            bad = r;
            break;
          }
      if (bad < 0) break;
      s.add_row(k, bad, -1);
    }
    if (s.D(k, k) < 0) s.negate_row(k);
  }
done:
  SmithForm out{std::move(s.U), std::move(s.D), std::move(s.V), std::move(s.Vinv)};
  if (!verify_smith_form(m, out)) throw std::logic_error("smith_normal_form: postcondition violated");
  return out;
}

bool verify_smith_form(const IntMatrix& m, const SmithForm& s) {
  if (!(s.U * m * s.V == s.D)) return false;
  if (!(s.V * s.Vinv == IntMatrix::identity(s.V.rows()))) return false;
  if (abs(s.U.determinant()) != 1 || abs(s.V.determinant()) != 1) return false;
  for (int r = 0; r < s.D.rows(); ++r)
    for (int c = 0; c < s.D.cols(); ++c)
      if (r != c && s.D(r, c) != 0) return false;
  auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size()) {
      if (d[i] == 0 && d[i + 1] != 0) return false;
      if (d[i] != 0 && d[i + 1] % d[i] != 0) return false;
    }
  }
  return true;
}

int AbelianType::log_order() const {
  int s = 0;
  for (int x : logs) s += x;
  return s;
}

std::string AbelianType::to_string() const {
  if (logs.empty()) return "0";
  std::string s;
  for (int x : logs) {
    if (x < 10)
      s += static_cast<char>('0' + x);
    else
      s += "(" + std::to_string(x) + ")";
  }
  return s;
}

AbelianType AbelianType::from_logs(std::vector<int> logs) {
  logs.erase(std::remove(logs.begin(), logs.end(), 0), logs.end());
  std::sort(logs.rbegin(), logs.rend());
  return AbelianType{std::move(logs)};
}

AbelianType AbelianType::parse(std::string_view s) {
  TypePattern pat = TypePattern::parse(s);
  for (const auto& part : pat.parts())
    if (part.uses_e) throw std::invalid_argument("type string contains e: " + std::string(s));
  return pat.evaluate(0);
}

AbelianType abelian_type(const IntMatrix& m, int p) {
  std::vector<int> logs;
  int zeros = m.cols() - std::min(m.rows(), m.cols());
  if (zeros > 0) throw std::logic_error("abelian group is infinite");
  SmithForm s = smith_normal_form(m);
  for (const mpz_class& d : s.diagonal()) {
    if (d == 0) throw std::logic_error("abelian group is infinite");
    mpz_class x = d;
    int k = 0;
    while (x % p == 0) {
      x /= p;
      ++k;
    }
    if (x != 1) throw std::logic_error("abelian group is not a p-group");
    logs.push_back(k);
  }
  return AbelianType::from_logs(std::move(logs));
}

TypePattern TypePattern::parse(std::string_view s) {
  TypePattern t;
  std::size_t i = 0;
  auto fail = [&]() { throw std::invalid_argument("bad type pattern: " + std::string(s)); };
  auto starts = [&](std::string_view w) { return s.substr(i, w.size()) == w; };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ') {
      ++i;
    } else if (c >= '0' && c <= '9') {
      if (c != '0' || s.size() != 1) t.parts_.push_back({false, c - '0'});
      ++i;
    } else if (c == 'e') {
      ++i;
      Part part{true, 0};
      if (starts("⁺")) {
        part.offset = 1;
        i += std::string_view("⁺").size();
      } else if (starts("⁻")) {
        part.offset = -1;
        i += std::string_view("⁻").size();
      }
      t.parts_.push_back(part);
    } else if (c == '(') {
      std::size_t close = s.find(')', i);
      if (close == std::string_view::npos) fail();
      std::string_view body = s.substr(i + 1, close - i - 1);
      Part part;
      std::size_t j = 0;
      if (!body.empty() && body[0] == 'e') {
        part.uses_e = true;
        j = 1;
      }
      if (j < body.size()) {
        int sign = 1;
        if (part.uses_e) {
          if (body[j] == '+')
            sign = 1;
          else if (body[j] == '-')
            sign = -1;
          else
            fail();
          ++j;
        }
        if (j == body.size()) fail();
        int v = 0;
        for (; j < body.size(); ++j) {
          if (body[j] < '0' || body[j] > '9') fail();
          v = v * 10 + (body[j] - '0');
        }
        part.offset = sign * v;
      } else if (!part.uses_e) {
        fail();
      }
      t.parts_.push_back(part);
      i = close + 1;
    } else {
      fail();
    }
  }
  return t;
}

TypePattern TypePattern::literal(const AbelianType& t) {
  TypePattern p;
  for (int x : t.logs) p.parts_.push_back({false, x});
  return p;
}

AbelianType TypePattern::evaluate(int e) const {
  std::vector<int> logs;
  for (const auto& part : parts_) {
    int v = part.uses_e ? e + part.offset : part.offset;
    if (v < 0) throw std::invalid_argument("pattern " + to_string() + " is negative at e=" + std::to_string(e));
    logs.push_back(v);
  }
  return AbelianType::from_logs(std::move(logs));
}

std::string TypePattern::to_string() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (const auto& part : parts_) {
    if (!part.uses_e) {
      s += part.offset < 10 ? std::string(1, static_cast<char>('0' + part.offset))
                            : "(" + std::to_string(part.offset) + ")";
    } else if (part.offset == 0) {
      s += "e";
    } else {
      s += "(e" + std::string(part.offset > 0 ? "+" : "-") + std::to_string(std::abs(part.offset)) + ")";
    }
  }
  return s;
}

std::vector<PatternSlot> parse_multiset_pattern(std::string_view s) {
  std::vector<PatternSlot> slots;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string_view item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    PatternSlot slot;
    std::size_t caret = item.find('^');
    if (caret != std::string_view::npos) {
      slot.count = std::stoi(std::string(item.substr(caret + 1)));
      item = item.substr(0, caret);
    }
    std::size_t a = 0;
    while (a <= item.size()) {
      std::size_t bar = item.find('|', a);
      slot.alternatives.push_back(TypePattern::parse(item.substr(a, bar == std::string_view::npos ? item.npos : bar - a)));
      if (bar == std::string_view::npos) break;
      a = bar + 1;
    }
    slots.push_back(std::move(slot));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return slots;
}

bool match_multiset(const std::vector<AbelianType>& types, const std::vector<PatternSlot>& slots, int e) {
  std::size_t total = 0;
  for (const auto& sl : slots) total += sl.count;
  if (total != types.size()) return false;
  std::vector<std::vector<AbelianType>> alts;
  for (const auto& sl : slots) {
    std::vector<AbelianType> a;
    for (const auto& t : sl.alternatives) a.push_back(t.evaluate(e));
    alts.push_back(std::move(a));
  }
  std::vector<int> left;
  for (const auto& sl : slots) left.push_back(sl.count);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == types.size()) return true;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (left[k] == 0) continue;
      if (std::find(alts[k].begin(), alts[k].end(), types[i]) == alts[k].end()) continue;
      --left[k];
      if (assign(i + 1)) return true;
      ++left[k];
    }
    return false;
  };
  return assign(0);
}

bool match_pattern(const AbelianType& t, const TypePattern& pat, int e) { return t == pat.evaluate(e); }

bool match_quartet(const std::vector<AbelianType>& t, const std::vector<TypePattern>& pat, int e) {
  if (t.size() != 4 || pat.size() != 4) return false;
  if (!match_pattern(t[3], pat[3], e)) return false;
  std::vector<AbelianType> a(t.begin(), t.begin() + 3), b;
  for (int i = 0; i < 3; ++i) b.push_back(pat[i].evaluate(e));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string format_quartet(const std::vector<AbelianType>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += (i == 3 ? ";" : ",");
    s += t[i].to_string();
  }
  return s + "]";
}

std::vector<TypePattern> parse_quartet_pattern(std::string_view s) {
  if (!s.empty() && s.front() == '[') s.remove_prefix(1);
  if (!s.empty() && s.back() == ']') s.remove_suffix(1);
  std::vector<TypePattern> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t sep = s.find_first_of(",;", start);
    out.push_back(TypePattern::parse(s.substr(start, sep == std::string_view::npos ? s.npos : sep - start)));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  if (out.size() != 4) throw std::invalid_argument("quartet pattern needs four entries");
  return out;
}

}  // namespace sigma3

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace sigma3 {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  mpz_class& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const mpz_class& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  void append_row(const std::vector<mpz_class>& row);
  IntMatrix operator*(const IntMatrix& b) const;
  bool operator==(const IntMatrix& b) const;
  mpz_class determinant() const;  // square matrices only (fraction-free elimination)

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<mpz_class> a_;
};

/// U * M * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal
/// (zeros last). Vinv is V^{-1}, kept so callers can change generators.
struct SmithForm {
  IntMatrix U, D, V, Vinv;
  std::vector<mpz_class> diagonal() const;
};

/// Checks its own postconditions (verify_smith_form) and throws
/// std::logic_error if they fail.
SmithForm smith_normal_form(const IntMatrix& m);

/// Checks the divisibility chain, U M V = D, V Vinv = I and |det U| = |det V| = 1.
bool verify_smith_form(const IntMatrix& m, const SmithForm& s);

/// Logarithmic type of a finite abelian p-group: logs of the cyclic factor
/// orders, nonincreasing. Rendered as digits ("21" for (9,3)) with logs >= 10
/// parenthesized ("(10)21"); the trivial group renders as "0".
struct AbelianType {
  std::vector<int> logs;

  int rank() const { return static_cast<int>(logs.size()); }
  int log_order() const;
  std::string to_string() const;
  static AbelianType parse(std::string_view s);
  static AbelianType from_logs(std::vector<int> logs);
  bool operator==(const AbelianType&) const = default;
  auto operator<=>(const AbelianType&) const = default;
};

/// Type of the abelian group with relation matrix m (rows are relations on
/// the column generators). Throws std::logic_error if the group is infinite
/// or not a p-group.
AbelianType abelian_type(const IntMatrix& m, int p);

/// A type written with the symbol e: each part is an integer or e+delta.
/// Accepted spellings: digits, "e", "e⁺"/"e⁻" (e+1, e-1), "(e+2)", "(e-1)", "(10)".
class TypePattern {
 public:
  struct Part {
    bool uses_e = false;
    int offset = 0;
  };

  TypePattern() = default;
  static TypePattern parse(std::string_view s);
  static TypePattern literal(const AbelianType& t);

  AbelianType evaluate(int e) const;
  std::string to_string() const;
  const std::vector<Part>& parts() const { return parts_; }

 private:
  std::vector<Part> parts_;
};

/// One slot of a multiset pattern: `count` entries, each matching one of the
/// alternatives.
struct PatternSlot {
  std::vector<TypePattern> alternatives;
  int count = 1;
};

/// Parses "e2111, (e+1)211|(e+1)1111 ^3, (e+1)2 ^9": comma separated slots,
/// '|' separating alternatives, optional "^k" multiplicity.
std::vector<PatternSlot> parse_multiset_pattern(std::string_view s);

/// Multiset equality of types against slots (a slot's entries may use
/// different alternatives).
bool match_multiset(const std::vector<AbelianType>& types, const std::vector<PatternSlot>& slots, int e);

bool match_pattern(const AbelianType& t, const TypePattern& pat, int e);

/// Punctured quartet: first three compared as a multiset, fourth separately.
bool match_quartet(const std::vector<AbelianType>& t, const std::vector<TypePattern>& pat, int e);

/// "[721,611,611;521]"
std::string format_quartet(const std::vector<AbelianType>& t);
std::vector<TypePattern> parse_quartet_pattern(std::string_view s);

}  // namespace sigma3

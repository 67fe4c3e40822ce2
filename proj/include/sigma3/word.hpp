#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigma3 {

/// Syntax error in one of the line-oriented input formats.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Factor {
  std::string gen;
  std::int64_t exp = 1;
  bool operator==(const Factor&) const = default;
};

/// A word in named generators. Adjacent factors with the same generator are
/// fused on construction, so the stored form is freely reduced.
class Word {
 public:
  Word() = default;
  static Word generator(std::string name, std::int64_t exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }

  void append(const Factor& f);
  Word& operator*=(const Word& other);
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  Word inverse() const;
  Word pow(std::int64_t k) const;
  /// [a,b] = a^-1 b^-1 a b
  static Word comm(const Word& a, const Word& b);

  bool operator==(const Word&) const = default;

 private:
  std::vector<Factor> factors_;
};

std::string format_word(const Word& w);

struct FpPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int generator_index(std::string_view name) const;
  bool operator==(const FpPresentation&) const = default;
};

/// Parses the `.fpg` format:
///   gens x,y;
///   abbrev s2=[y,x], s3=[s2,x];      (or `abbrev standard;`)
///   rel x^{3^2}, y^3=s3*s4^2, [x^3,y]=s4*t4;
FpPresentation parse_fp(std::string_view text);
std::string format_fp(const FpPresentation& fp);

}  // namespace sigma3

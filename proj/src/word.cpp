#include "sigma3/word.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace sigma3 {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Word Word::generator(std::string name, std::int64_t exp) {
  Word w;
  w.append({std::move(name), exp});
  return w;
}

void Word::append(const Factor& f) {
  if (f.exp == 0) return;
  if (!factors_.empty() && factors_.back().gen == f.gen) {
    factors_.back().exp += f.exp;
    if (factors_.back().exp == 0) factors_.pop_back();
    return;
  }
  factors_.push_back(f);
}

Word& Word::operator*=(const Word& other) {
  for (const auto& f : other.factors_) append(f);
  return *this;
}

Word Word::inverse() const {
  Word w;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) w.append({it->gen, -it->exp});
  return w;
}

Word Word::pow(std::int64_t k) const {
  if (factors_.size() == 1) return generator(factors_[0].gen, factors_[0].exp * k);
  Word base = k < 0 ? inverse() : *this;
  if (k < 0) k = -k;
  Word result;
  for (std::int64_t i = 0; i < k; ++i) result *= base;
  return result;
}

Word Word::comm(const Word& a, const Word& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::string format_word(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const auto& f : w.factors()) {
    if (!out.empty()) out += '*';
    out += f.gen;
    if (f.exp != 1) out += "^" + std::to_string(f.exp);
  }
  return out;
}

int FpPresentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

struct Token {
  enum Kind { name, integer, punct, end } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip();
    Token t{Token::end, "", line_, col_};
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::name;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        t.text += take();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::integer;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        t.text += take();
    } else {
      t.kind = Token::punct;
      t.text = std::string(1, take());
    }
    return t;
  }

 private:
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class FpParser {
 public:
  explicit FpParser(std::string_view text) : lex_(text) { advance(); }

  FpPresentation parse() {
    FpPresentation fp;
    while (cur_.kind != Token::end) {
      if (cur_.kind != Token::name) fail("expected 'gens', 'abbrev' or 'rel'");
      if (cur_.text == "gens") {
        advance();
        for (;;) {
          if (cur_.kind != Token::name) fail("expected generator name");
          if (fp.generator_index(cur_.text) >= 0) fail("duplicate generator " + cur_.text);
          fp.generators.push_back(cur_.text);
          advance();
          if (!accept(",")) break;
        }
        gens_ = &fp.generators;
        expect(";");
      } else if (cur_.text == "abbrev") {
        advance();
        if (cur_.kind == Token::name && cur_.text == "standard") {
          advance();
          add_standard_abbreviations();
        } else {
          for (;;) {
            if (cur_.kind != Token::name) fail("expected abbreviation name");
            std::string name = cur_.text;
            advance();
            expect("=");
            abbrevs_[name] = word();
            if (!accept(",")) break;
          }
        }
        expect(";");
      } else if (cur_.text == "rel") {
        advance();
        for (;;) {
          Word lhs = word();
          if (accept("=")) lhs *= word().inverse();
          fp.relators.push_back(std::move(lhs));
          if (!accept(",")) break;
        }
        expect(";");
      } else {
        fail("unknown statement '" + cur_.text + "'");
      }
    }
    return fp;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.col); }
  void advance() { cur_ = lex_.next(); }
  bool accept(const char* p) {
    if (cur_.kind == Token::punct && cur_.text == p) {
      advance();
      return true;
    }
    return false;
  }
  void expect(const char* p) {
    if (!accept(p)) fail(std::string("expected '") + p + "'");
  }

  void add_standard_abbreviations() {
    static const char* defs[][3] = {{"s2", "y", "x"},  {"s3", "s2", "x"}, {"t3", "s2", "y"},
                                    {"s4", "s3", "x"}, {"t4", "t3", "y"}, {"s5", "s4", "x"},
                                    {"t5", "t4", "y"}};
    for (auto& d : defs) abbrevs_[d[0]] = Word::comm(lookup(d[1]), lookup(d[2]));
  }

  Word lookup(const std::string& name) const {
    if (auto it = abbrevs_.find(name); it != abbrevs_.end()) return it->second;
    if (gens_ != nullptr)
      for (const auto& g : *gens_)
        if (g == name) return Word::generator(name);
    throw ParseError("undeclared generator " + name, cur_.line, cur_.col);
  }

  Word word() {
    if (cur_.kind == Token::integer && cur_.text == "1") {
      advance();
      return {};
    }
    Word w = factor();
    while (accept("*")) w *= factor();
    return w;
  }

  Word factor() {
    Word base;
    if (cur_.kind == Token::name) {
      Token t = cur_;
      if (auto it = abbrevs_.find(t.text); it != abbrevs_.end()) {
        base = it->second;
      } else {
        bool known = false;
        if (gens_ != nullptr)
          for (const auto& g : *gens_) known = known || g == t.text;
        if (!known) throw ParseError("undeclared generator " + t.text, t.line, t.col);
        base = Word::generator(t.text);
      }
      advance();
    } else if (accept("[")) {
      base = word();
      expect(",");
      base = Word::comm(base, word());
      while (accept(",")) base = Word::comm(base, word());
      expect("]");
    } else if (accept("(")) {
      base = word();
      expect(")");
    } else {
      fail("expected generator, '[' or '('");
    }
    if (accept("^")) base = base.pow(exponent());
    return base;
  }

  std::int64_t integer() {
    bool neg = accept("-");
    if (cur_.kind != Token::integer) fail("expected integer");
    std::int64_t v = std::stoll(cur_.text);
    advance();
    return neg ? -v : v;
  }

  std::int64_t exponent() {
    if (accept("{")) {
      bool neg = accept("-");
      std::int64_t base = integer();
      std::int64_t v = base;
      if (accept("^")) {
        std::int64_t e = integer();
        if (e < 0) fail("negative exponent in power expression");
        v = 1;
        for (std::int64_t i = 0; i < e; ++i) v *= base;
      }
      expect("}");
      return neg ? -v : v;
    }
    return integer();
  }

  Lexer lex_;
  Token cur_{};
  const std::vector<std::string>* gens_ = nullptr;
  std::map<std::string, Word> abbrevs_;
};

}  // namespace

FpPresentation parse_fp(std::string_view text) { return FpParser(text).parse(); }

std::string format_fp(const FpPresentation& fp) {
  std::ostringstream out;
  out << "gens ";
  for (std::size_t i = 0; i < fp.generators.size(); ++i) out << (i ? "," : "") << fp.generators[i];
  out << ";\n";
  if (!fp.relators.empty()) {
    out << "rel ";
    for (std::size_t i = 0; i < fp.relators.size(); ++i)
      out << (i ? ",\n    " : "") << format_word(fp.relators[i]);
    out << ";\n";
  }
  return out.str();
}

}  // namespace sigma3

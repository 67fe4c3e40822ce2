#include "sigma3/pc_presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sigma3/word.hpp"

namespace sigma3 {

int PcPresentation::add_generator(std::string name, int weight, Definition def) {
  int n = size();
  names_.push_back(std::move(name));
  weights_.push_back(weight);
  defs_.push_back(def);
  powers_.emplace_back();
  comms_.emplace_back(static_cast<std::size_t>(n));
  return n;
}

void PcPresentation::set_power(int i, PcWord w) { powers_.at(i) = std::move(w); }

void PcPresentation::set_comm(int j, int i, PcWord w) {
  if (i >= j) throw std::invalid_argument("set_comm requires j > i");
  comms_.at(j).at(i) = std::move(w);
}

int PcPresentation::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

int PcPresentation::p_class() const {
  return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

int PcPresentation::generator_rank() const {
  return static_cast<int>(std::count(weights_.begin(), weights_.end(), 1));
}

std::pair<int, int> PcPresentation::layer(int w) const {
  int lo = 0;
  while (lo < size() && weights_[lo] < w) ++lo;
  int hi = lo;
  while (hi < size() && weights_[hi] == w) ++hi;
  return {lo, hi};
}

namespace {

void check_word(const PcPresentation& pc, const PcWord& w, int after, const std::string& what) {
  int prev = after;
  for (auto [g, e] : w) {
    if (g <= prev || g >= pc.size())
      throw std::invalid_argument(what + ": right-hand side is not a normal word in later generators");
    if (e <= 0 || e >= pc.prime()) throw std::invalid_argument(what + ": exponent out of range");
    prev = g;
  }
}

}  // namespace

void PcPresentation::validate() const {
  for (int i = 0; i < size(); ++i) {
    if (weights_[i] < 1) throw std::invalid_argument("weights must be positive");
    if (i > 0 && weights_[i] < weights_[i - 1])
      throw std::invalid_argument("weights must be nondecreasing");
    check_word(*this, powers_[i], i, "pow " + names_[i]);
    for (int k = 0; k < i; ++k) check_word(*this, comms_[i][k], i, "comm " + names_[i] + " " + names_[k]);
    const Definition& d = defs_[i];
    if (weights_[i] == 1 && d.kind != Definition::Kind::none)
      throw std::invalid_argument("weight-1 generator " + names_[i] + " carries a definition");
    if (d.kind == Definition::Kind::power && !(d.j >= 0 && d.j < i))
      throw std::invalid_argument("bad power definition for " + names_[i]);
    if (d.kind == Definition::Kind::commutator && !(d.i >= 0 && d.i < d.j && d.j < i))
      throw std::invalid_argument("bad commutator definition for " + names_[i]);
  }
}

bool PcPresentation::is_labelled() const {
  // the defining relation reads lhs = w * g_i with w over generators before g_i
  auto defines = [&](const PcWord& rhs, int i) {
    if (rhs.empty() || rhs.back() != std::pair<int, int>{i, 1}) return false;
    return rhs.size() == 1 || rhs[rhs.size() - 2].first < i;
  };
  for (int i = 0; i < size(); ++i) {
    const Definition& d = defs_[i];
    if (weights_[i] == 1) {
      if (d.kind != Definition::Kind::none) return false;
      continue;
    }
    if (d.kind == Definition::Kind::power) {
      if (weights_[d.j] != weights_[i] - 1 || !defines(powers_[d.j], i)) return false;
    } else if (d.kind == Definition::Kind::commutator) {
      if (weights_[d.i] != 1 || weights_[d.j] != weights_[i] - 1 || !defines(comms_[d.j][d.i], i))
        return false;
    } else {
      return false;
    }
  }
  return true;
}

PcPresentation truncate(const PcPresentation& pc, int max_weight) {
  PcPresentation out(pc.prime());
  int n = 0;
  while (n < pc.size() && pc.weight(n) <= max_weight) ++n;
  auto cut = [n](const PcWord& w) {
    PcWord r;
    for (auto f : w)
      if (f.first < n) r.push_back(f);
    return r;
  };
  for (int i = 0; i < n; ++i) out.add_generator(pc.name(i), pc.weight(i), pc.definition(i));
  for (int i = 0; i < n; ++i) {
    out.set_power(i, cut(pc.power(i)));
    for (int k = 0; k < i; ++k) out.set_comm(i, k, cut(pc.comm(i, k)));
  }
  return out;
}

std::string format_pc_word(const PcPresentation&, const PcWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto [g, e] : w) {
    if (!out.empty()) out += '*';
    out += "g" + std::to_string(g + 1);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string format_pcp(const PcPresentation& pc) {
  std::ostringstream out;
  out << "pc p=" << pc.prime() << " n=" << pc.size() << "\n";
  for (int i = 0; i < pc.size(); ++i) {
    out << "g" << i + 1 << " name=" << pc.name(i) << " w=" << pc.weight(i) << " def=";
    const Definition& d = pc.definition(i);
    switch (d.kind) {
      case Definition::Kind::none: out << "none"; break;
      case Definition::Kind::power: out << "p:" << d.j + 1; break;
      case Definition::Kind::commutator: out << "c:" << d.j + 1 << "," << d.i + 1; break;
    }
    out << "\n";
  }
  for (int i = 0; i < pc.size(); ++i)
    if (!pc.power(i).empty()) out << "pow g" << i + 1 << " = " << format_pc_word(pc, pc.power(i)) << "\n";
  for (int j = 0; j < pc.size(); ++j)
    for (int i = 0; i < j; ++i)
      if (!pc.comm(j, i).empty())
        out << "comm g" << j + 1 << " g" << i + 1 << " = " << format_pc_word(pc, pc.comm(j, i)) << "\n";
  return out.str();
}

namespace {

struct LineReader {
  int line = 0;
  [[noreturn]] void fail(const std::string& msg, int col = 1) const { throw ParseError(msg, line, col); }
};

int parse_gen_ref(const LineReader& lr, const std::string& tok, int n) {
  if (tok.size() < 2 || tok[0] != 'g') lr.fail("expected generator reference g<i>, got '" + tok + "'");
  int idx = 0;
  try {
    idx = std::stoi(tok.substr(1));
  } catch (const std::exception&) {
    lr.fail("bad generator reference '" + tok + "'");
  }
  if (idx < 1 || idx > n) lr.fail("generator index out of range in '" + tok + "'");
  return idx - 1;
}

PcWord parse_nf_word(const LineReader& lr, const std::string& text, int n) {
  PcWord w;
  if (text == "1") return w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    std::string f = text.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
    int e = 1;
    if (auto caret = f.find('^'); caret != std::string::npos) {
      try {
        e = std::stoi(f.substr(caret + 1));
      } catch (const std::exception&) {
        lr.fail("bad exponent in '" + f + "'");
      }
      f = f.substr(0, caret);
    }
    w.emplace_back(parse_gen_ref(lr, f, n), e);
    if (star == std::string::npos) break;
    pos = star + 1;
  }
  return w;
}

std::string field(const LineReader& lr, const std::string& tok, const std::string& key) {
  if (tok.rfind(key + "=", 0) != 0) lr.fail("expected " + key + "=...");
  return tok.substr(key.size() + 1);
}

}  // namespace

PcPresentation parse_pcp(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  LineReader lr;
  PcPresentation pc;
  int n = -1;
  int declared = 0;
  while (std::getline(in, raw)) {
    ++lr.line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "pc") {
      if (n >= 0 || toks.size() != 3) lr.fail("malformed header");
      int p = std::stoi(field(lr, toks[1], "p"));
      n = std::stoi(field(lr, toks[2], "n"));
      if (p < 2 || n < 0) lr.fail("bad header values");
      pc = PcPresentation(p);
      continue;
    }
    if (n < 0) lr.fail("missing 'pc p=<prime> n=<count>' header");
    if (toks[0] == "pow") {
      // pow g<i> = <word>
      if (toks.size() != 4 || toks[2] != "=") lr.fail("expected 'pow g<i> = <word>'");
      if (declared != n) lr.fail("relations before all generators are declared");
      int i = parse_gen_ref(lr, toks[1], n);
      pc.set_power(i, parse_nf_word(lr, toks[3], n));
    } else if (toks[0] == "comm") {
      if (toks.size() != 5 || toks[3] != "=") lr.fail("expected 'comm g<j> g<i> = <word>'");
      if (declared != n) lr.fail("relations before all generators are declared");
      int j = parse_gen_ref(lr, toks[1], n);
      int i = parse_gen_ref(lr, toks[2], n);
      if (j <= i) lr.fail("commutator relations are written [g_j, g_i] with j > i");
      pc.set_comm(j, i, parse_nf_word(lr, toks[4], n));
    } else if (toks[0].size() > 1 && toks[0][0] == 'g') {
      int i = parse_gen_ref(lr, toks[0], n);
      if (i != declared) lr.fail("generators must be declared in order");
      if (toks.size() != 4) lr.fail("expected 'g<i> name=<s> w=<weight> def=<...>'");
      std::string name = field(lr, toks[1], "name");
      int w = std::stoi(field(lr, toks[2], "w"));
      std::string d = field(lr, toks[3], "def");
      Definition def;
      if (d == "none") {
      } else if (d.rfind("p:", 0) == 0) {
        def = Definition::power(std::stoi(d.substr(2)) - 1);
      } else if (d.rfind("c:", 0) == 0) {
        auto comma = d.find(',');
        if (comma == std::string::npos) lr.fail("expected def=c:j,k");
        def = Definition::commutator(std::stoi(d.substr(2, comma - 2)) - 1, std::stoi(d.substr(comma + 1)) - 1);
      } else {
        lr.fail("unknown definition tag '" + d + "'");
      }
      pc.add_generator(name, w, def);
      ++declared;
    } else {
      lr.fail("unrecognized line");
    }
  }
  if (n < 0) throw ParseError("empty presentation", lr.line, 1);
  if (declared != n) throw ParseError("declared generator count does not match header", lr.line, 1);
  try {
    pc.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), lr.line, 1);
  }
  return pc;
}

}  // namespace sigma3

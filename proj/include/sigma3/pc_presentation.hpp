#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigma3 {

/// Normal-form word over pc generators: (index, exponent in [1,p)) pairs with
/// strictly increasing indices. The empty word is the identity.
using PcWord = std::vector<std::pair<int, int>>;

/// How a generator of weight >= 2 arises from earlier ones.
struct Definition {
  enum class Kind { none, power, commutator };
  Kind kind = Kind::none;
  int j = -1;  // g = g_j^p, or g = [g_j, g_i]
  int i = -1;

  static Definition power(int j) { return {Kind::power, j, -1}; }
  static Definition commutator(int j, int i) { return {Kind::commutator, j, i}; }
  bool operator==(const Definition&) const = default;
};

/// Weighted power-commutator presentation over GF(p):
///   g_i^p = powers[i],  [g_j, g_i] = comm(j, i) for j > i,
/// every right-hand side a normal word in generators later than the left-hand
/// side's largest index. Identity right-hand sides are stored as empty words.
class PcPresentation {
 public:
  PcPresentation() = default;
  explicit PcPresentation(int p) : p_(p) {}

  int prime() const { return p_; }
  int size() const { return static_cast<int>(names_.size()); }

  int add_generator(std::string name, int weight, Definition def = {});

  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  int weight(int i) const { return weights_[i]; }
  const Definition& definition(int i) const { return defs_[i]; }
  void set_weight(int i, int w) { weights_[i] = w; }
  void set_definition(int i, Definition d) { defs_[i] = d; }
  void set_name(int i, std::string name) { names_[i] = std::move(name); }

  const PcWord& power(int i) const { return powers_[i]; }
  const PcWord& comm(int j, int i) const { return comms_[j][i]; }
  void set_power(int i, PcWord w);
  void set_comm(int j, int i, PcWord w);

  int index_of(std::string_view name) const;
  int p_class() const;
  int generator_rank() const;  // number of weight-1 generators
  /// Generators of weight exactly w, as a half-open index range.
  std::pair<int, int> layer(int w) const;

  /// Triangularity, exponent ranges and nondecreasing weights. Throws on failure.
  void validate() const;
  /// True when every generator g of weight w >= 2 carries a definition of the
  /// usual shape (power of a weight w-1 generator, or commutator of a weight
  /// w-1 generator with a weight-1 generator) whose relation reads
  /// lhs = u * g with u a word in generators before g.
  bool is_labelled() const;

  bool operator==(const PcPresentation&) const = default;

 private:
  int p_ = 3;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<Definition> defs_;
  std::vector<PcWord> powers_;
  std::vector<std::vector<PcWord>> comms_;  // comms_[j][i], i < j
};

/// Drops every generator of weight > max_weight (a quotient when the
/// presentation is weighted).
PcPresentation truncate(const PcPresentation& pc, int max_weight);

/// `.pcp` text format.
PcPresentation parse_pcp(std::string_view text);
std::string format_pcp(const PcPresentation& pc);
std::string format_pc_word(const PcPresentation& pc, const PcWord& w);

}  // namespace sigma3

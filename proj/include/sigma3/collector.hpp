#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "sigma3/pc_presentation.hpp"
#include "sigma3/word.hpp"

namespace sigma3 {

/// Group element as its normal-form exponent vector g_1^{e_1} ... g_n^{e_n}.
struct Element {
  std::vector<int> exps;

  int size() const { return static_cast<int>(exps.size()); }
  bool is_identity() const;
  int operator[](int i) const { return exps[i]; }
  bool operator==(const Element&) const = default;
  auto operator<=>(const Element&) const = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Collection from the left over a fixed pc presentation. The presentation is
/// shared, so copies of a Collector are cheap.
class Collector {
 public:
  explicit Collector(PcPresentation pc);

  const PcPresentation& presentation() const { return data_->pc; }
  int size() const { return data_->n; }
  int prime() const { return data_->p; }

  Element identity() const { return Element{std::vector<int>(data_->n, 0)}; }
  Element generator(int i, int k = 1) const;
  Element from_word(const PcWord& w) const;
  PcWord to_word(const Element& e) const;

  /// e <- e * g_gen^times (times >= 0).
  void mul_gen(Element& e, int gen, int times = 1) const;
  void mul_into(Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element pow(const Element& a, std::int64_t k) const;
  /// a^-1 b^-1 a b
  Element comm(const Element& a, const Element& b) const;
  /// b^-1 a b
  Element conj(const Element& a, const Element& b) const;

  /// Normal form of a word in the presentation's generator names.
  Element normalize(const Word& w) const;

  /// Index of the first nonzero exponent, or size() for the identity.
  int depth(const Element& e) const;

 private:
  struct Data {
    PcPresentation pc;
    int n = 0;
    int p = 3;
    std::vector<std::vector<int>> power_words;             // expanded g_i^p
    std::vector<std::vector<std::vector<int>>> conj_words;  // g_j^{g_i}, j > i
    std::vector<std::vector<int>> single;                  // the word g_i
    std::vector<char> central;
    std::vector<std::vector<char>> commutes;  // commutes[j][i], i < j
  };
  struct Frame {
    const std::vector<int>* word;
    std::size_t pos;
    int reps;
  };
  void step(Element& e, int gen, std::vector<Frame>& stack) const;
  void run(Element& e, std::vector<Frame>& stack) const;

  std::shared_ptr<const Data> data_;
};

}  // namespace sigma3

#include "sigma3/consistency.hpp"

namespace sigma3 {

void for_each_overlap(const Collector& coll,
                      const std::function<void(const std::string&, const std::vector<int>&,
                                               const Element&, const Element&)>& visit,
                      int limit) {
  const int n = limit < 0 ? coll.size() : limit;
  const int p = coll.prime();
  std::vector<Element> gen(n);
  std::vector<Element> powers(n);
  for (int i = 0; i < n; ++i) {
    gen[i] = coll.generator(i);
    powers[i] = coll.from_word(coll.presentation().power(i));
  }
  // g_j g_i for j > i
  auto prod = [&](int j, int i) {
    Element e = gen[j];
    coll.mul_gen(e, i);
    return e;
  };

  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      Element kj = prod(k, j);
      for (int i = 0; i < j; ++i) {
        Element lhs = kj;
        coll.mul_gen(lhs, i);
        Element rhs = gen[k];
        coll.mul_into(rhs, prod(j, i));
        visit("kji", {k, j, i}, lhs, rhs);
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      Element lhs = powers[j];
      coll.mul_gen(lhs, i);
      Element rhs = coll.generator(j, p - 1);
      coll.mul_into(rhs, prod(j, i));
      visit("jjI", {j, i}, lhs, rhs);

      Element lhs2 = gen[j];
      coll.mul_into(lhs2, powers[i]);
      Element rhs2 = prod(j, i);
      coll.mul_gen(rhs2, i, p - 1);
      visit("jii", {j, i}, lhs2, rhs2);
    }
  }
  for (int i = 0; i < n; ++i) {
    Element lhs = powers[i];
    coll.mul_gen(lhs, i);
    Element rhs = gen[i];
    coll.mul_into(rhs, powers[i]);
    visit("iii", {i}, lhs, rhs);
  }
}

std::vector<ConsistencyViolation> check_consistency(const Collector& coll) {
  std::vector<ConsistencyViolation> out;
  for_each_overlap(coll, [&](const std::string& kind, const std::vector<int>& gens, const Element& lhs,
                             const Element& rhs) {
    if (lhs != rhs) out.push_back({kind, gens, lhs, rhs});
  });
  return out;
}

std::vector<ConsistencyViolation> check_consistency(const PcPresentation& pc) {
  return check_consistency(Collector(pc));
}

}  // namespace sigma3

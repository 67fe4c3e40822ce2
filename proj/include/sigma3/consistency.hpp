#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sigma3/collector.hpp"

namespace sigma3 {

struct ConsistencyViolation {
  std::string kind;       // "kji", "jjI", "jii", "iii"
  std::vector<int> gens;  // generator indices of the test word, as written
  Element lhs;
  Element rhs;
};

/// Runs every standard overlap test and reports the pair of normal forms each
/// produced:
///   (g_k g_j) g_i  vs g_k (g_j g_i)           k > j > i
///   (g_j^p) g_i    vs g_j^{p-1} (g_j g_i)      j > i
///   g_j (g_i^p)    vs (g_j g_i) g_i^{p-1}      j > i
///   (g_i^p) g_i    vs g_i (g_i^p)
/// Only generators with index < limit take part (limit < 0: all).
void for_each_overlap(const Collector& coll,
                      const std::function<void(const std::string&, const std::vector<int>&,
                                               const Element&, const Element&)>& visit,
                      int limit = -1);

std::vector<ConsistencyViolation> check_consistency(const PcPresentation& pc);

/// Consistency of an already-built collector (same tests).
std::vector<ConsistencyViolation> check_consistency(const Collector& coll);

}  // namespace sigma3

#pragma once

#include <vector>

#include "sigma3/collector.hpp"
#include "sigma3/gfp.hpp"
#include "sigma3/pc_presentation.hpp"
#include "sigma3/word.hpp"

namespace sigma3 {

/// A power relation g_j^p (i = -1) or a commutator relation [g_j, g_i].
struct RelationRef {
  int j = 0;
  int i = -1;
  bool is_power() const { return i < 0; }
  bool operator==(const RelationRef&) const = default;
};

/// p-covering group of a labelled presentation G (n generators, p-class c).
/// The cover has generators g_1..g_n followed by the multiplicator basis
/// t_1..t_m; every t_k is the tail of relation `defining[k]` and is given
/// weight c+1. Multiplicator vectors are coordinates in t_1..t_m.
struct CoverData {
  PcPresentation group;
  PcPresentation cover;
  int n = 0;
  int p_class = 0;
  int generator_rank = 0;      // d
  int multiplicator_rank = 0;  // m, equal to the relation rank r
  int nuclear_rank = 0;        // nu
  gfp::Mat nucleus;            // canonical basis of the nucleus inside GF(p)^m
  std::vector<RelationRef> defining;  // relation whose tail is t_k
  /// Every relation that is not a definition, with the value of its tail.
  std::vector<RelationRef> relations;
  std::vector<gfp::Vec> values;
  /// First multiplicator coordinate belonging to the nucleus: the nucleus is
  /// spanned by the coordinates nucleus_start..m-1.
  int nucleus_start = 0;

  int relation_rank() const { return multiplicator_rank; }
};

/// Requires a consistent labelled presentation (see PcPresentation::is_labelled).
CoverData p_cover(const PcPresentation& pc);

/// Multiplicator coordinates of a cover element lying in the multiplicator.
gfp::Vec multiplicator_coords(const CoverData& cd, const Element& e);

/// G* / U for a subspace U of the multiplicator (given by any basis). The new
/// generators are the multiplicator coordinates not among the echelon pivots
/// of U; `projection` (m x s) maps multiplicator coordinates to them.
struct CoverQuotient {
  PcPresentation pc;
  gfp::Mat projection;
  std::vector<int> kept;  // multiplicator coordinates kept as generators
};
CoverQuotient cover_quotient(const CoverData& cd, const gfp::Mat& u);

/// Image of a cover element in G*/U.
Element project_to_quotient(const CoverData& cd, const CoverQuotient& q, const Element& e);

struct PQuotientResult {
  PcPresentation pc;
  std::vector<Element> images;  // image of each fp generator
  int p_class = 0;
  bool stabilized = false;  // the next class would add nothing
  bool capped = false;      // stopped at the hard class cap before stabilizing
};

/// Largest quotient of exponent-p class <= class_bound (0: until it
/// stabilizes, bounded by hard_cap).
PQuotientResult p_quotient(const FpPresentation& fp, int p, int class_bound = 0, int hard_cap = 24);

/// The pc relations read as a finite presentation on the pc generator names.
FpPresentation pc_to_fp(const PcPresentation& pc);

/// Labelled presentation of the same group, with the images of the original
/// pc generators.
PQuotientResult standardize(const PcPresentation& pc, int hard_cap = 64);

}  // namespace sigma3

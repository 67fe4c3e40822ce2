#pragma once

#include <string>
#include <string_view>

#include "sigma3/pc_presentation.hpp"
#include "sigma3/word.hpp"

namespace sigma3 {

enum class Family { bifurcation, metabelian_chain };

struct FamilySpec {
  Family family = Family::bifurcation;
  int e = 2;
};

Family parse_family(std::string_view name);
std::string family_name(Family f);

/// Smallest admissible exponent for the family.
int family_min_e(Family f);

/// Expands the compact parametrized presentation into a weighted pc
/// presentation. Unlisted power and commutator relations are trivial. The
/// 3-power chain of x is materialized as x1..xe with x_{k+1} = x_k^3, and
/// generators are ordered by weight (x before s before t within a weight).
/// Throws std::runtime_error naming a violated overlap if the expansion is
/// inconsistent.
PcPresentation instantiate_family(const FamilySpec& spec);

/// Same expansion without the consistency check.
PcPresentation expand_family(const FamilySpec& spec);

/// The expanded relations written as a finite presentation on x, y (every pc
/// relation, with x_k = x^{3^{k-1}} and the commutator abbreviations inlined).
FpPresentation family_fp(const FamilySpec& spec);

}  // namespace sigma3

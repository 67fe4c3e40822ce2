#pragma once

#include <cstdint>
#include <optional>

#include "sigma3/word.hpp"

namespace sigma3 {

/// Order of the group given by a finite presentation, by Todd-Coxeter coset
/// enumeration over the trivial subgroup (HLT strategy). nullopt if more than
/// max_cosets cosets get defined.
std::optional<std::int64_t> coset_enumeration_order(const FpPresentation& fp, std::int64_t max_cosets = 2'000'000);

}  // namespace sigma3

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sigma3/automorphisms.hpp"
#include "sigma3/quotients.hpp"

namespace sigma3 {

/// A computation would exceed a configured bound.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix of the automorphism a of G on the multiplicator of its p-cover:
/// row k holds the coordinates of the image of t_k.
gfp::Mat multiplicator_action(const CoverData& cd, const Collector& cover, const Automorphism& a);

/// Automorphisms of H acting trivially on G = H/P_c(H): g_i -> g_i z for the
/// weight-1 generators, z running over the last layer. They generate the
/// kernel of Aut(H) -> Aut(G).
std::vector<Automorphism> central_automorphisms(const Collector& h);

/// Aut(H) for a labelled H whose first generators form a presentation of
/// G = H/P_c(H), from the subgroup of Aut(G) that lifts (the stabilizer of
/// the corresponding allowable subgroup).
AutGroup lift_automorphisms(const AutGroup& stabilizer, const Collector& h);

/// Aut(G) of a labelled consistent presentation, by lifting GL(d,p) along the
/// exponent-p central series.
AutGroup automorphism_group(const PcPresentation& pc);

/// Stabilizer in `group` of the allowable subgroup with annihilator w (rows,
/// multiplicator coordinates), together with the orbit length.
struct StabilizerResult {
  AutGroup stabilizer;
  std::int64_t orbit_size = 0;
};
StabilizerResult subspace_stabilizer(const AutGroup& group, const CoverData& cd, const gfp::Mat& w);

struct DescendantOptions {
  bool with_automorphisms = true;  // lift Aut to every child
  bool with_nuclear_rank = true;   // needed for the capable count
  std::int64_t max_allowable = 5'000'000;
};

struct Descendant {
  PcPresentation pc;
  std::int64_t orbit_size = 0;
  gfp::Mat allowable;  // canonical basis of the orbit representative U
  int nuclear_rank = -1;
  std::optional<AutGroup> aut;
};

struct DescendantReport {
  int step = 0;
  int nuclear_rank = 0;
  int multiplicator_rank = 0;
  std::int64_t allowable_count = 0;  // sum of the orbit sizes
  int total() const { return static_cast<int>(children.size()); }  // N
  int capable() const;                                              // C
  std::vector<Descendant> children;
};

/// Immediate descendants of step size s: one child per Aut(G)-orbit of
/// allowable subgroups of codimension s, ordered by the lexicographically
/// least echelon basis of U in the orbit. Throws std::invalid_argument if
/// s is out of range and ResourceCapExceeded past max_allowable subgroups.
DescendantReport immediate_descendants(const PcPresentation& pc, const AutGroup& aut, int s,
                                       const DescendantOptions& opt = {});

/// Number of allowable subgroups of codimension s: [nu s]_p * p^(s(m - nu)).
std::int64_t allowable_subgroup_count(int m, int nu, int s, int p);

/// <order,index>-#s;k-#s;k..., with [...]^r blocks expanded.
struct TreePath {
  std::int64_t order = 0;
  int index = 0;
  std::vector<std::pair<int, int>> steps;  // (step size, child index)
  bool operator==(const TreePath&) const = default;
};

/// Accepts the angle brackets as U+27E8/U+27E9 or '<' '>', and '-' or U+2212.
TreePath parse_tree_path(std::string_view text);
std::string format_tree_path(const TreePath& path);

/// Group behind a path. Vertices known to the registry are taken from it
/// (longest known prefix); remaining steps are followed in our own child
/// numbering, which is not the numbering of other software.
struct ResolvedPath {
  PcPresentation pc;
  TreePath known_prefix;
  int own_steps = 0;
};
ResolvedPath resolve_tree_path(const TreePath& path, const DescendantOptions& opt = {});

struct RegistryEntry {
  std::string path;
  std::string description;
  PcPresentation pc;
};
/// The built-in vertices: <9,2> and the vertices on the root paths of the
/// bifurcations of order 3^8 and 3^10.
const std::vector<RegistryEntry>& root_registry();

}  // namespace sigma3

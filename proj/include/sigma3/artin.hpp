#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sigma3/automorphisms.hpp"
#include "sigma3/structure.hpp"

namespace sigma3 {

/// Right transversal of a subgroup of small index: coset representatives
/// r_1 = 1, r_2, ... with G the disjoint union of the cosets H r_i. With an
/// rng, every representative other than 1 is multiplied on the left by a
/// random element of H.
std::vector<Element> right_transversal(const Collector& coll, const Subgroup& h, std::mt19937* rng = nullptr);

/// Artin transfer G/G' -> H/H'. Row i of `matrix` holds the coordinates of
/// the image of source.basis[i] in target.basis.
struct TransferHom {
  Subgroup subgroup;
  AbelianQuotient target;
  std::vector<std::vector<mpz_class>> matrix;
};

TransferHom artin_transfer(const Collector& coll, const AbelianQuotient& source, const Subgroup& h,
                           const std::vector<Element>& transversal);
TransferHom artin_transfer(const Collector& coll, const AbelianQuotient& source, const Subgroup& h);

/// Kernel of the transfer as coordinate vectors in source.basis (all elements).
std::vector<std::vector<int>> transfer_kernel(const AbelianQuotient& source, const TransferHom& t);

/// Punctured transfer kernel type. Labels 0..4; kBottom for a kernel outside
/// the table (trivial, or not inside the elementary subgroup).
struct KernelType {
  static constexpr int kBottom = 5;
  std::array<int, 4> labels{};

  std::string to_string() const;  // "(144;4)", ⊥ for kBottom
  static KernelType parse(std::string_view s);
  bool operator==(const KernelType&) const = default;
  auto operator<=>(const KernelType&) const = default;
};

/// Least form under the 36 relabelings: permutations of the first three
/// positions combined with permutations of the labels 1, 2, 3.
KernelType canonical(const KernelType& k);
/// Every relabeling (36 entries, possibly repeated).
std::vector<KernelType> relabelings(const KernelType& k);
/// Name of a canonical class among the types named in the literature on
/// groups with commutator quotient (3^e,3) (B.18, b.31, a.1, A.1, A.20, C.4,
/// D.5, D.6, D.10, D.11); empty if unnamed.
std::string kernel_type_name(const KernelType& k);
/// The table used by kernel_type_name, as (name, representative).
const std::vector<std::pair<std::string, KernelType>>& named_kernel_types();

/// Label of a kernel given as coordinate vectors in the basis (y, x) of
/// G/G' = (p^e) x (p), y of order p:
///   0: E = <x^(p^(e-1)), y>;  1: <y>;  2: <x^(p^(e-1)) y>;  3: <x^(2p^(e-1)) y>;  4: <x^(p^(e-1))>.
int kernel_label(const std::vector<std::vector<int>>& kernel, int e, int p);

/// kappa for G with G/G' of type (p^e, p), e >= 2; the transfers go to the
/// four maximal subgroups in the order of maximal_layers.
KernelType transfer_kernel_type(const Collector& coll, const MaximalLayers& ml);
KernelType transfer_kernel_type(const Collector& coll);

struct SecondLayer {
  AbelianType h;                   // H_i/H_i'
  std::vector<AbelianType> types;  // H_{i,j}/H_{i,j}', sorted
};

struct SigmaResult {
  bool sigma = false;
  std::optional<Automorphism> witness;  // acts as inversion on G/G'
};

struct ArtinPattern {
  KernelType kappa;
  KernelType kappa_canonical;
  std::string kappa_name;
  std::array<int, 4> rho{};
  std::vector<AbelianType> alpha1;
  AbelianType commutator_quotient;
  std::vector<SecondLayer> alpha2;  // filled for depth 2
};

ArtinPattern artin_pattern(const Collector& coll, int depth);

/// "[e1;((e+1)21;e2111,D1),...]"-style rendering of the second-order data
/// with each layer written as a sorted multiset.
std::string format_alpha2(const ArtinPattern& a);

/// An automorphism inducing inversion on G/G', searched in Aut(G) computed
/// by lifting (needs a labelled presentation).
SigmaResult sigma_test(const PcPresentation& pc);
SigmaResult sigma_test(const PcPresentation& pc, const AutGroup& aut);

/// Bracket scheme for the second-order invariants of one maximal subgroup:
/// the 13 = 1 + 3 + 9 (or 1 + 3 + 8 + 1) types made of a fixed entry, a
/// triplet repeating one alternative and the rest repeating one alternative
/// each.
struct BracketScheme {
  TypePattern h;
  TypePattern fixed;
  std::vector<TypePattern> triplet;
  std::vector<TypePattern> nonet;      // empty when octet/singlet are used
  std::vector<TypePattern> octet;
  std::vector<TypePattern> singlet;
};

bool match_bracket(const SecondLayer& layer, const BracketScheme& scheme, int e);
/// Punctured comparison: brackets 1..3 as a multiset against schemes 1..3,
/// bracket 4 against scheme 4.
bool match_alpha2(const std::vector<SecondLayer>& layers, const std::vector<BracketScheme>& schemes, int e);
/// The scheme for Schur sigma-groups of type B.18 with commutator quotient
/// (3^e,3), e >= 3, and logarithmic order 19+e.
std::vector<BracketScheme> b18_second_order_scheme();

}  // namespace sigma3

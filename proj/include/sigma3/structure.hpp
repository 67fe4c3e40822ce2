#pragma once

#include <string>
#include <vector>

#include "sigma3/abelian.hpp"
#include "sigma3/collector.hpp"

namespace sigma3 {

/// Subgroup stored by its canonical induced generating sequence: one element
/// per leading depth, leading exponent 1, zero exponents at the other leading
/// depths. Two subgroups are equal iff their sequences are.
struct Subgroup {
  std::vector<Element> gens;  // increasing depth
  std::vector<int> depths;

  int log_order() const { return static_cast<int>(gens.size()); }
  bool is_trivial() const { return gens.empty(); }
  bool operator==(const Subgroup&) const = default;
};

Subgroup whole_group(const Collector& coll);
Subgroup trivial_subgroup();

Subgroup closure(const Collector& coll, const std::vector<Element>& gens);
/// Smallest subgroup containing `gens` and normalized by `conjugators`.
Subgroup normal_closure(const Collector& coll, const std::vector<Element>& gens,
                        const std::vector<Element>& conjugators);
/// Normal closure in the whole group.
Subgroup normal_closure(const Collector& coll, const std::vector<Element>& gens);

bool contains(const Collector& coll, const Subgroup& h, const Element& g);
bool is_subgroup_of(const Collector& coll, const Subgroup& a, const Subgroup& b);
bool is_normalized_by(const Collector& coll, const Subgroup& h, const std::vector<Element>& xs);

/// [A, B] for subgroups normalized by `conjugators` (use the whole group's
/// generators for normal subgroups).
Subgroup commutator_subgroup(const Collector& coll, const Subgroup& a, const Subgroup& b,
                             const std::vector<Element>& conjugators);
Subgroup derived_subgroup(const Collector& coll, const Subgroup& h);
/// H' H^p
Subgroup frattini_subgroup(const Collector& coll, const Subgroup& h);

/// Coordinates of H/K for K normal in H: the factor generators and the
/// exponent vector of any element of H modulo K.
class FactorCoords {
 public:
  FactorCoords() = default;
  FactorCoords(const Collector& coll, const Subgroup& h, const Subgroup& k);
  const std::vector<Element>& factor_gens() const { return factor_; }
  int size() const { return static_cast<int>(factor_.size()); }
  /// Throws std::logic_error if g is not in H.
  std::vector<int> coords(const Element& g) const;
  /// prod f_i^{c_i}
  Element element(const std::vector<long>& c) const;

 private:
  const Collector* coll_ = nullptr;
  std::vector<Element> seq_;      // induced sequence of H: K's and factor elements
  std::vector<int> seq_factor_;   // index into factor_ or -1
  std::vector<Element> factor_;
};

/// H/K with K >= H' normal in H: its type and a basis of cyclic factors.
struct AbelianQuotient {
  AbelianType type;
  std::vector<int> logs;         // order p^logs[i] of basis[i], nondecreasing
  std::vector<Element> basis;    // representatives in H
  /// Coordinates of g in the basis (entry i modulo p^logs[i]).
  std::vector<mpz_class> coords(const Element& g) const;

  FactorCoords factor;
  IntMatrix to_basis;  // factor coordinates (row) times to_basis = basis coordinates
  int factor_prime = 3;
};

AbelianQuotient abelian_quotient(const Collector& coll, const Subgroup& h, const Subgroup& k);
AbelianType abelianization_type(const Collector& coll, const Subgroup& h);

enum class SeriesKind { lower_central, derived, exponent_p_central };

struct SeriesResult {
  std::vector<Subgroup> terms;          // from the group down to the trivial subgroup
  std::vector<AbelianType> factors;     // terms[i]/terms[i+1]
};

SeriesResult series(const Collector& coll, SeriesKind kind);

struct StructureSummary {
  int lo = 0;
  int nilpotency_class = 0;
  int derived_length = 0;
  int p_class = 0;
  std::vector<AbelianType> lower_central_factors;
  bool bcf = false;  // some gamma_j/gamma_{j+1} with j >= 3 is non-cyclic
};

StructureSummary summarize(const Collector& coll);

/// Presentation of G/N for a normal subgroup N. Generators are the pc
/// generators whose depths are not leading depths of N, with inherited
/// weights and names and no definitions.
PcPresentation quotient(const Collector& coll, const Subgroup& n);

/// Maximal subgroups of G with G/G' of type (p^e, p):
///   H1 = <x, G'>, H2 = <xy, G'>, H3 = <xy^2, G'>, H4 = <y, x^p, G'>
/// where x, y are basis representatives of G/G' of orders p^e and p. The
/// fourth is the punctured component (its image is the non-cyclic maximal
/// subgroup of G/G').
struct MaximalLayers {
  AbelianQuotient abelianization;  // G/G'
  Subgroup derived;
  Element x, y;
  int e = 0;
  std::vector<Subgroup> h;                     // four
  std::vector<AbelianType> h_ab;               // H_i/H_i'
  std::vector<std::vector<Subgroup>> second;   // maximal subgroups of H_i
  std::vector<std::vector<AbelianType>> second_ab;
};

/// Throws std::invalid_argument unless G/G' has type (p^e, p), e >= 2.
MaximalLayers maximal_layers(const Collector& coll, bool with_second_layer);

/// Every maximal subgroup of H (as closures over Phi(H)), in a fixed order.
std::vector<Subgroup> maximal_subgroups(const Collector& coll, const Subgroup& h);

/// Generators of G of weight 1 (they generate G).
std::vector<Element> weight_one_generators(const Collector& coll);

}  // namespace sigma3

#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "sigma3/collector.hpp"
#include "sigma3/gfp.hpp"

namespace sigma3 {

/// Endomorphism of a pc group stored as the images of all pc generators.
struct Automorphism {
  std::vector<Element> images;
  bool operator==(const Automorphism&) const = default;
};

Automorphism identity_automorphism(const Collector& coll);
Element apply(const Collector& coll, const Automorphism& a, const Element& g);
/// First a, then b (that is, b o a).
Automorphism compose(const Collector& coll, const Automorphism& a, const Automorphism& b);
Automorphism power(const Collector& coll, const Automorphism& a, std::int64_t k);

/// Images of the weight-1 generators extended to every generator through the
/// definitions; needs a labelled presentation.
Automorphism extend_by_definitions(const Collector& coll, const std::vector<Element>& weight_one_images);

/// Action on the Frattini quotient: row i holds the weight-1 exponents of the
/// image of the i-th weight-1 generator.
gfp::Mat top_matrix(const Collector& coll, const Automorphism& a);

/// Every pc relation is preserved and the induced map on G/Phi(G) is invertible.
bool is_automorphism(const Collector& coll, const Automorphism& a);

std::int64_t matrix_order(const gfp::Mat& m, int p);
Automorphism inverse(const Collector& coll, const Automorphism& a);

/// |GL(d, p)|
mpz_class gl_order(int d, int p);

/// Subgroup of Aut(G) for a labelled G, kept as its image in GL(d,p) (with
/// representatives) and a sifting table for the part acting trivially on
/// G/Phi(G). The table is graded by the exponent-p central layers, which makes
/// the order exact.
class AutGroup {
 public:
  explicit AutGroup(const Collector& coll);

  const Collector& collector() const { return coll_; }
  const std::vector<Automorphism>& generators() const { return gens_; }
  const std::vector<Automorphism>& inverse_generators() const { return gens_inv_; }
  mpz_class order() const;
  int top_order() const { return static_cast<int>(top_.size()); }

  bool contains(const Automorphism& a) const;
  /// Adds a if it is not already a member; returns whether the group grew.
  bool add(const Automorphism& a);

 private:
  struct Entry {
    gfp::Vec lead;
    int pivot;
    Automorphism a;
    Automorphism a_inv;
  };
  struct Lead {
    int layer;  // -1 for the identity
    gfp::Vec v;
  };

  Lead lead_of(const Automorphism& a) const;
  /// Reduces a (which must act trivially on G/Phi) by the table.
  Automorphism sift(Automorphism a, Lead& lead) const;
  void insert_kernel(const Automorphism& a);
  void rebuild_top();
  void add_schreier(int gen_index, int top_index);
  Automorphism kernel_inverse(const Automorphism& a) const;

  Collector coll_;
  int d_ = 0;
  int p_ = 3;
  std::vector<Automorphism> gens_, gens_inv_;
  std::vector<gfp::Mat> top_;
  std::vector<Automorphism> rep_, rep_inv_;
  std::vector<std::vector<Entry>> table_;  // by layer
};

/// Generators of GL(d,p) acting on an elementary abelian group of rank d.
std::vector<Automorphism> general_linear_generators(const Collector& elementary);

/// Every automorphism found by exhaustive search over images of the weight-1
/// generators. Only for |G| <= p^6.
std::vector<Automorphism> bruteforce_automorphisms(const Collector& coll);

}  // namespace sigma3

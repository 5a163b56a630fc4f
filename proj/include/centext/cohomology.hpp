#pragma once

#include <optional>
#include <vector>

#include "centext/twisted.hpp"

// Z^2(A,B), B^2(A,B) and the quotient H^2(A,B) with representative cocycles
// and a class projector, the subgroup of classes with bilinear
// representatives, induced maps on classes, and the desk-scale verification
// that pushing coefficients into a divisible overgroup bilinearizes every
// class and kills exactly the abelian ones.

namespace centext {

struct H2Options {
  Int max_base_order = 16;  // bound on |A|
};

/// H^2(A,B) computed per cyclic coordinate of B by raw linear algebra on the
/// dense table: tables are integer vectors indexed by non-identity pairs,
/// the cocycle identity is imposed as linear congruences (kernel = Z^2), the
/// coboundary image and the modulus lattice are divided out via Smith normal
/// form. Representative choices and the projector are deterministic.
class H2Description {
 public:
  const AbelianGroup& group_a() const { return a_; }
  const AbelianGroup& group_b() const { return b_; }

  /// One invariant factor (>= 2) per generator, concatenated across the
  /// coordinate blocks of B; the isomorphism type of H^2(A,B).
  const AbelianGroup& abstract() const { return abstract_; }
  Int order() const { return abstract_.order(); }

  const std::vector<Cocycle>& representatives() const { return representatives_; }

  /// Coordinates of the class of `c` in abstract(). Throws when `c` is not a
  /// valid cocycle over (A, B).
  GroupElement project(const Cocycle& c) const;

  /// The cocycle sum_t coords[t] * representative[t].
  Cocycle representative_of(const GroupElement& cls) const;

  /// Every element of H^2 in lexicographic order of abstract().
  std::vector<GroupElement> all_classes(const Int& cap = Int(1) << 16) const;

 private:
  friend H2Description compute_h2(const AbelianGroup&, const AbelianGroup&, const H2Options&);

  struct Block {
    Int modulus;                 // the cyclic B coordinate
    Index table_dim = 0;         // (|A|-1)^2 unknowns
    IntMat v, v_inv;             // SNF of the cocycle-identity rows
    std::vector<Int> steps;      // solution lattice = v * diag(steps)
    IntMat us, us_inv;           // SNF row transform of the quotient matrix
    std::vector<Int> invariants; // full diagonal, one per table dimension
    std::vector<Index> kept;     // positions with invariant > 1
  };
  AbelianGroup a_, b_;
  long n_ = 1;
  AbelianGroup abstract_;
  std::vector<Block> blocks_;
  std::vector<Cocycle> representatives_;
};

H2Description compute_h2(const AbelianGroup& a, const AbelianGroup& b, const H2Options& opts = {});

/// Subgroup of H^2 generated by the classes of bilinear cocycles.
class BilinearSubgroup {
 public:
  BilinearSubgroup(const H2Description& h2, std::vector<BilinearMap> basis,
                   std::vector<GroupElement> projections);

  const std::vector<GroupElement>& generator_classes() const { return projections_; }
  const AbelianGroup& subgroup_type() const { return type_; }
  Int order() const { return type_.order(); }

  /// Coefficients over the bilinear basis reproducing `cls`, if it lies in
  /// the subgroup.
  std::optional<std::vector<Int>> membership(const GroupElement& cls) const;

  /// A bilinear map whose class is `cls`, when one exists.
  std::optional<BilinearMap> representative_for(const GroupElement& cls) const;

 private:
  AbelianGroup a_, b_;
  AbelianGroup abstract_;
  std::vector<BilinearMap> basis_;
  std::vector<GroupElement> projections_;
  AbelianGroup type_;
};

BilinearSubgroup bilinear_subgroup(const H2Description& h2);

/// Matrix of the map on classes induced by phi : B -> B' on coefficients,
/// from h2 = H^2(A,B) to target = H^2(A,B'). Columns are images of h2's
/// generators in target coordinates. Verifies well-definedness.
IntMat induced_map(const IntMat& phi, const H2Description& h2, const H2Description& target);

/// Per-class verification that the embedding pipeline (a) produces a
/// bilinear lift cohomologous to the pushed-forward cocycle over the
/// divisible target, and (b) kills a class exactly when its extension group
/// is abelian, i.e. exactly on the symmetric (Ext) subgroup.
struct ClassVerdict {
  std::vector<Int> class_coords;
  bool abelian = false;
  bool pairing_zero = false;
  bool lift_null = false;        // bilinear lift cohomologous to zero over L
  bool witness_exact = false;    // d(section witness) == j o gamma - lift
  bool pass = false;
};
struct BilinearizationReport {
  std::vector<ClassVerdict> classes;
  bool ext_subgroup_matches = false;  // |zero-pairing classes| == |Ext(A,B)|
  bool pass = false;
};
BilinearizationReport bilinearization_report(const AbelianGroup& a, const AbelianGroup& b,
                                             const H2Options& opts = {});

}  // namespace centext

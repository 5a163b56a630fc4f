#pragma once

#include <optional>
#include <vector>

#include "centext/numeric.hpp"
#include "centext/snf.hpp"

// Finite abelian groups as lists of cyclic moduli, their elements as residue
// vectors, and homomorphisms as integer matrices acting on generators.

namespace centext {

struct GroupElement;

/// Finite abelian group presented as Z/d_1 + ... + Z/d_k. The trivial group
/// is the empty factor list. Moduli equal to 1 are legal on input and
/// removed by canonicalize().
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<Int> factors);

  const std::vector<Int>& factors() const { return factors_; }
  Index rank() const { return static_cast<Index>(factors_.size()); }
  Int order() const;
  Int exponent() const;

  /// True when d_1 | d_2 | ... | d_k with every d_i >= 2.
  bool is_canonical() const;

  bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  GroupElement zero() const;
  GroupElement make(std::vector<Int> coords) const;  // reduces mod factors
  GroupElement generator(Index i) const;

  /// Lexicographic enumeration: index 0 is zero, last coordinate varies
  /// fastest. index_of is its inverse.
  GroupElement element_at(const Int& index) const;
  Int index_of(const GroupElement& x) const;
  std::vector<GroupElement> elements(const Int& max_order = Int(1) << 20) const;

 private:
  std::vector<Int> factors_;
};

/// Element of a finite abelian group: one residue per cyclic factor, each
/// reduced into [0, d_i). Elements carry a copy of their parent group;
/// operations on elements of different groups throw rather than coerce.
struct GroupElement {
  std::vector<Int> coords;

  const AbelianGroup& parent() const { return parent_; }
  bool operator==(const GroupElement& o) const {
    return parent_ == o.parent_ && coords == o.coords;
  }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

 private:
  friend class AbelianGroup;
  AbelianGroup parent_;
};

GroupElement add(const GroupElement& x, const GroupElement& y);
GroupElement neg(const GroupElement& x);
GroupElement sub(const GroupElement& x, const GroupElement& y);
GroupElement scalar_mul(const Int& n, const GroupElement& x);

inline GroupElement operator+(const GroupElement& x, const GroupElement& y) { return add(x, y); }
inline GroupElement operator-(const GroupElement& x) { return neg(x); }
inline GroupElement operator-(const GroupElement& x, const GroupElement& y) { return sub(x, y); }
inline GroupElement operator*(const Int& n, const GroupElement& x) { return scalar_mul(n, x); }

/// Least n >= 1 with n*x = 0; lcm over coordinates of d_i / gcd(d_i, x_i).
Int element_order(const GroupElement& x);

/// Applies a generator matrix (columns = images of the domain's generators)
/// to an element; the result lives in `codomain`.
GroupElement apply_hom(const IntMat& hom, const GroupElement& x, const AbelianGroup& codomain);

/// True when column i of `hom` is annihilated by the i-th domain modulus in
/// the codomain, i.e. the matrix defines a homomorphism on residues.
bool hom_well_defined(const IntMat& hom, const AbelianGroup& domain, const AbelianGroup& codomain);

/// Invariant-factor form of the same isomorphism type, with coordinate maps
/// in both directions (to_canonical maps old coordinates to new ones).
struct Canonicalization {
  AbelianGroup group;
  IntMat to_canonical;    // group.rank() x old rank
  IntMat from_canonical;  // old rank x group.rank()

  GroupElement map(const GroupElement& x) const { return apply_hom(to_canonical, x, group); }
};
Canonicalization canonicalize(const AbelianGroup& g);

/// Presentation Z^n / columnLattice(relations) reduced to invariant factors,
/// keeping track of where the n original generators land.
struct PresentedGroup {
  AbelianGroup group;
  IntMat generator_images;  // group.rank() x n
};
PresentedGroup reduce_presentation(Index generators, const IntMat& relations);

/// Hom(A,B) as an abstract group plus generator matrices; factor (i,j) of
/// order gcd(d_i, e_j) corresponds to g_i |-> (e_j/gcd) * b_j.
struct HomSpace {
  AbelianGroup group;          // one factor per (i,j) with gcd > 1
  std::vector<IntMat> basis;   // same length and order as group.factors()
};
HomSpace hom_space(const AbelianGroup& a, const AbelianGroup& b);

/// A (x) A with the universal bilinear map on generator pairs. Factor for the
/// ordered pair (i,j) has order gcd(d_i, d_j); pairs with gcd 1 are dropped.
struct TensorSquare {
  AbelianGroup group;
  IntMat pair_images;  // group.rank() x (k*k); column i*k+j = image of g_i (x) g_j
};
TensorSquare tensor_square(const AbelianGroup& a);

/// Ext(A,B) = direct sum of Z/gcd(d_i, e_j) as an abstract group.
AbelianGroup ext_space(const AbelianGroup& a, const AbelianGroup& b);

/// Isomorphism type of the subgroup of `ambient` generated by the columns of
/// `generators` (coordinates in ambient residues).
AbelianGroup subgroup_invariants(const IntMat& generators, const AbelianGroup& ambient);

}  // namespace centext

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "centext/abelian.hpp"

// Factor sets as dense tables over A x A with values in B, coboundaries,
// the cohomologous-decision procedure, and bilinear maps on generators.
//
// Tables are indexed row-major by the lexicographic element order of A:
// entry (i, j) is the value at (element_at(i), element_at(j)).

namespace centext {

/// Hard bound on |A| for dense tables; identity validation is cubic in it.
inline constexpr long kDefaultTableAxisLimit = 4096;

class Cocycle {
 public:
  /// `table` has |A|^2 rows (row i*|A|+j is the value at (x_i, x_j)) and
  /// rank(B) columns; entries are reduced modulo B's factors.
  Cocycle(AbelianGroup a, AbelianGroup b, IntMat table,
          long axis_limit = kDefaultTableAxisLimit);
  static Cocycle zero(const AbelianGroup& a, const AbelianGroup& b);

  const AbelianGroup& group_a() const { return a_; }
  const AbelianGroup& group_b() const { return b_; }
  long order_a() const { return n_; }
  const IntMat& table() const { return table_; }

  GroupElement at(long i, long j) const;
  GroupElement at(const GroupElement& x, const GroupElement& y) const;

  bool operator==(const Cocycle& o) const;

  friend Cocycle operator+(const Cocycle& x, const Cocycle& y);
  friend Cocycle operator-(const Cocycle& x, const Cocycle& y);
  friend Cocycle operator*(const Int& n, const Cocycle& x);

 private:
  AbelianGroup a_, b_;
  long n_ = 1;  // |A|
  IntMat table_;
};

/// Normalization and cocycle-identity report. A failure carries the first
/// violating pair/triple in lexicographic order.
struct CocycleValidation {
  bool normalized = true;
  std::optional<std::pair<long, long>> normalization_violation;
  bool identity = true;
  std::optional<std::array<long, 3>> identity_violation;
  bool pass() const { return normalized && identity; }
};
CocycleValidation validate_cocycle(const Cocycle& c);

/// Factor set of 0 -> Z/m -> Z/nm -> Z/n -> 0 with the transversal
/// 0..n-1: value at (x, y) is floor((x+y)/n) mod m.
Cocycle carry_cocycle(const Int& n, const Int& m);

/// Map A -> B with value 0 at the identity; values indexed lexicographically.
class CochainMap {
 public:
  CochainMap(AbelianGroup a, AbelianGroup b, IntMat values);
  static CochainMap zero(const AbelianGroup& a, const AbelianGroup& b);

  const AbelianGroup& group_a() const { return a_; }
  const AbelianGroup& group_b() const { return b_; }
  const IntMat& values() const { return values_; }
  GroupElement at(long i) const;
  GroupElement at(const GroupElement& x) const;

  friend CochainMap operator+(const CochainMap& x, const CochainMap& y);
  friend CochainMap operator-(const CochainMap& x);

 private:
  AbelianGroup a_, b_;
  IntMat values_;  // |A| x rank(B)
};

/// (x, y) |-> h(x) + h(y) - h(xy). Always a valid cocycle.
Cocycle coboundary(const CochainMap& h);

/// Witness h with c1 - c2 = coboundary(h), or nullopt when the difference is
/// not a coboundary. The witness is canonical: the difference must be
/// symmetric (coboundaries are), and h is the solve_congruences solution of
/// the pair constraints over the |A|-1 unknowns h(x), x != 0.
std::optional<CochainMap> cohomologous(const Cocycle& c1, const Cocycle& c2);

/// Bilinear map A x A -> B stored by its values on generator pairs:
/// row i*rank(A)+j holds the coordinates of the value at (g_i, g_j).
class BilinearMap {
 public:
  BilinearMap() : entries_(0, 0) {}  // zero map over trivial groups
  BilinearMap(AbelianGroup a, AbelianGroup b, IntMat entries);
  static BilinearMap zero(const AbelianGroup& a, const AbelianGroup& b);

  const AbelianGroup& group_a() const { return a_; }
  const AbelianGroup& group_b() const { return b_; }
  const IntMat& entries() const { return entries_; }
  GroupElement at_generators(Index i, Index j) const;
  GroupElement at(const GroupElement& x, const GroupElement& y) const;

  /// Generator orders annihilate every entry (necessary for bilinearity).
  bool compatible() const;
  /// value(x, x) == 0 for every x in A, checked by full expansion.
  bool is_alternating() const;

  bool operator==(const BilinearMap& o) const;
  friend BilinearMap operator-(const BilinearMap& x, const BilinearMap& y);

  BilinearMap transpose() const;

 private:
  AbelianGroup a_, b_;
  IntMat entries_;  // (rank(A)^2) x rank(B)
};

/// Expands generator values to the full table. Throws when compatible()
/// fails; the result always validates.
Cocycle bilinear_to_cocycle(const BilinearMap& b);

/// Generator matrix of the table if it satisfies both distributive laws on
/// all pairs; otherwise nullopt plus the first violating triple
/// (x, x', y) for the left law or (x, y, y') for the right law.
struct BilinearCheck {
  std::optional<BilinearMap> map;
  bool left_law = true;               // failed law when map is empty
  std::array<long, 3> violation{0, 0, 0};
};
BilinearCheck is_bilinear(const Cocycle& c);

/// The alternating pairing (x, y) |-> c(x, y) - c(y, x), compressed to a
/// generator matrix after verifying bilinearity and alternation.
BilinearMap commutator_pairing(const Cocycle& c);

/// (psi* c)(x, y) = c(psi x, psi y) for psi : A' -> A given on generators.
Cocycle pullback(const AbelianGroup& a_prime, const IntMat& psi, const Cocycle& c);

/// (phi_* c)(x, y) = phi(c(x, y)) for phi : B -> B' given on generators.
Cocycle pushforward(const IntMat& phi, const AbelianGroup& b_prime, const Cocycle& c);
CochainMap pushforward(const IntMat& phi, const AbelianGroup& b_prime, const CochainMap& h);

/// Generators of Hom(A (x) A, B) realized as bilinear maps: one per tensor
/// factor pair and B factor with nontrivial gcd.
std::vector<BilinearMap> bilinear_basis(const AbelianGroup& a, const AbelianGroup& b);

/// Number of bilinear maps A x A -> B.
Int bilinear_count(const AbelianGroup& a, const AbelianGroup& b);

/// Enumerates every bilinear map (coefficients over the basis); guarded by
/// `cap` on the total count.
std::vector<BilinearMap> all_bilinear_maps(const AbelianGroup& a, const AbelianGroup& b,
                                           const Int& cap);

}  // namespace centext

#pragma once

#include <optional>
#include <vector>

#include "centext/qz.hpp"
#include "centext/twisted.hpp"

// The constructive embedding pipeline: factor the commutator pairing through
// a universal bilinear triple, push the fiber into a divisible target, and
// extend the fiber embedding generator by generator to a map on the whole
// extension group that turns (projection, map) into an injective
// homomorphism into a twisted product with bilinear cocycle.

namespace centext {

/// (C, i_B, beta): initial among factorizations of an alternating map as
/// beta(x,y) - beta(y,x) through an embedding of B. Presented by B's
/// generators plus one generator per pair (g_i, g_j), with the generator
/// orders and the matching relations, then reduced to invariant factors.
struct UniversalTriple {
  AbelianGroup a, b;
  BilinearMap alpha;        // alternating input, values in B
  AbelianGroup c;
  IntMat fiber_inclusion;   // i_B : rank(C) x rank(B)
  IntMat pair_images;       // beta on generator pairs: rank(C) x rank(A)^2

  GroupElement include_fiber(const GroupElement& b_elt) const;
  GroupElement beta_at(const GroupElement& x, const GroupElement& y) const;
};

UniversalTriple universal_triple(const AbelianGroup& a, const AbelianGroup& b,
                                 const BilinearMap& alpha);

/// A candidate factorization target: C' with a bilinear map and a fiber map
/// whose antisymmetrization must equal alpha through the fiber map.
struct TripleCandidate {
  AbelianGroup c_prime;
  BilinearMap beta_prime;   // A x A -> C'
  IntMat fiber_map;         // B -> C' on generators
};

struct UniversalFactorization {
  bool found = false;
  bool unique = false;
  IntMat psi;  // rank(C') x rank(C), when found
};

/// Solves for the unique psi : C -> C' with psi o i_B = fiber_map and
/// psi o beta = beta_prime. Throws invalid_argument when the candidate
/// diagram does not commute; reports found=false when no psi exists (which
/// would contradict universality).
UniversalFactorization verify_universal_property(const UniversalTriple& t,
                                                 const TripleCandidate& candidate);

/// The canonical candidate with C' = B and the fiber map the identity:
/// beta'(g_i, g_j) = alpha(g_i, g_j) for i < j and 0 otherwise. Solving for
/// psi against it witnesses injectivity of i_B independently of rank counts.
TripleCandidate section_candidate(const UniversalTriple& t);

/// L = (Q/Z)^rank(B) with the j-th generator of B landing on 1/e_j in
/// coordinate j. Depends only on B.
struct DivisibleTarget {
  Index rank = 0;
  RatMat fiber_embedding;  // rank x rank(B); column j = image of generator j

  RatVec embed_fiber(const GroupElement& b_elt) const;
};
DivisibleTarget divisible_target(const AbelianGroup& b);

/// chi : C -> L with chi o i_B = j, solved over denominators dividing
/// exp(C); unconstrained canonical generators land on 0 under the minimal
/// solution rule.
RatMat factor_map(const UniversalTriple& t, const DivisibleTarget& target);

/// Case split of the generator step: with no positive power of the new
/// generator in the current domain the seed is 0 (unreachable for finite
/// groups, kept for the general contract); otherwise the canonical n0-th
/// root of f(n0 g) - C(n0,2) * beta(g, g).
RatVec extension_seed(const std::optional<Int>& n0, const RatVec& f_at_power,
                      const RatVec& beta_gg);

/// Builds f on all of G: seeded by the fiber embedding on i(B), extended
/// over the lifted base generators in input order (then any remaining coset
/// representatives in lexicographic order), each step taking the canonical
/// root seed and closing under f(u v) = f(u) + f(v) + beta(u, v), asserting
/// seam agreement, torsion consistency and well-definedness along the way.
/// Requires the seed compatibility beta(x,y) - beta(y,x) = j(pairing(x,y));
/// a violation throws with the offending generator pair indices.
std::vector<RatVec> extend_twisted_map(const ExtensionGroup& g, const QZBilinear& lifted,
                                       const DivisibleTarget& target);

/// The full output of the pipeline, with every verified condition exposed.
class EmbeddingResult {
 public:
  const ExtensionGroup& source() const { return source_; }
  const UniversalTriple& triple() const { return triple_; }
  Index divisible_rank() const { return target_.rank; }
  const DivisibleTarget& target() const { return target_; }
  const RatMat& chi() const { return chi_; }
  const QZBilinear& lifted_bilinear() const { return lifted_bilinear_; }

  /// f, indexed by the source group's element index.
  const std::vector<RatVec>& map_values() const { return map_values_; }
  RatVec map_value(const ExtensionGroup::Element& g) const;

  /// phi(g) = (projection of g, f(g)), valued in the twisted product of L by A.
  std::pair<GroupElement, RatVec> phi(const ExtensionGroup::Element& g) const;

  /// h(x) = f(lift(x)), indexed by the base group's element index.
  const std::vector<RatVec>& section_witness() const { return section_witness_; }

  /// dh == (j o gamma) - lifted_bilinear as tables over A, exactly.
  bool witness_identity_holds() const;

  /// The lifted bilinear table is a coboundary over L (decided inside the
  /// finite denominator stand-in).
  bool lifted_bilinear_null() const;

  /// Isomorphism type of the subgroup of L generated by the image of f.
  AbelianGroup image_invariants() const;

  /// Multiplication in the target twisted product A x_beta L.
  std::pair<GroupElement, RatVec> target_mul(const std::pair<GroupElement, RatVec>& x,
                                             const std::pair<GroupElement, RatVec>& y) const;
  bool target_abelian() const;

 private:
  friend EmbeddingResult embed(const ExtensionGroup& g);
  explicit EmbeddingResult(ExtensionGroup source) : source_(std::move(source)) {}
  ExtensionGroup source_;
  UniversalTriple triple_;
  DivisibleTarget target_;
  RatMat chi_;
  QZBilinear lifted_bilinear_;
  std::vector<RatVec> map_values_;
  std::vector<RatVec> section_witness_;
};

/// Runs the whole pipeline and verifies on all pairs: the homomorphism
/// condition, injectivity, the restriction to the fiber, the power formula
/// up to exp(G), the commutator formula, and the section-witness identity.
/// Throws logic_error if any verification fails.
EmbeddingResult embed(const ExtensionGroup& g);

}  // namespace centext

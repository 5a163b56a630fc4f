#pragma once

#include <map>
#include <optional>
#include <vector>

#include "centext/cocycle.hpp"

// The group built from extension data (A, B, gamma): pairs (a, b) with
// (a,b)(a',b') = (a+a', b+b'+gamma(a,a')). When gamma is bilinear this is the
// twisted product of B by A.

namespace centext {

struct ExtensionOptions {
  Int max_group_order = 4096;  // construction-time verification bound
};

class ExtensionGroup {
 public:
  struct Element {
    GroupElement a;
    GroupElement b;
    bool operator==(const Element& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Element& o) const { return !(*this == o); }
  };

  /// Validates gamma and the construction invariants (associativity via the
  /// cocycle identity, identity/inverse laws, centrality of the fiber, the
  /// transversal relation) for groups within the configured bound.
  static ExtensionGroup build(const Cocycle& gamma, const ExtensionOptions& opts = {});

  const AbelianGroup& base() const { return gamma_.group_a(); }
  const AbelianGroup& fiber() const { return gamma_.group_b(); }
  const Cocycle& cocycle() const { return gamma_; }

  Int order() const { return base().order() * fiber().order(); }
  Element identity() const;
  Element make(GroupElement a, GroupElement b) const;
  Element mul(const Element& x, const Element& y) const;
  Element inv(const Element& x) const;

  Element include_fiber(const GroupElement& b) const;  // i : B -> G
  GroupElement project(const Element& g) const;        // pi : G -> A
  Element lift(const GroupElement& a) const;           // transversal: a |-> (a, 0)

  /// Repeated multiplication for any n (negative allowed); when gamma is
  /// bilinear the closed binomial form n*b + C(n,2)*gamma(a,a) is used and
  /// cross-checked against the partial-sum formula.
  Element power(const Element& g, const Int& n) const;
  Int element_order(const Element& g) const;

  /// inv(g) * inv(h) * g * h, computed directly.
  Element commutator(const Element& g, const Element& h) const;

  /// Lexicographic enumeration of all |G| elements (a-major).
  std::vector<Element> elements() const;
  Int index_of(const Element& g) const;

  bool is_abelian() const;

 private:
  explicit ExtensionGroup(Cocycle gamma) : gamma_(std::move(gamma)) {}
  Cocycle gamma_;
  std::optional<BilinearMap> bilinear_;  // set when gamma is bilinear
};

/// Isomorphism-type evidence for small groups: order, exponent, element-order
/// histogram, center size, derived-subgroup and abelianization invariants.
struct StructureReport {
  Int order;
  Int exponent;
  std::map<Int, Int> order_histogram;
  Int center_order;
  AbelianGroup derived_invariants;
  AbelianGroup abelianization_invariants;
  bool abelian = false;
  int nilpotency_class = 0;  // 0 for the trivial group, else 1 or 2
};
StructureReport structure_report(const ExtensionGroup& g);

struct TwistedClassOptions {
  Int max_candidates = 19683;  // bound on |Hom(A (x) A, B)|
  Int max_h2_order = 4096;     // capacity forwarded to the H^2 computation
};

/// A bilinear map whose cocycle class equals the class of g's cocycle, or
/// nullopt when the class has no bilinear representative. Decided through the
/// bilinear subgroup of H^2; the exhaustive search over bilinear matrices and
/// coboundary shifts is the test oracle for this routine.
std::optional<BilinearMap> is_twisted_product_class(const ExtensionGroup& g,
                                                    const TwistedClassOptions& opts = {});

}  // namespace centext

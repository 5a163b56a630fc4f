#include "centext/twisted.hpp"

#include "centext/cohomology.hpp"

namespace centext {

ExtensionGroup ExtensionGroup::build(const Cocycle& gamma, const ExtensionOptions& opts) {
  const AbelianGroup& a = gamma.group_a();
  const AbelianGroup& b = gamma.group_b();
  if (a.order() * b.order() > opts.max_group_order) {
    throw CapacityError("ExtensionGroup::build: group order exceeds bound");
  }
  CocycleValidation v = validate_cocycle(gamma);
  if (!v.pass()) {
    throw std::invalid_argument("ExtensionGroup::build: table is not a cocycle");
  }
  ExtensionGroup g(gamma);
  BilinearCheck bc = is_bilinear(gamma);
  if (bc.map) g.bilinear_ = *bc.map;

  // Associativity is the cocycle identity, already validated. Check the
  // remaining construction invariants directly.
  const long n = gamma.order_a();
  auto elems = a.elements();
  for (long x = 0; x < n; ++x) {
    Element lx = g.lift(elems[static_cast<size_t>(x)]);
    if (g.mul(lx, g.inv(lx)) != g.identity()) {
      throw std::logic_error("ExtensionGroup::build: inverse law failed");
    }
    for (long y = 0; y < n; ++y) {
      // Transversal relation: l(x) l(y) = l(xy) + i(gamma(x,y)).
      Element lhs = g.mul(lx, g.lift(elems[static_cast<size_t>(y)]));
      Element rhs = g.mul(g.lift(add(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])),
                          g.include_fiber(gamma.at(x, y)));
      if (lhs != rhs) throw std::logic_error("ExtensionGroup::build: transversal relation failed");
    }
  }
  return g;
}

ExtensionGroup::Element ExtensionGroup::identity() const {
  return Element{base().zero(), fiber().zero()};
}

ExtensionGroup::Element ExtensionGroup::make(GroupElement a, GroupElement b) const {
  if (a.parent() != base() || b.parent() != fiber()) {
    throw std::invalid_argument("ExtensionGroup::make: element of another group");
  }
  return Element{std::move(a), std::move(b)};
}

ExtensionGroup::Element ExtensionGroup::mul(const Element& x, const Element& y) const {
  return Element{add(x.a, y.a), add(add(x.b, y.b), gamma_.at(x.a, y.a))};
}

ExtensionGroup::Element ExtensionGroup::inv(const Element& x) const {
  GroupElement na = neg(x.a);
  return Element{na, neg(add(x.b, gamma_.at(x.a, na)))};
}

ExtensionGroup::Element ExtensionGroup::include_fiber(const GroupElement& b) const {
  return Element{base().zero(), b};
}

GroupElement ExtensionGroup::project(const Element& g) const { return g.a; }

ExtensionGroup::Element ExtensionGroup::lift(const GroupElement& a) const {
  return Element{a, fiber().zero()};
}

ExtensionGroup::Element ExtensionGroup::power(const Element& g, const Int& n) const {
  if (n < 0) return power(inv(g), -n);
  // Partial sums: (a,b)^n = (n a, n b + sum_{t=1}^{n-1} gamma(t a, a)).
  GroupElement fsum = fiber().zero();
  GroupElement ta = base().zero();
  for (Int t = 1; t < n; ++t) {
    ta = add(ta, g.a);
    fsum = add(fsum, gamma_.at(ta, g.a));
  }
  Element result{scalar_mul(n, g.a), add(scalar_mul(n, g.b), fsum)};
  if (bilinear_) {
    Element closed{scalar_mul(n, g.a),
                   add(scalar_mul(n, g.b), scalar_mul(binomial2(n), bilinear_->at(g.a, g.a)))};
    if (closed != result) {
      throw std::logic_error("ExtensionGroup::power: binomial form disagrees with partial sums");
    }
  }
  return result;
}

Int ExtensionGroup::element_order(const Element& g) const {
  // n must be a multiple of ord(a); then (a,b)^ord(a) lies in the fiber.
  Int r = centext::element_order(g.a);
  Element h = power(g, r);
  return r * centext::element_order(h.b);
}

ExtensionGroup::Element ExtensionGroup::commutator(const Element& g, const Element& h) const {
  return mul(mul(inv(g), inv(h)), mul(g, h));
}

std::vector<ExtensionGroup::Element> ExtensionGroup::elements() const {
  std::vector<Element> out;
  out.reserve(static_cast<size_t>(to_long(order(), "ExtensionGroup::elements")));
  for (const GroupElement& a : base().elements()) {
    for (const GroupElement& b : fiber().elements()) {
      out.push_back(Element{a, b});
    }
  }
  return out;
}

Int ExtensionGroup::index_of(const Element& g) const {
  return base().index_of(g.a) * fiber().order() + fiber().index_of(g.b);
}

bool ExtensionGroup::is_abelian() const {
  const long n = gamma_.order_a();
  for (long x = 0; x < n; ++x) {
    for (long y = x + 1; y < n; ++y) {
      if (gamma_.at(x, y) != gamma_.at(y, x)) return false;
    }
  }
  return true;
}

StructureReport structure_report(const ExtensionGroup& g) {
  StructureReport r;
  r.order = g.order();
  r.abelian = g.is_abelian();

  r.exponent = 1;
  for (const auto& x : g.elements()) {
    Int o = g.element_order(x);
    r.exponent = lcm(r.exponent, o);
    r.order_histogram[o] += 1;
  }

  // Center: (a, b) is central iff gamma(a, .) == gamma(., a) pointwise, so
  // count the radical of the pairing and multiply by |B|.
  const AbelianGroup& a = g.base();
  const long n = g.cocycle().order_a();
  long radical = 0;
  for (long x = 0; x < n; ++x) {
    bool central = true;
    for (long y = 0; y < n && central; ++y) {
      central = g.cocycle().at(x, y) == g.cocycle().at(y, x);
    }
    if (central) ++radical;
  }
  r.center_order = Int(radical) * g.fiber().order();

  // Derived subgroup: generated by the pairing values inside the fiber.
  BilinearMap pairing = commutator_pairing(g.cocycle());
  std::vector<GroupElement> commutators;
  for (const GroupElement& x : a.elements()) {
    for (const GroupElement& y : a.elements()) {
      commutators.push_back(pairing.at(x, y));
    }
  }
  IntMat gens(g.fiber().rank(), static_cast<Index>(commutators.size()));
  for (size_t c = 0; c < commutators.size(); ++c) {
    for (Index k = 0; k < g.fiber().rank(); ++k) {
      gens(k, static_cast<Index>(c)) = commutators[c].coords[static_cast<size_t>(k)];
    }
  }
  r.derived_invariants = subgroup_invariants(gens, g.fiber());

  // Abelianization: generators are the lifted base generators plus the fiber
  // generators; relations are the fiber moduli, the lifted power relations
  // d_i * l(g_i) = i(sum of carries), and the pairing values.
  const Index ka = a.rank(), kb = g.fiber().rank();
  std::vector<IntVec> relations;
  for (Index j = 0; j < kb; ++j) {
    IntVec rel = IntVec::Zero(ka + kb);
    rel(ka + j) = g.fiber().factors()[static_cast<size_t>(j)];
    relations.push_back(rel);
  }
  for (Index i = 0; i < ka; ++i) {
    auto lifted = g.lift(a.generator(i));
    auto pw = g.power(lifted, a.factors()[static_cast<size_t>(i)]);
    IntVec rel = IntVec::Zero(ka + kb);
    rel(i) = a.factors()[static_cast<size_t>(i)];
    for (Index j = 0; j < kb; ++j) rel(ka + j) = -pw.b.coords[static_cast<size_t>(j)];
    relations.push_back(rel);
  }
  for (Index i = 0; i < ka; ++i) {
    for (Index j = 0; j < ka; ++j) {
      GroupElement v = pairing.at_generators(i, j);
      IntVec rel = IntVec::Zero(ka + kb);
      for (Index t = 0; t < kb; ++t) rel(ka + t) = v.coords[static_cast<size_t>(t)];
      relations.push_back(rel);
    }
  }
  IntMat relmat(ka + kb, static_cast<Index>(relations.size()));
  for (size_t c = 0; c < relations.size(); ++c) relmat.col(static_cast<Index>(c)) = relations[c];
  r.abelianization_invariants = reduce_presentation(ka + kb, relmat).group;

  r.nilpotency_class = r.order == 1 ? 0 : (r.abelian ? 1 : 2);
  return r;
}

std::optional<BilinearMap> is_twisted_product_class(const ExtensionGroup& g,
                                                    const TwistedClassOptions& opts) {
  const AbelianGroup& a = g.base();
  const AbelianGroup& b = g.fiber();
  if (bilinear_count(a, b) > opts.max_candidates) {
    throw CapacityError("is_twisted_product_class: bilinear search space exceeds bound");
  }
  H2Options h2opts;
  h2opts.max_base_order = opts.max_h2_order;
  H2Description h2 = compute_h2(a, b, h2opts);
  BilinearSubgroup bil = bilinear_subgroup(h2);
  return bil.representative_for(h2.project(g.cocycle()));
}

}  // namespace centext

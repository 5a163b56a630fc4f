#include "doctest.h"

#include <random>
#include <set>

#include "centext/cohomology.hpp"
#include "centext/examples.hpp"
#include "centext/twisted.hpp"

using namespace centext;

namespace {

AbelianGroup zn(long n) { return AbelianGroup({Int(n)}); }

}  // namespace

TEST_CASE("zero cocycle builds the direct sum") {
  AbelianGroup a({Int(2), Int(3)}), b({Int(4)});
  ExtensionGroup g = ExtensionGroup::build(Cocycle::zero(a, b));
  StructureReport r = structure_report(g);
  CHECK(r.abelian);
  CHECK(r.order == 24);
  CHECK(r.abelianization_invariants == canonicalize(AbelianGroup({Int(2), Int(3), Int(4)})).group);
  CHECK(r.derived_invariants.order() == 1);
}

TEST_CASE("carry extension p=3 is cyclic of order 9") {
  ExtensionGroup g = ExtensionGroup::build(carry_example_cocycle(Int(3)));
  StructureReport r = structure_report(g);
  CHECK(r.order == 9);
  CHECK(r.abelian);
  CHECK(r.exponent == 9);
  CHECK(r.abelianization_invariants.factors() == std::vector<Int>{Int(9)});
  CHECK(r.order_histogram[Int(9)] == 6);  // phi(9) elements of full order
}

TEST_CASE("bilinear twist of Z/3 by Z/3 has exponent 3") {
  IntMat e(1, 1);
  e << 1;
  ExtensionGroup g =
      ExtensionGroup::build(bilinear_to_cocycle(BilinearMap(zn(3), zn(3), e)));
  for (const auto& x : g.elements()) {
    if (x != g.identity()) CHECK(g.element_order(x) == 3);
  }
}

TEST_CASE("invalid tables are rejected at construction") {
  IntMat table = IntMat::Zero(9, 1);
  table(1, 0) = 1;  // breaks normalization
  CHECK_THROWS_AS(ExtensionGroup::build(Cocycle(zn(3), zn(3), table)), std::invalid_argument);
}

TEST_CASE("group axioms hold exhaustively on small extensions") {
  std::vector<Cocycle> cocycles = {
      carry_example_cocycle(Int(2)),
      carry_example_cocycle(Int(3)),
      carry_cocycle(Int(4), Int(2)),
  };
  {
    AbelianGroup a({Int(2), Int(2)}), b = zn(2);
    IntMat e = IntMat::Zero(4, 1);
    e(1, 0) = 1;
    cocycles.push_back(bilinear_to_cocycle(BilinearMap(a, b, e)));
  }
  for (const Cocycle& c : cocycles) {
    ExtensionGroup g = ExtensionGroup::build(c);
    auto elems = g.elements();
    for (const auto& x : elems) {
      CHECK(g.mul(x, g.identity()) == x);
      CHECK(g.mul(g.identity(), x) == x);
      CHECK(g.mul(x, g.inv(x)) == g.identity());
      for (const auto& y : elems) {
        for (const auto& z : elems) {
          CHECK(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
        }
      }
    }
  }
}

TEST_CASE("transversal recovers the cocycle") {
  Cocycle c = class2_example_cocycle(Int(2));
  ExtensionGroup g = ExtensionGroup::build(c);
  auto elems = g.base().elements();
  for (const auto& x : elems) {
    for (const auto& y : elems) {
      auto lhs = g.mul(g.lift(x), g.lift(y));
      auto rhs = g.mul(g.lift(add(x, y)), g.include_fiber(c.at(x, y)));
      CHECK(lhs == rhs);
      CHECK(g.project(lhs) == add(x, y));
    }
  }
}

TEST_CASE("fiber is central and commutators land in it") {
  Cocycle c = class2_example_cocycle(Int(3));
  ExtensionGroup g = ExtensionGroup::build(c);
  for (const GroupElement& b : g.fiber().elements()) {
    auto ib = g.include_fiber(b);
    for (const GroupElement& a : g.base().elements()) {
      auto la = g.lift(a);
      CHECK(g.mul(ib, la) == g.mul(la, ib));
    }
  }
  auto elems = g.elements();
  for (size_t i = 0; i < elems.size(); i += 7) {
    for (size_t j = 0; j < elems.size(); j += 5) {
      auto comm = g.commutator(elems[i], elems[j]);
      CHECK(comm.a == g.base().zero());
      // Value formula on cocycle data.
      GroupElement expected = sub(c.at(elems[i].a, elems[j].a), c.at(elems[j].a, elems[i].a));
      CHECK(comm.b == expected);
    }
  }
}

TEST_CASE("power matches repeated multiplication and pinned values") {
  ExtensionGroup carry3 = ExtensionGroup::build(carry_example_cocycle(Int(3)));
  auto g10 = carry3.make(zn(3).make({Int(1)}), zn(3).make({Int(0)}));
  CHECK(carry3.power(g10, Int(0)) == carry3.identity());
  CHECK(carry3.power(g10, Int(3)) ==
        carry3.make(zn(3).make({Int(0)}), zn(3).make({Int(1)})));  // order-9 witness
  CHECK(carry3.element_order(g10) == 9);

  for (const auto& x : carry3.elements()) {
    auto acc = carry3.identity();
    for (long n = 0; n <= 9; ++n) {
      CHECK(carry3.power(x, Int(n)) == acc);
      acc = carry3.mul(acc, x);
    }
    CHECK(carry3.power(x, Int(-1)) == carry3.inv(x));
  }
}

TEST_CASE("every element of an odd bilinear twist has trivial p-th power") {
  for (long p : {3L, 5L}) {
    for (const BilinearMap& m : all_bilinear_maps(zn(p), zn(p), Int(100))) {
      ExtensionGroup g = ExtensionGroup::build(bilinear_to_cocycle(m));
      for (const auto& x : g.elements()) {
        CHECK(g.power(x, Int(p)) == g.identity());
      }
    }
  }
}

TEST_CASE("commutator basics") {
  Cocycle c = class2_example_cocycle(Int(3));
  ExtensionGroup g = ExtensionGroup::build(c);
  auto some = g.elements()[31];
  CHECK(g.commutator(some, some) == g.identity());

  // Symmetric cocycle: abelian, all commutators trivial.
  ExtensionGroup carry = ExtensionGroup::build(carry_example_cocycle(Int(3)));
  for (const auto& x : carry.elements()) {
    for (const auto& y : carry.elements()) {
      CHECK(carry.commutator(x, y) == carry.identity());
    }
  }

  // Heisenberg pair on (Z/3)^2.
  AbelianGroup a({Int(3), Int(3)});
  IntMat e = IntMat::Zero(4, 1);
  e(1, 0) = 1;
  ExtensionGroup h = ExtensionGroup::build(bilinear_to_cocycle(BilinearMap(a, zn(3), e)));
  auto l1 = h.lift(a.generator(0));
  auto l2 = h.lift(a.generator(1));
  CHECK(h.commutator(l1, l2) == h.include_fiber(zn(3).make({Int(1)})));
}

TEST_CASE("structure report of the class-2 example at p=3") {
  Cocycle c = class2_example_cocycle(Int(3));
  CHECK(validate_cocycle(c).pass());
  ExtensionGroup g = ExtensionGroup::build(c);
  StructureReport r = structure_report(g);
  CHECK(r.order == 81);
  CHECK(!r.abelian);
  CHECK(r.nilpotency_class == 2);
  CHECK(r.exponent == 9);
  CHECK(r.derived_invariants.factors() == std::vector<Int>{Int(3)});
  CHECK(r.center_order == 9);
  CHECK(r.abelianization_invariants == AbelianGroup({Int(3), Int(3), Int(3)}));
}

TEST_CASE("abelian iff symmetric iff zero pairing on small extensions") {
  std::mt19937 rng(4242);
  AbelianGroup a({Int(2), Int(4)}), b({Int(2)});
  for (const BilinearMap& m : all_bilinear_maps(a, b, Int(10000))) {
    ExtensionGroup g = ExtensionGroup::build(bilinear_to_cocycle(m));
    bool zero_pairing = commutator_pairing(g.cocycle()) == BilinearMap::zero(a, b);
    CHECK(g.is_abelian() == zero_pairing);
    bool commutes = true;
    for (const auto& x : g.elements()) {
      for (const auto& y : g.elements()) {
        commutes = commutes && g.mul(x, y) == g.mul(y, x);
      }
    }
    CHECK(commutes == g.is_abelian());
  }
}

TEST_CASE("Schreier correspondence: cohomologous cocycles give equivalent extensions") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<long> bit(0, 1);
  for (const auto& factors : {std::vector<Int>{Int(4)}, std::vector<Int>{Int(2), Int(2)}}) {
    AbelianGroup a(factors), b({Int(2)});
    const long n = to_long(a.order(), "test");
    for (int trial = 0; trial < 4; ++trial) {
      // gamma1 random valid, gamma2 = gamma1 + coboundary.
      IntMat shift = IntMat::Zero(Index(n), 1);
      for (Index r = 1; r < n; ++r) shift(r, 0) = bit(rng);
      auto basis = bilinear_basis(a, b);
      Cocycle g1 = bilinear_to_cocycle(basis[static_cast<size_t>(trial) % basis.size()]);
      Cocycle g2 = g1 + coboundary(CochainMap(a, b, shift));

      auto h = cohomologous(g1, g2);
      REQUIRE(h.has_value());
      ExtensionGroup e1 = ExtensionGroup::build(g1);
      ExtensionGroup e2 = ExtensionGroup::build(g2);
      // (a, v) |-> (a, v + h(a)) is an isomorphism commuting with inclusion
      // and projection.
      auto map = [&](const ExtensionGroup::Element& x) {
        return e2.make(x.a, add(x.b, h->at(x.a)));
      };
      std::set<std::pair<std::string, std::string>> image;
      for (const auto& x : e1.elements()) {
        for (const auto& y : e1.elements()) {
          CHECK(map(e1.mul(x, y)) == e2.mul(map(x), map(y)));
        }
        CHECK(e2.project(map(x)) == e1.project(x));
        std::string ka, kb;
        for (const Int& cc : map(x).a.coords) ka += cc.get_str() + ",";
        for (const Int& cc : map(x).b.coords) kb += cc.get_str() + ",";
        image.insert({ka, kb});
      }
      CHECK(Int(static_cast<long>(image.size())) == e1.order());
      for (const GroupElement& v : b.elements()) {
        CHECK(map(e1.include_fiber(v)) == e2.include_fiber(v));
      }
    }
  }
}

TEST_CASE("is_twisted_product_class: bilinear classes are recognized") {
  AbelianGroup a({Int(2), Int(2)}), b = zn(2);
  IntMat e = IntMat::Zero(4, 1);
  e(1, 0) = 1;
  BilinearMap m(a, b, e);
  ExtensionGroup g = ExtensionGroup::build(bilinear_to_cocycle(m));
  auto rep = is_twisted_product_class(g);
  REQUIRE(rep.has_value());
  // The returned bilinear map realizes the same class.
  CHECK(cohomologous(bilinear_to_cocycle(*rep), g.cocycle()).has_value());
}

TEST_CASE("is_twisted_product_class: carry class p=3 has no bilinear representative") {
  ExtensionGroup g = ExtensionGroup::build(carry_example_cocycle(Int(3)));
  CHECK(!is_twisted_product_class(g).has_value());
}

TEST_CASE("is_twisted_product_class agrees with the exhaustive search oracle") {
  // Oracle: search all bilinear maps for one cohomologous to gamma.
  auto oracle = [](const ExtensionGroup& g) -> bool {
    for (const BilinearMap& m : all_bilinear_maps(g.base(), g.fiber(), Int(100000))) {
      if (cohomologous(g.cocycle(), bilinear_to_cocycle(m)).has_value()) return true;
    }
    return false;
  };
  std::vector<Cocycle> cases = {
      carry_example_cocycle(Int(2)),  // bilinear at p = 2
      carry_example_cocycle(Int(3)),  // not bilinear at odd p
      carry_cocycle(Int(2), Int(4)),
      carry_cocycle(Int(4), Int(2)),
      Cocycle::zero(AbelianGroup({Int(2), Int(2)}), zn(2)),
  };
  {
    AbelianGroup a({Int(2), Int(2)});
    IntMat e = IntMat::Zero(4, 1);
    e(1, 0) = 1;
    cases.push_back(bilinear_to_cocycle(BilinearMap(a, zn(2), e)));
  }
  for (const Cocycle& c : cases) {
    ExtensionGroup g = ExtensionGroup::build(c);
    auto rep = is_twisted_product_class(g);
    CHECK(rep.has_value() == oracle(g));
    if (rep) {
      CHECK(cohomologous(bilinear_to_cocycle(*rep), c).has_value());
    }
  }
}

TEST_CASE("is_twisted_product_class respects the capacity guard") {
  AbelianGroup a({Int(3), Int(3)});
  ExtensionGroup g = ExtensionGroup::build(Cocycle::zero(a, zn(3)));
  TwistedClassOptions opts;
  opts.max_candidates = 2;
  CHECK_THROWS_AS(is_twisted_product_class(g, opts), CapacityError);
}

#include "doctest.h"

#include <cmath>
#include <set>
#include <string>

#include "centext/cohomology.hpp"
#include "centext/examples.hpp"

using namespace centext;

namespace {

AbelianGroup zn(long n) { return AbelianGroup({Int(n)}); }

std::string table_key(const IntMat& m) {
  std::string k;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) k += m(i, j).get_str() + ",";
  }
  return k;
}

// Exhaustive model of Z^2, B^2 and the class count for tiny groups:
// enumerate every normalized table, filter by validation, and collect the
// coboundary tables.
struct BruteCohomology {
  std::vector<Cocycle> cocycles;          // all of Z^2
  std::set<std::string> coboundaries;     // table keys of B^2
  long class_count = 0;

  bool is_coboundary(const Cocycle& c) const { return coboundaries.count(table_key(c.table())) > 0; }
  bool cohomologous_brute(const Cocycle& x, const Cocycle& y) const {
    return is_coboundary(x - y);
  }
};

BruteCohomology brute_cohomology(const AbelianGroup& a, const AbelianGroup& b) {
  BruteCohomology out;
  const long n = to_long(a.order(), "brute");
  const long bo = to_long(b.order(), "brute");
  const long free_slots = (n - 1) * (n - 1);
  REQUIRE(pow(static_cast<double>(bo), static_cast<double>(free_slots)) < 3e5);

  std::vector<long> digits(static_cast<size_t>(free_slots), 0);
  auto belems = b.elements();
  while (true) {
    IntMat table = IntMat::Zero(Index(n) * Index(n), b.rank());
    long slot = 0;
    for (long x = 1; x < n; ++x) {
      for (long y = 1; y < n; ++y, ++slot) {
        const GroupElement& v = belems[static_cast<size_t>(digits[static_cast<size_t>(slot)])];
        for (Index k = 0; k < b.rank(); ++k) {
          table(Index(x) * n + y, k) = v.coords[static_cast<size_t>(k)];
        }
      }
    }
    Cocycle c(a, b, std::move(table));
    if (validate_cocycle(c).pass()) out.cocycles.push_back(c);
    size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < bo) break;
      digits[pos] = 0;
      ++pos;
    }
    if (digits.empty() || pos == digits.size()) break;
  }

  // All coboundaries via all cochains.
  std::vector<long> hdig(static_cast<size_t>(n - 1), 0);
  while (true) {
    IntMat values = IntMat::Zero(Index(n), b.rank());
    for (long x = 1; x < n; ++x) {
      const GroupElement& v = belems[static_cast<size_t>(hdig[static_cast<size_t>(x - 1)])];
      for (Index k = 0; k < b.rank(); ++k) values(Index(x), k) = v.coords[static_cast<size_t>(k)];
    }
    out.coboundaries.insert(table_key(coboundary(CochainMap(a, b, values)).table()));
    size_t pos = 0;
    while (pos < hdig.size()) {
      if (++hdig[pos] < bo) break;
      hdig[pos] = 0;
      ++pos;
    }
    if (hdig.empty() || pos == hdig.size()) break;
  }
  out.class_count = static_cast<long>(out.cocycles.size() / out.coboundaries.size());
  return out;
}

Int lambda2_hom_order(const AbelianGroup& a, const AbelianGroup& b) {
  // |Hom(Lambda^2 A, B)| with Lambda^2 A = sum_{i<j} Z/gcd(d_i, d_j).
  Int n = 1;
  for (Index i = 0; i < a.rank(); ++i) {
    for (Index j = i + 1; j < a.rank(); ++j) {
      Int g = gcd(a.factors()[static_cast<size_t>(i)], a.factors()[static_cast<size_t>(j)]);
      for (Index t = 0; t < b.rank(); ++t) {
        n *= gcd(g, b.factors()[static_cast<size_t>(t)]);
      }
    }
  }
  return n;
}

}  // namespace

TEST_CASE("H^2(Z/2, Z/2) is Z/2 with the carry class nontrivial") {
  H2Description h2 = compute_h2(zn(2), zn(2));
  CHECK(h2.abstract().factors() == std::vector<Int>{Int(2)});
  REQUIRE(h2.representatives().size() == 1);
  CHECK(validate_cocycle(h2.representatives()[0]).pass());

  BruteCohomology brute = brute_cohomology(zn(2), zn(2));
  CHECK(brute.cocycles.size() == 2);
  CHECK(brute.coboundaries.size() == 1);
  CHECK(brute.class_count == 2);

  GroupElement carry_class = h2.project(carry_cocycle(Int(2), Int(2)));
  CHECK(carry_class != h2.abstract().zero());
}

TEST_CASE("H^2(Z/3, Z/3) is Z/3") {
  H2Description h2 = compute_h2(zn(3), zn(3));
  CHECK(h2.abstract().factors() == std::vector<Int>{Int(3)});
  BruteCohomology brute = brute_cohomology(zn(3), zn(3));
  CHECK(brute.class_count == 3);
  CHECK(h2.project(carry_cocycle(Int(3), Int(3))) != h2.abstract().zero());
}

TEST_CASE("H^2 over the trivial group is trivial") {
  H2Description h2 = compute_h2(AbelianGroup(), zn(4));
  CHECK(h2.order() == 1);
  CHECK(h2.representatives().empty());
}

TEST_CASE("projector matches brute-force cohomology classes") {
  for (auto [af, bf] : std::vector<std::pair<std::vector<Int>, std::vector<Int>>>{
           {{Int(2)}, {Int(2)}},
           {{Int(2)}, {Int(4)}},
           {{Int(3)}, {Int(3)}},
           {{Int(4)}, {Int(2)}},
           {{Int(2), Int(2)}, {Int(2)}},
       }) {
    AbelianGroup a(af), b(bf);
    H2Description h2 = compute_h2(a, b);
    BruteCohomology brute = brute_cohomology(a, b);
    CHECK(h2.order() == brute.class_count);

    // The classes with a symmetric representative form the Ext subgroup.
    std::set<std::string> symmetric_classes;
    for (const Cocycle& z : brute.cocycles) {
      bool symmetric = true;
      const long n = z.order_a();
      for (long x = 0; x < n && symmetric; ++x) {
        for (long y = x + 1; y < n; ++y) {
          if (z.at(x, y) != z.at(y, x)) {
            symmetric = false;
            break;
          }
        }
      }
      if (symmetric) {
        std::string k;
        for (const Int& cc : h2.project(z).coords) k += cc.get_str() + ",";
        symmetric_classes.insert(k);
      }
    }
    CHECK(Int(static_cast<long>(symmetric_classes.size())) == ext_space(a, b).order());

    // projector equality iff brute-force cohomologous, on every pair of all
    // valid cocycles.
    for (size_t i = 0; i < brute.cocycles.size(); ++i) {
      GroupElement pi = h2.project(brute.cocycles[i]);
      // projector is compatible with the representative reconstruction
      CHECK(brute.cohomologous_brute(h2.representative_of(pi), brute.cocycles[i]));
      for (size_t j = i; j < brute.cocycles.size(); ++j) {
        bool same_class = brute.cohomologous_brute(brute.cocycles[i], brute.cocycles[j]);
        CHECK(same_class == (pi == h2.project(brute.cocycles[j])));
      }
    }
  }
}

TEST_CASE("projector is additive and agrees with the cohomologous decision") {
  AbelianGroup a({Int(2), Int(2)}), b({Int(2)});
  H2Description h2 = compute_h2(a, b);
  BruteCohomology brute = brute_cohomology(a, b);
  for (size_t i = 0; i < brute.cocycles.size(); i += 3) {
    for (size_t j = 0; j < brute.cocycles.size(); j += 5) {
      const Cocycle& x = brute.cocycles[i];
      const Cocycle& y = brute.cocycles[j];
      CHECK(h2.project(x + y) == add(h2.project(x), h2.project(y)));
      bool agree = cohomologous(x, y).has_value();
      CHECK(agree == (h2.project(x) == h2.project(y)));
    }
  }
}

TEST_CASE("projector rejects non-cocycles") {
  H2Description h2 = compute_h2(zn(3), zn(3));
  IntMat table = IntMat::Zero(9, 1);
  table(4, 0) = 1;  // violates the identity
  CHECK_THROWS_AS(h2.project(Cocycle(zn(3), zn(3), table)), std::invalid_argument);
}

TEST_CASE("|H^2| equals |Ext| * |Hom(Lambda^2 A, B)| for orders up to 9") {
  std::vector<std::vector<Int>> groups = {
      {},           {Int(2)},         {Int(3)},         {Int(4)},        {Int(2), Int(2)},
      {Int(5)},     {Int(6)},         {Int(7)},         {Int(8)},        {Int(2), Int(4)},
      {Int(2), Int(2), Int(2)},       {Int(9)},         {Int(3), Int(3)},
  };
  for (const auto& af : groups) {
    for (const auto& bf : groups) {
      AbelianGroup a(af), b(bf);
      H2Description h2 = compute_h2(a, b);
      CHECK(h2.order() == ext_space(a, b).order() * lambda2_hom_order(a, b));
    }
  }
}

TEST_CASE("bilinear subgroup of H^2") {
  SUBCASE("A = B = Z/2: the carry class is bilinear, so the subgroup is everything") {
    H2Description h2 = compute_h2(zn(2), zn(2));
    BilinearSubgroup bil = bilinear_subgroup(h2);
    CHECK(bil.order() == 2);
    auto rep = bil.representative_for(h2.project(carry_cocycle(Int(2), Int(2))));
    REQUIRE(rep.has_value());
    CHECK(cohomologous(bilinear_to_cocycle(*rep), carry_cocycle(Int(2), Int(2))).has_value());
  }
  SUBCASE("A = B = Z/3: every bilinear cocycle is a coboundary") {
    H2Description h2 = compute_h2(zn(3), zn(3));
    BilinearSubgroup bil = bilinear_subgroup(h2);
    CHECK(bil.order() == 1);
    CHECK(!bil.representative_for(h2.project(carry_cocycle(Int(3), Int(3)))).has_value());
  }
  SUBCASE("A = (Z/2)^2, B = Z/2: the alternating class is not a coboundary") {
    AbelianGroup a({Int(2), Int(2)});
    H2Description h2 = compute_h2(a, zn(2));
    BilinearSubgroup bil = bilinear_subgroup(h2);
    CHECK(bil.order() > 1);
    IntMat e = IntMat::Zero(4, 1);
    e(1, 0) = 1;
    GroupElement cls = h2.project(bilinear_to_cocycle(BilinearMap(a, zn(2), e)));
    CHECK(cls != h2.abstract().zero());
    CHECK(bil.membership(cls).has_value());
    // Exhaustive oracle: the subgroup order equals the number of distinct
    // classes among all bilinear cocycles.
    std::set<std::string> classes;
    for (const BilinearMap& m : all_bilinear_maps(a, zn(2), Int(100))) {
      std::string k;
      for (const Int& c : h2.project(bilinear_to_cocycle(m)).coords) k += c.get_str() + ",";
      classes.insert(k);
    }
    CHECK(bil.order() == static_cast<long>(classes.size()));
  }
  SUBCASE("trivial coefficients give the trivial subgroup") {
    H2Description h2 = compute_h2(zn(4), AbelianGroup());
    CHECK(bilinear_subgroup(h2).order() == 1);
  }
}

TEST_CASE("every class of the bilinear subgroup has a bilinear representative") {
  AbelianGroup a({Int(2), Int(2)}), b({Int(2)});
  H2Description h2 = compute_h2(a, b);
  BilinearSubgroup bil = bilinear_subgroup(h2);
  CHECK(bil.membership(h2.abstract().zero()).has_value());  // contains the zero class
  long members = 0;
  for (const GroupElement& cls : h2.all_classes()) {
    auto rep = bil.representative_for(cls);
    if (!rep) continue;
    ++members;
    Cocycle c = bilinear_to_cocycle(*rep);
    CHECK(is_bilinear(c).map.has_value());
    CHECK(h2.project(c) == cls);
  }
  CHECK(members == bil.order());
}

TEST_CASE("induced maps on classes") {
  H2Description h22 = compute_h2(zn(2), zn(2));
  SUBCASE("identity and zero coefficient maps") {
    IntMat id(1, 1);
    id << 1;
    CHECK(induced_map(id, h22, h22) == IntMat::Identity(1, 1));
    IntMat z(1, 1);
    z << 0;
    CHECK(induced_map(z, h22, h22) == IntMat::Zero(1, 1));
  }
  SUBCASE("Z/2 -> Z/4 doubling kills the carry class") {
    // Brute-force oracle in the target: the pushed table gamma'(1,1) = 2 is
    // the coboundary of h(1) = 1, so the class dies.
    IntMat j(1, 1);
    j << 2;
    Cocycle pushed = pushforward(j, zn(4), carry_cocycle(Int(2), Int(2)));
    IntMat hv(2, 1);
    hv << 0, 1;
    CHECK(pushed == coboundary(CochainMap(zn(2), zn(4), hv)));

    H2Description target = compute_h2(zn(2), zn(4));
    IntMat m = induced_map(j, h22, target);
    CHECK(m == IntMat::Zero(target.abstract().rank(), 1));
  }
  SUBCASE("Z/2 -> Z/2 + Z/2 inclusion keeps the carry class") {
    AbelianGroup b2({Int(2), Int(2)});
    IntMat j(2, 1);
    j << 1, 0;
    Cocycle pushed = pushforward(j, b2, carry_cocycle(Int(2), Int(2)));
    // Oracle: the only coboundary over (Z/2)^2 coefficients on A = Z/2 is 0.
    for (long h0 = 0; h0 < 2; ++h0) {
      for (long h1 = 0; h1 < 2; ++h1) {
        IntMat hv(2, 2);
        hv << 0, 0, h0, h1;
        CHECK(coboundary(CochainMap(zn(2), b2, hv)) == Cocycle::zero(zn(2), b2));
      }
    }
    H2Description target = compute_h2(zn(2), b2);
    IntMat m = induced_map(j, h22, target);
    CHECK(m != IntMat::Zero(target.abstract().rank(), 1));
    CHECK(target.project(pushed) != target.abstract().zero());
  }
  SUBCASE("mismatched base groups are rejected") {
    H2Description h33 = compute_h2(zn(3), zn(3));
    IntMat id(1, 1);
    id << 1;
    CHECK_THROWS_AS(induced_map(id, h22, h33), std::invalid_argument);
  }
}

TEST_CASE("class count distinguishes representative combinations") {
  AbelianGroup a({Int(2), Int(2)}), b({Int(2)});
  H2Description h2 = compute_h2(a, b);
  // Distinct abstract elements have non-cohomologous representatives.
  auto classes = h2.all_classes();
  for (size_t i = 0; i < classes.size(); ++i) {
    for (size_t j = i + 1; j < classes.size(); ++j) {
      CHECK(!cohomologous(h2.representative_of(classes[i]), h2.representative_of(classes[j]))
                 .has_value());
    }
  }
}

TEST_CASE("capacity guard on the H^2 computation") {
  H2Options opts;
  opts.max_base_order = 4;
  CHECK_THROWS_AS(compute_h2(zn(8), zn(2), opts), CapacityError);
}

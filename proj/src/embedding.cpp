#include "centext/embedding.hpp"

#include <map>
#include <string>

namespace centext {

GroupElement UniversalTriple::include_fiber(const GroupElement& b_elt) const {
  return apply_hom(fiber_inclusion, b_elt, c);
}

GroupElement UniversalTriple::beta_at(const GroupElement& x, const GroupElement& y) const {
  if (x.parent() != a || y.parent() != a) {
    throw std::invalid_argument("UniversalTriple::beta_at: element of another group");
  }
  const Index k = a.rank();
  std::vector<Int> acc(static_cast<size_t>(c.rank()), Int(0));
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      Int w = x.coords[static_cast<size_t>(i)] * y.coords[static_cast<size_t>(j)];
      if (w == 0) continue;
      for (Index t = 0; t < c.rank(); ++t) {
        acc[static_cast<size_t>(t)] += w * pair_images(t, i * k + j);
      }
    }
  }
  return c.make(std::move(acc));
}

UniversalTriple universal_triple(const AbelianGroup& a, const AbelianGroup& b,
                                 const BilinearMap& alpha) {
  if (alpha.group_a() != a || alpha.group_b() != b) {
    throw std::invalid_argument("universal_triple: pairing over different groups");
  }
  if (!alpha.compatible()) {
    throw std::invalid_argument("universal_triple: pairing violates generator orders");
  }
  if (!alpha.is_alternating()) {
    throw std::invalid_argument("universal_triple: pairing is not alternating");
  }
  const Index ka = a.rank(), kb = b.rank();
  const Index gens = kb + ka * ka;  // fiber generators first, then pair generators
  std::vector<IntVec> rels;
  for (Index j = 0; j < kb; ++j) {
    IntVec r = IntVec::Zero(gens);
    r(j) = b.factors()[static_cast<size_t>(j)];
    rels.push_back(r);
  }
  for (Index i = 0; i < ka; ++i) {
    for (Index j = 0; j < ka; ++j) {
      IntVec r1 = IntVec::Zero(gens);
      r1(kb + i * ka + j) = a.factors()[static_cast<size_t>(i)];
      rels.push_back(r1);
      IntVec r2 = IntVec::Zero(gens);
      r2(kb + i * ka + j) = a.factors()[static_cast<size_t>(j)];
      rels.push_back(r2);
    }
  }
  for (Index i = 0; i < ka; ++i) {
    for (Index j = i + 1; j < ka; ++j) {
      IntVec r = IntVec::Zero(gens);
      r(kb + i * ka + j) = 1;
      r(kb + j * ka + i) = -1;
      GroupElement v = alpha.at_generators(i, j);
      for (Index t = 0; t < kb; ++t) r(t) = -v.coords[static_cast<size_t>(t)];
      rels.push_back(r);
    }
  }
  IntMat relmat(gens, static_cast<Index>(rels.size()));
  for (size_t c = 0; c < rels.size(); ++c) relmat.col(static_cast<Index>(c)) = rels[c];

  PresentedGroup pg = reduce_presentation(gens, relmat);
  UniversalTriple t;
  t.a = a;
  t.b = b;
  t.alpha = alpha;
  t.c = pg.group;
  t.fiber_inclusion = pg.generator_images.leftCols(kb);
  t.pair_images = pg.generator_images.rightCols(ka * ka);

  // Matching relation on generators; the bilinear expansion extends it to
  // every pair.
  for (Index i = 0; i < ka; ++i) {
    for (Index j = 0; j < ka; ++j) {
      GroupElement lhs =
          sub(t.beta_at(a.generator(i), a.generator(j)), t.beta_at(a.generator(j), a.generator(i)));
      if (lhs != t.include_fiber(alpha.at_generators(i, j))) {
        throw std::logic_error("universal_triple: matching relation failed");
      }
    }
  }
  // Injectivity of the fiber inclusion: its kernel lattice must be exactly
  // the fiber modulus lattice.
  if (kb > 0) {
    IntMat kernel = kernel_mod(t.fiber_inclusion, t.c.factors());
    if (abs(determinant(kernel)) != b.order()) {
      throw std::logic_error("universal_triple: fiber inclusion is not injective");
    }
  }
  return t;
}

TripleCandidate section_candidate(const UniversalTriple& t) {
  const Index ka = t.a.rank(), kb = t.b.rank();
  IntMat entries = IntMat::Zero(ka * ka, kb);
  for (Index i = 0; i < ka; ++i) {
    for (Index j = i + 1; j < ka; ++j) {
      GroupElement v = t.alpha.at_generators(i, j);
      for (Index w = 0; w < kb; ++w) entries(i * ka + j, w) = v.coords[static_cast<size_t>(w)];
    }
  }
  TripleCandidate cand;
  cand.c_prime = t.b;
  cand.beta_prime = BilinearMap(t.a, t.b, std::move(entries));
  cand.fiber_map = IntMat::Identity(kb, kb);
  return cand;
}

UniversalFactorization verify_universal_property(const UniversalTriple& t,
                                                 const TripleCandidate& candidate) {
  const AbelianGroup& cp = candidate.c_prime;
  const Index ka = t.a.rank(), kb = t.b.rank(), kc = t.c.rank(), kq = cp.rank();
  if (candidate.beta_prime.group_a() != t.a || candidate.beta_prime.group_b() != cp) {
    throw std::invalid_argument("verify_universal_property: candidate bilinear map mismatch");
  }
  if (!candidate.beta_prime.compatible() || !hom_well_defined(candidate.fiber_map, t.b, cp)) {
    throw std::invalid_argument("verify_universal_property: candidate maps ill-defined");
  }
  // The candidate diagram must commute on generator pairs.
  for (Index i = 0; i < ka; ++i) {
    for (Index j = 0; j < ka; ++j) {
      GroupElement lhs = sub(candidate.beta_prime.at_generators(i, j),
                             candidate.beta_prime.at_generators(j, i));
      GroupElement rhs = apply_hom(candidate.fiber_map, t.alpha.at_generators(i, j), cp);
      if (lhs != rhs) {
        throw std::invalid_argument("verify_universal_property: candidate diagram does not commute");
      }
    }
  }

  // Unknown psi : C -> C', entry (r, c) at slot c*kq + r. Constraints pin
  // psi on the fiber image and the pair images, plus well-definedness.
  const Index unknowns = kc * kq;
  std::vector<IntVec> rows;
  std::vector<Int> moduli;
  IntVec rhs_acc;
  std::vector<Int> rhs_list;
  auto slot = [&](Index r, Index c) { return c * kq + r; };
  auto add_row = [&](const IntVec& row, const Int& rhs, const Int& m) {
    rows.push_back(row);
    rhs_list.push_back(rhs);
    moduli.push_back(m);
  };
  for (Index j = 0; j < kb; ++j) {
    for (Index r = 0; r < kq; ++r) {
      IntVec row = IntVec::Zero(unknowns);
      for (Index c = 0; c < kc; ++c) row(slot(r, c)) = t.fiber_inclusion(c, j);
      add_row(row, candidate.fiber_map(r, j), cp.factors()[static_cast<size_t>(r)]);
    }
  }
  for (Index p = 0; p < ka * ka; ++p) {
    for (Index r = 0; r < kq; ++r) {
      IntVec row = IntVec::Zero(unknowns);
      for (Index c = 0; c < kc; ++c) row(slot(r, c)) = t.pair_images(c, p);
      add_row(row, candidate.beta_prime.entries()(p, r), cp.factors()[static_cast<size_t>(r)]);
    }
  }
  for (Index c = 0; c < kc; ++c) {
    for (Index r = 0; r < kq; ++r) {
      IntVec row = IntVec::Zero(unknowns);
      row(slot(r, c)) = t.c.factors()[static_cast<size_t>(c)];
      add_row(row, Int(0), cp.factors()[static_cast<size_t>(r)]);
    }
  }
  IntMat m(static_cast<Index>(rows.size()), unknowns);
  IntVec rhs(static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Index>(i)) = rows[i].transpose();
    rhs(static_cast<Index>(i)) = rhs_list[i];
  }

  UniversalFactorization out;
  auto sol = solve_congruences(m, moduli, rhs);
  if (!sol) return out;  // contradicts universality; reported, not thrown
  out.found = true;
  out.psi.resize(kq, kc);
  for (Index c = 0; c < kc; ++c) {
    for (Index r = 0; r < kq; ++r) out.psi(r, c) = (*sol)(slot(r, c));
  }

  // Uniqueness: the homogeneous solution lattice must be the trivial one
  // (every entry a multiple of its target modulus).
  out.unique = true;
  if (unknowns > 0) {
    IntMat kernel = kernel_mod(m, moduli);
    for (Index col = 0; col < kernel.cols() && out.unique; ++col) {
      for (Index c = 0; c < kc && out.unique; ++c) {
        for (Index r = 0; r < kq; ++r) {
          if (mod(kernel(slot(r, c), col), cp.factors()[static_cast<size_t>(r)]) != 0) {
            out.unique = false;
            break;
          }
        }
      }
    }
  }
  return out;
}

RatVec DivisibleTarget::embed_fiber(const GroupElement& b_elt) const {
  RatVec v = qz_zero(rank);
  for (Index j = 0; j < static_cast<Index>(b_elt.coords.size()); ++j) {
    v = qz_add(v, qz_scale(b_elt.coords[static_cast<size_t>(j)], RatVec(fiber_embedding.col(j))));
  }
  return v;
}

DivisibleTarget divisible_target(const AbelianGroup& b) {
  DivisibleTarget t;
  t.rank = b.rank();
  t.fiber_embedding = RatMat(t.rank, b.rank());
  for (Index i = 0; i < t.rank; ++i) {
    for (Index j = 0; j < b.rank(); ++j) {
      if (i == j) {
        Rat r(Int(1), b.factors()[static_cast<size_t>(j)]);
        r.canonicalize();
        t.fiber_embedding(i, j) = qz_reduce(r);
      } else {
        t.fiber_embedding(i, j) = 0;
      }
    }
  }
  return t;
}

RatMat factor_map(const UniversalTriple& t, const DivisibleTarget& target) {
  const Index kc = t.c.rank(), kb = t.b.rank(), kl = target.rank;
  RatMat chi(kl, kc);
  if (kc == 0 || kl == 0) {
    for (Index i = 0; i < kl; ++i) {
      for (Index j = 0; j < kc; ++j) chi(i, j) = 0;
    }
    return chi;
  }
  const Int big = t.c.exponent();
  const Index unknowns = kc * kl;
  auto slot = [&](Index c, Index w) { return c * kl + w; };
  std::vector<IntVec> rows;
  std::vector<Int> rhs_list, moduli;
  for (Index c = 0; c < kc; ++c) {
    for (Index w = 0; w < kl; ++w) {
      IntVec row = IntVec::Zero(unknowns);
      row(slot(c, w)) = t.c.factors()[static_cast<size_t>(c)];
      rows.push_back(row);
      rhs_list.push_back(0);
      moduli.push_back(big);
    }
  }
  for (Index j = 0; j < kb; ++j) {
    for (Index w = 0; w < kl; ++w) {
      IntVec row = IntVec::Zero(unknowns);
      for (Index c = 0; c < kc; ++c) row(slot(c, w)) = t.fiber_inclusion(c, j);
      rows.push_back(row);
      rhs_list.push_back(w == j ? exact_div(big, t.b.factors()[static_cast<size_t>(j)]) : Int(0));
      moduli.push_back(big);
    }
  }
  IntMat m(static_cast<Index>(rows.size()), unknowns);
  IntVec rhs(static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Index>(i)) = rows[i].transpose();
    rhs(static_cast<Index>(i)) = rhs_list[i];
  }
  auto sol = solve_congruences(m, moduli, rhs);
  if (!sol) throw std::logic_error("factor_map: no factorization exists");
  for (Index c = 0; c < kc; ++c) {
    for (Index w = 0; w < kl; ++w) {
      Rat r((*sol)(slot(c, w)), big);
      r.canonicalize();
      chi(w, c) = qz_reduce(r);
    }
  }
  // chi o i_B = j, exactly.
  for (Index j = 0; j < kb; ++j) {
    RatVec lhs = qz_zero(kl);
    for (Index c = 0; c < kc; ++c) {
      lhs = qz_add(lhs, qz_scale(t.fiber_inclusion(c, j), RatVec(chi.col(c))));
    }
    if (!qz_equal(lhs, RatVec(target.fiber_embedding.col(j)))) {
      throw std::logic_error("factor_map: factorization does not restrict to the embedding");
    }
  }
  return chi;
}

RatVec extension_seed(const std::optional<Int>& n0, const RatVec& f_at_power,
                      const RatVec& beta_gg) {
  if (!n0) return qz_zero(f_at_power.size());
  RatVec target = qz_sub(f_at_power, qz_scale(binomial2(*n0), beta_gg));
  return qz_nth_root(target, *n0);
}

std::vector<RatVec> extend_twisted_map(const ExtensionGroup& g, const QZBilinear& lifted,
                                       const DivisibleTarget& target) {
  const AbelianGroup& a = g.base();
  const AbelianGroup& b = g.fiber();
  const long order = to_long(g.order(), "extend_twisted_map");
  const Index kl = target.rank;
  if (lifted.a != a || lifted.rank != kl) {
    throw std::invalid_argument("extend_twisted_map: bilinear lift shape mismatch");
  }

  // Seed compatibility: the antisymmetrization of the lift must match the
  // embedded commutator pairing on every generator pair.
  BilinearMap pairing = commutator_pairing(g.cocycle());
  for (Index i = 0; i < a.rank(); ++i) {
    for (Index j = 0; j < a.rank(); ++j) {
      RatVec lhs = qz_sub(lifted.at_generators(i, j), lifted.at_generators(j, i));
      RatVec rhs = target.embed_fiber(pairing.at_generators(i, j));
      if (!qz_equal(lhs, rhs)) {
        throw std::invalid_argument(
            "extend_twisted_map: seed violates commutator compatibility at generator pair (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }

  std::vector<RatVec> f(static_cast<size_t>(order));
  std::vector<bool> assigned(static_cast<size_t>(order), false);
  auto all = g.elements();
  auto idx = [&](const ExtensionGroup::Element& x) {
    return to_long(g.index_of(x), "extend_twisted_map");
  };

  // Seed on the fiber: f(i(b)) = j(b).
  for (const GroupElement& be : b.elements()) {
    auto e = g.include_fiber(be);
    f[static_cast<size_t>(idx(e))] = target.embed_fiber(be);
    assigned[static_cast<size_t>(idx(e))] = true;
  }

  // Candidate order: lifted base generators in input order, then remaining
  // elements lexicographically (never reached for these finite groups).
  std::vector<ExtensionGroup::Element> candidates;
  for (Index i = 0; i < a.rank(); ++i) candidates.push_back(g.lift(a.generator(i)));
  for (const auto& e : g.elements()) candidates.push_back(e);

  for (const auto& gen : candidates) {
    if (assigned[static_cast<size_t>(idx(gen))]) continue;
    const GroupElement abar = g.project(gen);
    const RatVec beta_gg = lifted.at(abar, abar);

    // Least n0 >= 1 with gen^n0 already assigned; finite order guarantees one.
    Int n0 = 1;
    auto pw = gen;
    while (!assigned[static_cast<size_t>(idx(pw))]) {
      pw = g.mul(pw, gen);
      n0 += 1;
    }
    const RatVec seed = extension_seed(n0, f[static_cast<size_t>(idx(pw))], beta_gg);

    // Values on the cyclic part, with seam agreement and torsion wraparound.
    const Int ord = g.element_order(gen);
    const long ordl = to_long(ord, "extend_twisted_map");
    std::vector<RatVec> fv(static_cast<size_t>(ordl));
    auto cyc = g.identity();
    for (long m0 = 0; m0 < ordl; ++m0) {
      fv[static_cast<size_t>(m0)] =
          qz_add(qz_scale(Int(m0), seed), qz_scale(binomial2(Int(m0)), beta_gg));
      long ci = idx(cyc);
      if (assigned[static_cast<size_t>(ci)] &&
          !qz_equal(fv[static_cast<size_t>(m0)], f[static_cast<size_t>(ci)])) {
        throw std::logic_error("extend_twisted_map: seam disagreement on the cyclic overlap");
      }
      cyc = g.mul(cyc, gen);
    }
    for (long m0 = 0; m0 <= 1; ++m0) {
      RatVec wrap = qz_add(qz_scale(ord + m0, seed), qz_scale(binomial2(ord + m0), beta_gg));
      if (!qz_equal(wrap, fv[static_cast<size_t>(m0)])) {
        throw std::logic_error("extend_twisted_map: torsion wraparound failed");
      }
    }

    // Close under f(u v) = f(u) + f(v) + beta(u, v) over the previous domain;
    // every element reachable two ways must agree.
    std::vector<long> old_domain;
    for (long i = 0; i < order; ++i) {
      if (assigned[static_cast<size_t>(i)]) old_domain.push_back(i);
    }
    std::vector<RatVec> fnew = f;
    std::vector<bool> newly = assigned;
    auto v = g.identity();
    for (long m0 = 0; m0 < ordl; ++m0) {
      GroupElement vbar = g.project(v);
      for (long ui : old_domain) {
        const auto& u = all[static_cast<size_t>(ui)];
        auto w = g.mul(u, v);
        long wi = idx(w);
        RatVec val = qz_add(qz_add(f[static_cast<size_t>(ui)], fv[static_cast<size_t>(m0)]),
                            lifted.at(g.project(u), vbar));
        if (newly[static_cast<size_t>(wi)]) {
          if (!qz_equal(fnew[static_cast<size_t>(wi)], val)) {
            throw std::logic_error("extend_twisted_map: combination is not well defined");
          }
        } else {
          fnew[static_cast<size_t>(wi)] = val;
          newly[static_cast<size_t>(wi)] = true;
        }
      }
      v = g.mul(v, gen);
    }
    f = std::move(fnew);
    assigned = std::move(newly);
  }

  for (long i = 0; i < order; ++i) {
    if (!assigned[static_cast<size_t>(i)]) {
      throw std::logic_error("extend_twisted_map: domain did not close");
    }
  }
  return f;
}

RatVec EmbeddingResult::map_value(const ExtensionGroup::Element& g) const {
  return map_values_[static_cast<size_t>(to_long(source_.index_of(g), "map_value"))];
}

std::pair<GroupElement, RatVec> EmbeddingResult::phi(const ExtensionGroup::Element& g) const {
  return {source_.project(g), map_value(g)};
}

bool EmbeddingResult::witness_identity_holds() const {
  const AbelianGroup& a = source_.base();
  const long n = to_long(a.order(), "witness_identity_holds");
  auto elems = a.elements();
  QZMap h;
  h.a = a;
  h.rank = target_.rank;
  h.values = section_witness_;
  QZTable lhs = qz_coboundary(h);
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      RatVec rhs = qz_sub(target_.embed_fiber(source_.cocycle().at(x, y)),
                          lifted_bilinear_.at(elems[static_cast<size_t>(x)],
                                              elems[static_cast<size_t>(y)]));
      if (!qz_equal(lhs.at(x, y), rhs)) return false;
    }
  }
  return true;
}

bool EmbeddingResult::lifted_bilinear_null() const {
  return qz_coboundary_witness(qz_bilinear_table(lifted_bilinear_)).has_value();
}

AbelianGroup EmbeddingResult::image_invariants() const {
  const Index k = target_.rank;
  Int big = qz_denominator_lcm(map_values_);
  std::vector<Int> ambient_factors(static_cast<size_t>(k), big);
  AbelianGroup ambient(ambient_factors);
  IntMat gens(k, static_cast<Index>(map_values_.size()));
  for (size_t c = 0; c < map_values_.size(); ++c) {
    for (Index i = 0; i < k; ++i) {
      const Rat& r = map_values_[c](i);
      gens(i, static_cast<Index>(c)) = Int(r.get_num()) * exact_div(big, Int(r.get_den()));
    }
  }
  return subgroup_invariants(gens, ambient);
}

std::pair<GroupElement, RatVec> EmbeddingResult::target_mul(
    const std::pair<GroupElement, RatVec>& x, const std::pair<GroupElement, RatVec>& y) const {
  return {add(x.first, y.first),
          qz_add(qz_add(x.second, y.second), lifted_bilinear_.at(x.first, y.first))};
}

bool EmbeddingResult::target_abelian() const {
  const AbelianGroup& a = source_.base();
  for (const GroupElement& x : a.elements()) {
    for (const GroupElement& y : a.elements()) {
      if (!qz_equal(lifted_bilinear_.at(x, y), lifted_bilinear_.at(y, x))) return false;
    }
  }
  return true;
}

EmbeddingResult embed(const ExtensionGroup& g) {
  EmbeddingResult out(g);
  const AbelianGroup& a = g.base();
  const AbelianGroup& b = g.fiber();

  BilinearMap alpha = commutator_pairing(g.cocycle());
  out.triple_ = universal_triple(a, b, alpha);
  out.target_ = divisible_target(b);
  out.chi_ = factor_map(out.triple_, out.target_);

  out.lifted_bilinear_ = QZBilinear::zero(a, out.target_.rank);
  for (Index p = 0; p < a.rank() * a.rank(); ++p) {
    RatVec v = qz_zero(out.target_.rank);
    for (Index c = 0; c < out.triple_.c.rank(); ++c) {
      v = qz_add(v, qz_scale(out.triple_.pair_images(c, p), RatVec(out.chi_.col(c))));
    }
    out.lifted_bilinear_.entries[static_cast<size_t>(p)] = v;
  }

  out.map_values_ = extend_twisted_map(g, out.lifted_bilinear_, out.target_);

  const long na = to_long(a.order(), "embed");
  auto aelems = a.elements();
  out.section_witness_.resize(static_cast<size_t>(na));
  for (long x = 0; x < na; ++x) {
    out.section_witness_[static_cast<size_t>(x)] =
        out.map_value(g.lift(aelems[static_cast<size_t>(x)]));
  }

  // Full verification pass; these conditions hold identically for the
  // constructed data, so a failure is a defect.
  auto all = g.elements();
  const Int exp_g = [&] {
    Int e = 1;
    for (const auto& x : all) e = lcm(e, g.element_order(x));
    return e;
  }();
  for (const auto& x : all) {
    const RatVec& fx = out.map_value(x);
    for (const auto& y : all) {
      RatVec expect = qz_add(qz_add(fx, out.map_value(y)),
                             out.lifted_bilinear_.at(g.project(x), g.project(y)));
      if (!qz_equal(out.map_value(g.mul(x, y)), expect)) {
        throw std::logic_error("embed: homomorphism condition failed");
      }
      auto comm = g.commutator(x, y);
      RatVec cexpect = qz_sub(out.lifted_bilinear_.at(g.project(x), g.project(y)),
                              out.lifted_bilinear_.at(g.project(y), g.project(x)));
      if (!qz_equal(out.map_value(comm), cexpect)) {
        throw std::logic_error("embed: commutator formula failed");
      }
    }
    const RatVec beta_xx = out.lifted_bilinear_.at(g.project(x), g.project(x));
    auto pw = g.identity();
    for (Int n = 0; n <= exp_g; ++n) {
      RatVec expect = qz_add(qz_scale(n, fx), qz_scale(binomial2(n), beta_xx));
      if (!qz_equal(out.map_value(pw), expect)) {
        throw std::logic_error("embed: power formula failed");
      }
      pw = g.mul(pw, x);
    }
  }
  // Fiber restriction: equals the embedding and is injective.
  std::map<std::string, long> seen;
  for (const GroupElement& be : b.elements()) {
    RatVec expect = out.target_.embed_fiber(be);
    if (!qz_equal(out.map_value(g.include_fiber(be)), expect)) {
      throw std::logic_error("embed: fiber restriction disagrees with the embedding");
    }
  }
  // Injectivity of phi on all of G.
  for (const auto& x : all) {
    auto p = out.phi(x);
    std::string key = "(";
    for (const Int& cc : p.first.coords) key += cc.get_str() + ",";
    key += ")|";
    for (Index i = 0; i < p.second.size(); ++i) key += p.second(i).get_str() + ",";
    if (!seen.emplace(key, 0).second) {
      throw std::logic_error("embed: phi is not injective");
    }
  }
  if (!out.witness_identity_holds()) {
    throw std::logic_error("embed: section witness identity failed");
  }
  return out;
}

}  // namespace centext

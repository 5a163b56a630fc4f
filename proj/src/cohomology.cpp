#include "centext/cohomology.hpp"

#include <algorithm>

#include "centext/embedding.hpp"

namespace centext {

namespace {

// Unknowns of one coordinate block are the table entries at non-identity
// pairs, row-major: pair (x, y) with x, y in 1..n-1 sits at (x-1)*(n-1)+(y-1).
Index pair_slot(long n, long x, long y) { return Index(x - 1) * (n - 1) + (y - 1); }

// Cocycle-identity rows for the triples (x, y, g) with x, y != 0 and g a
// generator of A. Every triple row is an integer combination of these:
// row(x,y,z'g) = row(x,y,z') - row(xy,z',g) + row(y,z',g) + row(x,yz',g),
// so the solution lattice is exactly Z^2. Entries indexed by pair_slot; the
// normalized entries (identity row/column) are omitted as unknowns.
IntMat identity_rows(const AbelianGroup& a, const std::vector<GroupElement>& elems) {
  const long n = to_long(a.order(), "compute_h2");
  const Index dim = Index(n - 1) * (n - 1);
  std::vector<IntVec> rows;
  for (Index k = 0; k < a.rank(); ++k) {
    GroupElement g = a.generator(k);
    long gi = to_long(a.index_of(g), "compute_h2");
    if (gi == 0) continue;  // modulus-1 factor
    for (long x = 1; x < n; ++x) {
      for (long y = 1; y < n; ++y) {
        IntVec row = IntVec::Zero(dim);
        // gamma(x,y) + gamma(xy,g) - gamma(y,g) - gamma(x,yg)
        row(pair_slot(n, x, y)) += 1;
        long xy = to_long(a.index_of(add(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])),
                          "compute_h2");
        if (xy != 0) row(pair_slot(n, xy, gi)) += 1;
        row(pair_slot(n, y, gi)) -= 1;
        long yg = to_long(a.index_of(add(elems[static_cast<size_t>(y)], g)), "compute_h2");
        if (yg != 0) row(pair_slot(n, x, yg)) -= 1;
        if (!row.isZero()) rows.push_back(std::move(row));
      }
    }
  }
  IntMat m(static_cast<Index>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

// Coboundary columns: one per non-identity element u, the table of
// h |-> h(x) + h(y) - h(xy) for the indicator cochain at u.
IntMat coboundary_columns(const AbelianGroup& a, const std::vector<GroupElement>& elems) {
  const long n = to_long(a.order(), "compute_h2");
  const Index dim = Index(n - 1) * (n - 1);
  IntMat m = IntMat::Zero(dim, Index(n - 1));
  for (long x = 1; x < n; ++x) {
    for (long y = 1; y < n; ++y) {
      Index slot = pair_slot(n, x, y);
      long xy = to_long(a.index_of(add(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])),
                        "compute_h2");
      m(slot, Index(x - 1)) += 1;
      m(slot, Index(y - 1)) += 1;
      if (xy != 0) m(slot, Index(xy - 1)) -= 1;
    }
  }
  return m;
}

}  // namespace

H2Description compute_h2(const AbelianGroup& a, const AbelianGroup& b, const H2Options& opts) {
  if (a.order() > opts.max_base_order) {
    throw CapacityError("compute_h2: |A| exceeds the configured bound");
  }
  H2Description out;
  out.a_ = a;
  out.b_ = b;
  out.n_ = to_long(a.order(), "compute_h2");
  const long n = out.n_;
  auto elems = a.elements();
  const Index dim = Index(n - 1) * (n - 1);

  IntMat rows = identity_rows(a, elems);
  IntMat cob = coboundary_columns(a, elems);

  std::vector<Int> all_factors;
  for (Index c = 0; c < b.rank(); ++c) {
    const Int e = b.factors()[static_cast<size_t>(c)];
    H2Description::Block blk;
    blk.modulus = e;
    blk.table_dim = dim;

    // Solution lattice of the identity congruences: v * diag(steps).
    KernelLattice kl = kernel_mod_uniform(rows, e);
    blk.v = kl.v;
    blk.v_inv = kl.v_inv;
    blk.steps = kl.steps;

    // Coboundary image plus the modulus lattice, written in solution-lattice
    // coordinates: columns diag(e/s) and diag(1/s) v_inv cob. The modulus
    // lattice e*Z^dim maps to diag(e/s) v_inv Z^dim = diag(e/s) Z^dim, which
    // also licenses reducing row i modulo e/s_i. Every column is integral
    // because both lattices sit inside the solution lattice.
    const Index hc = cob.cols();
    IntMat s(dim, dim + hc);
    IntMat vicob = blk.v_inv * cob;
    for (Index i = 0; i < dim; ++i) {
      const Int& si = blk.steps[static_cast<size_t>(i)];
      const Int ei = exact_div(e, si);
      for (Index j = 0; j < dim; ++j) s(i, j) = (i == j) ? ei : Int(0);
      for (Index j = 0; j < hc; ++j) s(i, dim + j) = mod(exact_div(vicob(i, j), si), ei);
    }

    SnfOptions sopts;
    sopts.with_v = false;
    SmithNormalForm snf = smith_normal_form(s, sopts);
    if (snf.rank != dim) throw std::logic_error("compute_h2: quotient lattice not full rank");
    blk.us = snf.u;
    blk.us_inv = snf.u_inv;
    for (Index t = 0; t < dim; ++t) {
      blk.invariants.push_back(snf.diag(t));
      if (snf.diag(t) > 1) {
        blk.kept.push_back(t);
        all_factors.push_back(snf.diag(t));
      }
    }
    out.blocks_.push_back(std::move(blk));
  }
  out.abstract_ = AbelianGroup(all_factors);

  // One representative per kept invariant: table = v * diag(steps) * us_inv e_t.
  for (Index c = 0; c < b.rank(); ++c) {
    const auto& blk = out.blocks_[static_cast<size_t>(c)];
    for (Index t : blk.kept) {
      IntVec w = blk.us_inv.col(t);
      for (Index i = 0; i < dim; ++i) w(i) *= blk.steps[static_cast<size_t>(i)];
      IntVec table_vec = blk.v * w;
      IntMat table = IntMat::Zero(Index(n) * Index(n), b.rank());
      for (long x = 1; x < n; ++x) {
        for (long y = 1; y < n; ++y) {
          table(Index(x) * n + y, c) = table_vec(pair_slot(n, x, y));
        }
      }
      out.representatives_.emplace_back(a, b, std::move(table));
    }
  }
  for (const Cocycle& rep : out.representatives_) {
    if (!validate_cocycle(rep).pass()) {
      throw std::logic_error("compute_h2: representative failed validation");
    }
  }
  return out;
}

GroupElement H2Description::project(const Cocycle& c) const {
  if (c.group_a() != a_ || c.group_b() != b_) {
    throw std::invalid_argument("H2Description::project: cocycle over different groups");
  }
  const long n = n_;
  std::vector<Int> coords;
  for (Index bc = 0; bc < b_.rank(); ++bc) {
    const Block& blk = blocks_[static_cast<size_t>(bc)];
    // Normalization entries must vanish.
    for (long i = 0; i < n; ++i) {
      if (c.table()(Index(0) * n + i, bc) != 0 || c.table()(Index(i) * n + 0, bc) != 0) {
        throw std::invalid_argument("H2Description::project: table is not normalized");
      }
    }
    IntVec t(blk.table_dim);
    for (long x = 1; x < n; ++x) {
      for (long y = 1; y < n; ++y) t(pair_slot(n, x, y)) = c.table()(Index(x) * n + y, bc);
    }
    IntVec w = blk.v_inv * t;
    for (Index i = 0; i < blk.table_dim; ++i) {
      const Int& si = blk.steps[static_cast<size_t>(i)];
      if (mod(w(i), si) != 0) {
        throw std::invalid_argument("H2Description::project: table violates the cocycle identity");
      }
      w(i) = exact_div(w(i), si);
    }
    IntVec v = blk.us * w;
    for (Index t2 : blk.kept) {
      coords.push_back(mod(v(t2), blk.invariants[static_cast<size_t>(t2)]));
    }
  }
  return abstract_.make(std::move(coords));
}

Cocycle H2Description::representative_of(const GroupElement& cls) const {
  if (cls.parent() != abstract_) {
    throw std::invalid_argument("H2Description::representative_of: wrong parent group");
  }
  Cocycle acc = Cocycle::zero(a_, b_);
  for (size_t t = 0; t < representatives_.size(); ++t) {
    acc = acc + cls.coords[t] * representatives_[t];
  }
  return acc;
}

std::vector<GroupElement> H2Description::all_classes(const Int& cap) const {
  std::vector<GroupElement> out;
  for (const GroupElement& x : abstract_.elements(cap)) out.push_back(x);
  return out;
}

BilinearSubgroup::BilinearSubgroup(const H2Description& h2, std::vector<BilinearMap> basis,
                                   std::vector<GroupElement> projections)
    : a_(h2.group_a()),
      b_(h2.group_b()),
      abstract_(h2.abstract()),
      basis_(std::move(basis)),
      projections_(std::move(projections)) {
  IntMat gens(abstract_.rank(), static_cast<Index>(projections_.size()));
  for (size_t j = 0; j < projections_.size(); ++j) {
    for (Index i = 0; i < abstract_.rank(); ++i) {
      gens(i, static_cast<Index>(j)) = projections_[j].coords[static_cast<size_t>(i)];
    }
  }
  type_ = projections_.empty() ? AbelianGroup() : subgroup_invariants(gens, abstract_);
}

std::optional<std::vector<Int>> BilinearSubgroup::membership(const GroupElement& cls) const {
  if (cls.parent() != abstract_) {
    throw std::invalid_argument("BilinearSubgroup::membership: wrong parent group");
  }
  const Index rows = abstract_.rank();
  const Index cols = static_cast<Index>(projections_.size());
  IntMat m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = projections_[static_cast<size_t>(j)].coords[static_cast<size_t>(i)];
    }
  }
  IntVec rhs(rows);
  for (Index i = 0; i < rows; ++i) rhs(i) = cls.coords[static_cast<size_t>(i)];
  auto sol = solve_congruences(m, abstract_.factors(), rhs);
  if (!sol) return std::nullopt;
  std::vector<Int> coeff;
  for (Index j = 0; j < cols; ++j) coeff.push_back((*sol)(j));
  return coeff;
}

std::optional<BilinearMap> BilinearSubgroup::representative_for(const GroupElement& cls) const {
  auto coeff = membership(cls);
  if (!coeff) return std::nullopt;
  BilinearMap out = BilinearMap::zero(a_, b_);
  for (size_t j = 0; j < basis_.size(); ++j) {
    out = BilinearMap(a_, b_, out.entries() + (*coeff)[j] * basis_[j].entries());
  }
  return out;
}

BilinearSubgroup bilinear_subgroup(const H2Description& h2) {
  std::vector<BilinearMap> basis = bilinear_basis(h2.group_a(), h2.group_b());
  std::vector<GroupElement> projections;
  projections.reserve(basis.size());
  for (const BilinearMap& m : basis) {
    projections.push_back(h2.project(bilinear_to_cocycle(m)));
  }
  return BilinearSubgroup(h2, std::move(basis), std::move(projections));
}

IntMat induced_map(const IntMat& phi, const H2Description& h2, const H2Description& target) {
  if (h2.group_a() != target.group_a()) {
    throw std::invalid_argument("induced_map: base groups differ");
  }
  if (!hom_well_defined(phi, h2.group_b(), target.group_b())) {
    throw std::invalid_argument("induced_map: coefficient map is not a homomorphism");
  }
  IntMat m(target.abstract().rank(), h2.abstract().rank());
  for (Index t = 0; t < h2.abstract().rank(); ++t) {
    GroupElement img =
        target.project(pushforward(phi, target.group_b(), h2.representatives()[static_cast<size_t>(t)]));
    for (Index i = 0; i < target.abstract().rank(); ++i) {
      m(i, t) = img.coords[static_cast<size_t>(i)];
    }
  }
  if (!hom_well_defined(m, h2.abstract(), target.abstract())) {
    throw std::logic_error("induced_map: image violates generator orders");
  }
  return m;
}

BilinearizationReport bilinearization_report(const AbelianGroup& a, const AbelianGroup& b,
                                             const H2Options& opts) {
  BilinearizationReport report;
  H2Description h2 = compute_h2(a, b, opts);
  long zero_pairing = 0;
  bool all_pass = true;

  for (const GroupElement& cls : h2.all_classes()) {
    ClassVerdict verdict;
    verdict.class_coords = cls.coords;
    Cocycle gamma = h2.representative_of(cls);
    ExtensionGroup g = ExtensionGroup::build(gamma);
    EmbeddingResult emb = embed(g);

    verdict.abelian = g.is_abelian();
    verdict.pairing_zero = commutator_pairing(gamma) == BilinearMap::zero(a, b);
    if (verdict.pairing_zero) ++zero_pairing;

    // (a) the section witness exhibits j o gamma ~ lift over L, exactly.
    verdict.witness_exact = emb.witness_identity_holds();

    // (b) the lift is null over L iff the extension is abelian.
    verdict.lift_null = emb.lifted_bilinear_null();

    verdict.pass = verdict.witness_exact && (verdict.lift_null == verdict.abelian) &&
                   (verdict.abelian == verdict.pairing_zero);
    all_pass = all_pass && verdict.pass;
    report.classes.push_back(std::move(verdict));
  }

  report.ext_subgroup_matches = Int(zero_pairing) == ext_space(a, b).order();
  report.pass = all_pass && report.ext_subgroup_matches;
  return report;
}

}  // namespace centext

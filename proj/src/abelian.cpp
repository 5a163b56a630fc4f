#include "centext/abelian.hpp"

#include <algorithm>
#include <set>

namespace centext {

AbelianGroup::AbelianGroup(std::vector<Int> factors) : factors_(std::move(factors)) {
  for (const Int& d : factors_) {
    if (d < 1) throw std::invalid_argument("AbelianGroup: moduli must be >= 1");
  }
}

Int AbelianGroup::order() const {
  Int n = 1;
  for (const Int& d : factors_) n *= d;
  return n;
}

Int AbelianGroup::exponent() const {
  Int e = 1;
  for (const Int& d : factors_) e = lcm(e, d);
  return e;
}

bool AbelianGroup::is_canonical() const {
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) return false;
    if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0) return false;
  }
  return true;
}

GroupElement AbelianGroup::zero() const {
  GroupElement x;
  x.coords.assign(factors_.size(), Int(0));
  x.parent_ = *this;
  return x;
}

GroupElement AbelianGroup::make(std::vector<Int> coords) const {
  if (coords.size() != factors_.size()) {
    throw std::invalid_argument("AbelianGroup::make: wrong coordinate count");
  }
  GroupElement x;
  x.coords = std::move(coords);
  for (size_t i = 0; i < factors_.size(); ++i) x.coords[i] = mod(x.coords[i], factors_[i]);
  x.parent_ = *this;
  return x;
}

GroupElement AbelianGroup::generator(Index i) const {
  GroupElement x = zero();
  x.coords[static_cast<size_t>(i)] = mod(Int(1), factors_[static_cast<size_t>(i)]);
  return x;
}

GroupElement AbelianGroup::element_at(const Int& index) const {
  GroupElement x = zero();
  Int rest = index;
  for (size_t i = factors_.size(); i-- > 0;) {
    x.coords[i] = mod(rest, factors_[i]);
    rest = floor_div(rest, factors_[i]);
  }
  return x;
}

Int AbelianGroup::index_of(const GroupElement& x) const {
  if (x.parent() != *this) throw std::invalid_argument("index_of: element of another group");
  Int idx = 0;
  for (size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + x.coords[i];
  return idx;
}

std::vector<GroupElement> AbelianGroup::elements(const Int& max_order) const {
  Int n = order();
  if (n > max_order) throw CapacityError("AbelianGroup::elements: group order exceeds bound");
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(to_long(n, "elements")));
  for (Int i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

namespace {
void require_same_parent(const GroupElement& x, const GroupElement& y) {
  if (x.parent() != y.parent()) {
    throw std::invalid_argument("group elements have mismatched parent groups");
  }
}
}  // namespace

GroupElement add(const GroupElement& x, const GroupElement& y) {
  require_same_parent(x, y);
  std::vector<Int> c(x.coords.size());
  const auto& d = x.parent().factors();
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod(x.coords[i] + y.coords[i], d[i]);
  return x.parent().make(std::move(c));
}

GroupElement neg(const GroupElement& x) {
  std::vector<Int> c(x.coords.size());
  const auto& d = x.parent().factors();
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod(-x.coords[i], d[i]);
  return x.parent().make(std::move(c));
}

GroupElement sub(const GroupElement& x, const GroupElement& y) { return add(x, neg(y)); }

GroupElement scalar_mul(const Int& n, const GroupElement& x) {
  std::vector<Int> c(x.coords.size());
  const auto& d = x.parent().factors();
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod(n * x.coords[i], d[i]);
  return x.parent().make(std::move(c));
}

Int element_order(const GroupElement& x) {
  Int n = 1;
  const auto& d = x.parent().factors();
  for (size_t i = 0; i < d.size(); ++i) {
    n = lcm(n, exact_div(d[i], gcd(d[i], x.coords[i])));
  }
  return n;
}

GroupElement apply_hom(const IntMat& hom, const GroupElement& x, const AbelianGroup& codomain) {
  if (hom.cols() != static_cast<Index>(x.coords.size()) || hom.rows() != codomain.rank()) {
    throw std::invalid_argument("apply_hom: dimension mismatch");
  }
  std::vector<Int> c(static_cast<size_t>(codomain.rank()), Int(0));
  for (Index r = 0; r < hom.rows(); ++r) {
    Int acc = 0;
    for (Index k = 0; k < hom.cols(); ++k) acc += hom(r, k) * x.coords[static_cast<size_t>(k)];
    c[static_cast<size_t>(r)] = acc;
  }
  return codomain.make(std::move(c));
}

bool hom_well_defined(const IntMat& hom, const AbelianGroup& domain, const AbelianGroup& codomain) {
  if (hom.cols() != domain.rank() || hom.rows() != codomain.rank()) return false;
  for (Index j = 0; j < hom.cols(); ++j) {
    for (Index i = 0; i < hom.rows(); ++i) {
      if (mod(domain.factors()[static_cast<size_t>(j)] * hom(i, j),
              codomain.factors()[static_cast<size_t>(i)]) != 0) {
        return false;
      }
    }
  }
  return true;
}

PresentedGroup reduce_presentation(Index generators, const IntMat& relations) {
  if (relations.rows() != generators) {
    throw std::invalid_argument("reduce_presentation: relation rows != generator count");
  }
  SmithNormalForm snf = smith_normal_form(relations);
  // Z^n / rel = Z^n / (u_inv d v_inv) ~ Z^n / d via y = u*x.
  std::vector<Int> kept_moduli;
  std::vector<Index> kept_rows;
  for (Index i = 0; i < generators; ++i) {
    Int q = i < std::min(relations.rows(), relations.cols()) ? snf.d(i, i) : Int(0);
    if (q == 0) {
      throw std::invalid_argument("reduce_presentation: quotient is infinite");
    }
    if (q > 1) {
      kept_moduli.push_back(q);
      kept_rows.push_back(i);
    }
  }
  PresentedGroup out;
  out.group = AbelianGroup(kept_moduli);
  out.generator_images.resize(out.group.rank(), generators);
  for (Index r = 0; r < out.group.rank(); ++r) {
    for (Index c = 0; c < generators; ++c) {
      out.generator_images(r, c) = mod(snf.u(kept_rows[static_cast<size_t>(r)], c),
                                       kept_moduli[static_cast<size_t>(r)]);
    }
  }
  return out;
}

Canonicalization canonicalize(const AbelianGroup& g) {
  const Index k = g.rank();
  IntMat rel = IntMat::Zero(k, k);
  for (Index i = 0; i < k; ++i) rel(i, i) = g.factors()[static_cast<size_t>(i)];
  SmithNormalForm snf = smith_normal_form(rel);

  std::vector<Int> kept_moduli;
  std::vector<Index> kept_rows;
  for (Index i = 0; i < k; ++i) {
    if (snf.diag(i) > 1) {
      kept_moduli.push_back(snf.diag(i));
      kept_rows.push_back(i);
    }
  }
  Canonicalization out;
  out.group = AbelianGroup(kept_moduli);
  const Index m = out.group.rank();
  out.to_canonical.resize(m, k);
  out.from_canonical.resize(k, m);
  for (Index r = 0; r < m; ++r) {
    out.to_canonical.row(r) = snf.u.row(kept_rows[static_cast<size_t>(r)]);
  }
  for (Index c = 0; c < m; ++c) {
    out.from_canonical.col(c) = snf.u_inv.col(kept_rows[static_cast<size_t>(c)]);
  }
  return out;
}

HomSpace hom_space(const AbelianGroup& a, const AbelianGroup& b) {
  HomSpace out;
  std::vector<Int> moduli;
  for (Index i = 0; i < a.rank(); ++i) {
    for (Index j = 0; j < b.rank(); ++j) {
      Int g = gcd(a.factors()[static_cast<size_t>(i)], b.factors()[static_cast<size_t>(j)]);
      if (g <= 1) continue;
      moduli.push_back(g);
      IntMat h = IntMat::Zero(b.rank(), a.rank());
      h(j, i) = exact_div(b.factors()[static_cast<size_t>(j)], g);
      out.basis.push_back(std::move(h));
    }
  }
  out.group = AbelianGroup(moduli);
  return out;
}

TensorSquare tensor_square(const AbelianGroup& a) {
  const Index k = a.rank();
  TensorSquare out;
  std::vector<Int> moduli;
  std::vector<Index> slot(static_cast<size_t>(k * k), -1);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      Int g = gcd(a.factors()[static_cast<size_t>(i)], a.factors()[static_cast<size_t>(j)]);
      if (g <= 1) continue;
      slot[static_cast<size_t>(i * k + j)] = static_cast<Index>(moduli.size());
      moduli.push_back(g);
    }
  }
  out.group = AbelianGroup(moduli);
  out.pair_images = IntMat::Zero(out.group.rank(), k * k);
  for (Index p = 0; p < k * k; ++p) {
    Index s = slot[static_cast<size_t>(p)];
    if (s >= 0) out.pair_images(s, p) = 1;
  }
  return out;
}

AbelianGroup ext_space(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Int> moduli;
  for (Index i = 0; i < a.rank(); ++i) {
    for (Index j = 0; j < b.rank(); ++j) {
      Int g = gcd(a.factors()[static_cast<size_t>(i)], b.factors()[static_cast<size_t>(j)]);
      if (g > 1) moduli.push_back(g);
    }
  }
  return AbelianGroup(moduli);
}

AbelianGroup subgroup_invariants(const IntMat& generators, const AbelianGroup& ambient) {
  if (generators.rows() != ambient.rank()) {
    throw std::invalid_argument("subgroup_invariants: wrong ambient rank");
  }
  // Distinct nonzero generators only; repeated columns are common when the
  // caller feeds in whole value tables.
  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> cols;
  for (Index j = 0; j < generators.cols(); ++j) {
    std::vector<Int> col(static_cast<size_t>(generators.rows()));
    bool nonzero = false;
    for (Index i = 0; i < generators.rows(); ++i) {
      col[static_cast<size_t>(i)] = mod(generators(i, j), ambient.factors()[static_cast<size_t>(i)]);
      nonzero = nonzero || col[static_cast<size_t>(i)] != 0;
    }
    if (nonzero && seen.insert(col).second) cols.push_back(std::move(col));
  }
  if (cols.empty()) return AbelianGroup();
  IntMat reduced(generators.rows(), static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    for (Index i = 0; i < generators.rows(); ++i) reduced(i, static_cast<Index>(j)) = cols[j][static_cast<size_t>(i)];
  }
  // Subgroup ~ Z^m / {c : reduced*c == 0 in ambient}.
  IntMat kernel = kernel_mod(reduced, ambient.factors());
  return AbelianGroup(quotient_invariants(kernel));
}

}  // namespace centext

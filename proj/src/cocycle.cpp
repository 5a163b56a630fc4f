#include "centext/cocycle.hpp"

#include <algorithm>

namespace centext {

namespace {

long checked_order(const AbelianGroup& a, const char* what) {
  return to_long(a.order(), what);
}

IntMat reduce_cols(IntMat m, const AbelianGroup& b) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      m(r, c) = mod(m(r, c), b.factors()[static_cast<size_t>(c)]);
    }
  }
  return m;
}

void require_same_groups(const AbelianGroup& a1, const AbelianGroup& b1,
                         const AbelianGroup& a2, const AbelianGroup& b2) {
  if (a1 != a2 || b1 != b2) {
    throw std::invalid_argument("cocycle operands live over different groups");
  }
}

}  // namespace

Cocycle::Cocycle(AbelianGroup a, AbelianGroup b, IntMat table, long axis_limit)
    : a_(std::move(a)), b_(std::move(b)) {
  n_ = checked_order(a_, "Cocycle");
  if (n_ > axis_limit) {
    throw CapacityError("Cocycle: table axis exceeds the configured limit");
  }
  if (table.rows() != Index(n_) * Index(n_) || table.cols() != b_.rank()) {
    throw std::invalid_argument("Cocycle: table has wrong shape");
  }
  table_ = reduce_cols(std::move(table), b_);
}

Cocycle Cocycle::zero(const AbelianGroup& a, const AbelianGroup& b) {
  long n = checked_order(a, "Cocycle::zero");
  return Cocycle(a, b, IntMat::Zero(Index(n) * Index(n), b.rank()));
}

GroupElement Cocycle::at(long i, long j) const {
  std::vector<Int> c(static_cast<size_t>(b_.rank()));
  for (Index k = 0; k < b_.rank(); ++k) c[static_cast<size_t>(k)] = table_(Index(i) * n_ + j, k);
  return b_.make(std::move(c));
}

GroupElement Cocycle::at(const GroupElement& x, const GroupElement& y) const {
  return at(to_long(a_.index_of(x), "Cocycle::at"), to_long(a_.index_of(y), "Cocycle::at"));
}

bool Cocycle::operator==(const Cocycle& o) const {
  return a_ == o.a_ && b_ == o.b_ && table_ == o.table_;
}

Cocycle operator+(const Cocycle& x, const Cocycle& y) {
  require_same_groups(x.a_, x.b_, y.a_, y.b_);
  return Cocycle(x.a_, x.b_, x.table_ + y.table_);
}

Cocycle operator-(const Cocycle& x, const Cocycle& y) {
  require_same_groups(x.a_, x.b_, y.a_, y.b_);
  return Cocycle(x.a_, x.b_, x.table_ - y.table_);
}

Cocycle operator*(const Int& n, const Cocycle& x) { return Cocycle(x.a_, x.b_, n * x.table_); }

CocycleValidation validate_cocycle(const Cocycle& c) {
  CocycleValidation out;
  const AbelianGroup& a = c.group_a();
  const long n = c.order_a();
  auto elems = a.elements();

  for (long i = 0; i < n && out.normalized; ++i) {
    if (c.at(0, i) != c.group_b().zero()) {
      out.normalized = false;
      out.normalization_violation = {0, i};
      break;
    }
    if (c.at(i, 0) != c.group_b().zero()) {
      out.normalized = false;
      out.normalization_violation = {i, 0};
      break;
    }
  }

  // Index of x*y, precomputed once; the identity scan is O(|A|^3).
  std::vector<long> mul(static_cast<size_t>(n) * n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      mul[static_cast<size_t>(i) * n + j] =
          to_long(a.index_of(add(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)])),
                  "validate_cocycle");
    }
  }
  for (long x = 0; x < n && out.identity; ++x) {
    for (long y = 0; y < n && out.identity; ++y) {
      GroupElement lhs_xy = c.at(x, y);
      const long xy = mul[static_cast<size_t>(x) * n + y];
      for (long z = 0; z < n; ++z) {
        GroupElement lhs = add(lhs_xy, c.at(xy, z));
        GroupElement rhs = add(c.at(y, z), c.at(x, mul[static_cast<size_t>(y) * n + z]));
        if (lhs != rhs) {
          out.identity = false;
          out.identity_violation = {{x, y, z}};
          break;
        }
      }
    }
  }
  return out;
}

Cocycle carry_cocycle(const Int& n, const Int& m) {
  if (n < 2 || m < 2) throw std::invalid_argument("carry_cocycle: n, m must be >= 2");
  AbelianGroup a({n}), b({m});
  long nl = to_long(n, "carry_cocycle");
  IntMat table(Index(nl) * Index(nl), 1);
  for (long x = 0; x < nl; ++x) {
    for (long y = 0; y < nl; ++y) {
      table(Index(x) * nl + y, 0) = mod(floor_div(Int(x) + Int(y), n), m);
    }
  }
  return Cocycle(a, b, std::move(table));
}

CochainMap::CochainMap(AbelianGroup a, AbelianGroup b, IntMat values)
    : a_(std::move(a)), b_(std::move(b)) {
  long n = checked_order(a_, "CochainMap");
  if (values.rows() != Index(n) || values.cols() != b_.rank()) {
    throw std::invalid_argument("CochainMap: values have wrong shape");
  }
  values_ = reduce_cols(std::move(values), b_);
  for (Index k = 0; k < b_.rank(); ++k) {
    if (values_(0, k) != 0) throw std::invalid_argument("CochainMap: value at identity must be 0");
  }
}

CochainMap CochainMap::zero(const AbelianGroup& a, const AbelianGroup& b) {
  long n = checked_order(a, "CochainMap::zero");
  return CochainMap(a, b, IntMat::Zero(Index(n), b.rank()));
}

GroupElement CochainMap::at(long i) const {
  std::vector<Int> c(static_cast<size_t>(b_.rank()));
  for (Index k = 0; k < b_.rank(); ++k) c[static_cast<size_t>(k)] = values_(Index(i), k);
  return b_.make(std::move(c));
}

GroupElement CochainMap::at(const GroupElement& x) const {
  return at(to_long(a_.index_of(x), "CochainMap::at"));
}

CochainMap operator+(const CochainMap& x, const CochainMap& y) {
  require_same_groups(x.a_, x.b_, y.a_, y.b_);
  return CochainMap(x.a_, x.b_, x.values_ + y.values_);
}

CochainMap operator-(const CochainMap& x) { return CochainMap(x.a_, x.b_, -x.values_); }

Cocycle coboundary(const CochainMap& h) {
  const AbelianGroup& a = h.group_a();
  const long n = to_long(a.order(), "coboundary");
  auto elems = a.elements();
  IntMat table(Index(n) * Index(n), h.group_b().rank());
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      GroupElement v = sub(add(h.at(x), h.at(y)),
                           h.at(add(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])));
      for (Index k = 0; k < h.group_b().rank(); ++k) {
        table(Index(x) * n + y, k) = v.coords[static_cast<size_t>(k)];
      }
    }
  }
  return Cocycle(a, h.group_b(), std::move(table));
}

std::optional<CochainMap> cohomologous(const Cocycle& c1, const Cocycle& c2) {
  require_same_groups(c1.group_a(), c1.group_b(), c2.group_a(), c2.group_b());
  const AbelianGroup& a = c1.group_a();
  const AbelianGroup& b = c1.group_b();
  const long n = c1.order_a();
  const Index kb = b.rank();
  Cocycle diff = c1 - c2;

  // A coboundary is symmetric (A is abelian), so an asymmetric difference
  // settles the question without solving anything.
  for (long x = 0; x < n; ++x) {
    for (long y = x + 1; y < n; ++y) {
      if (diff.at(x, y) != diff.at(y, x)) return std::nullopt;
    }
  }

  // Unknowns: h(x)_k for x = 1..n-1, k = 0..kb-1. Constraint rows are the
  // pairs (x, y) with 1 <= x <= y (the symmetric half suffices once the
  // difference is symmetric; identity rows are trivial).
  auto elems = a.elements();
  const Index unknowns = Index(n - 1) * kb;
  long pair_rows = 0;
  for (long x = 1; x < n; ++x) pair_rows += n - x;
  IntMat m = IntMat::Zero(Index(pair_rows) * kb, unknowns);
  IntVec rhs(Index(pair_rows) * kb);
  std::vector<Int> moduli(static_cast<size_t>(Index(pair_rows) * kb));

  auto unknown_at = [&](long x, Index k) { return Index(x - 1) * kb + k; };
  Index row = 0;
  for (long x = 1; x < n; ++x) {
    for (long y = x; y < n; ++y) {
      long xy = to_long(a.index_of(add(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])),
                        "cohomologous");
      GroupElement d = diff.at(x, y);
      for (Index k = 0; k < kb; ++k, ++row) {
        m(row, unknown_at(x, k)) += 1;
        m(row, unknown_at(y, k)) += 1;
        if (xy != 0) m(row, unknown_at(xy, k)) -= 1;
        rhs(row) = d.coords[static_cast<size_t>(k)];
        moduli[static_cast<size_t>(row)] = b.factors()[static_cast<size_t>(k)];
      }
    }
  }

  auto sol = solve_congruences(m, moduli, rhs);
  if (!sol) return std::nullopt;
  IntMat values = IntMat::Zero(Index(n), kb);
  for (long x = 1; x < n; ++x) {
    for (Index k = 0; k < kb; ++k) values(Index(x), k) = (*sol)(unknown_at(x, k));
  }
  return CochainMap(a, b, std::move(values));
}

BilinearMap::BilinearMap(AbelianGroup a, AbelianGroup b, IntMat entries)
    : a_(std::move(a)), b_(std::move(b)) {
  if (entries.rows() != a_.rank() * a_.rank() || entries.cols() != b_.rank()) {
    throw std::invalid_argument("BilinearMap: entries have wrong shape");
  }
  entries_ = reduce_cols(std::move(entries), b_);
}

BilinearMap BilinearMap::zero(const AbelianGroup& a, const AbelianGroup& b) {
  return BilinearMap(a, b, IntMat::Zero(a.rank() * a.rank(), b.rank()));
}

GroupElement BilinearMap::at_generators(Index i, Index j) const {
  std::vector<Int> c(static_cast<size_t>(b_.rank()));
  for (Index k = 0; k < b_.rank(); ++k) c[static_cast<size_t>(k)] = entries_(i * a_.rank() + j, k);
  return b_.make(std::move(c));
}

GroupElement BilinearMap::at(const GroupElement& x, const GroupElement& y) const {
  if (x.parent() != a_ || y.parent() != a_) {
    throw std::invalid_argument("BilinearMap::at: element of another group");
  }
  std::vector<Int> c(static_cast<size_t>(b_.rank()), Int(0));
  const Index k = a_.rank();
  for (Index i = 0; i < k; ++i) {
    if (x.coords[static_cast<size_t>(i)] == 0) continue;
    for (Index j = 0; j < k; ++j) {
      if (y.coords[static_cast<size_t>(j)] == 0) continue;
      Int w = x.coords[static_cast<size_t>(i)] * y.coords[static_cast<size_t>(j)];
      for (Index t = 0; t < b_.rank(); ++t) {
        c[static_cast<size_t>(t)] += w * entries_(i * k + j, t);
      }
    }
  }
  return b_.make(std::move(c));
}

bool BilinearMap::compatible() const {
  const Index k = a_.rank();
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      for (Index t = 0; t < b_.rank(); ++t) {
        const Int& e = b_.factors()[static_cast<size_t>(t)];
        if (mod(a_.factors()[static_cast<size_t>(i)] * entries_(i * k + j, t), e) != 0) return false;
        if (mod(a_.factors()[static_cast<size_t>(j)] * entries_(i * k + j, t), e) != 0) return false;
      }
    }
  }
  return true;
}

bool BilinearMap::is_alternating() const {
  for (const GroupElement& x : a_.elements()) {
    if (at(x, x) != b_.zero()) return false;
  }
  return true;
}

bool BilinearMap::operator==(const BilinearMap& o) const {
  return a_ == o.a_ && b_ == o.b_ && entries_ == o.entries_;
}

BilinearMap operator-(const BilinearMap& x, const BilinearMap& y) {
  require_same_groups(x.a_, x.b_, y.a_, y.b_);
  return BilinearMap(x.a_, x.b_, x.entries_ - y.entries_);
}

BilinearMap BilinearMap::transpose() const {
  const Index k = a_.rank();
  IntMat e(entries_.rows(), entries_.cols());
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) e.row(i * k + j) = entries_.row(j * k + i);
  }
  return BilinearMap(a_, b_, std::move(e));
}

Cocycle bilinear_to_cocycle(const BilinearMap& b) {
  if (!b.compatible()) {
    throw std::invalid_argument("bilinear_to_cocycle: generator orders do not annihilate entries");
  }
  const AbelianGroup& a = b.group_a();
  const long n = to_long(a.order(), "bilinear_to_cocycle");
  auto elems = a.elements();
  IntMat table(Index(n) * Index(n), b.group_b().rank());
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      GroupElement v = b.at(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)]);
      for (Index k = 0; k < b.group_b().rank(); ++k) {
        table(Index(x) * n + y, k) = v.coords[static_cast<size_t>(k)];
      }
    }
  }
  return Cocycle(a, b.group_b(), std::move(table));
}

BilinearCheck is_bilinear(const Cocycle& c) {
  BilinearCheck out;
  const AbelianGroup& a = c.group_a();
  const long n = c.order_a();
  auto elems = a.elements();
  std::vector<long> mul(static_cast<size_t>(n) * n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      mul[static_cast<size_t>(i) * n + j] =
          to_long(a.index_of(add(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)])),
                  "is_bilinear");
    }
  }
  for (long x = 0; x < n; ++x) {
    for (long x2 = 0; x2 < n; ++x2) {
      const long xx2 = mul[static_cast<size_t>(x) * n + x2];
      for (long y = 0; y < n; ++y) {
        if (c.at(xx2, y) != add(c.at(x, y), c.at(x2, y))) {
          out.map = std::nullopt;
          out.left_law = true;
          out.violation = {{x, x2, y}};
          return out;
        }
      }
    }
  }
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      for (long y2 = 0; y2 < n; ++y2) {
        if (c.at(x, mul[static_cast<size_t>(y) * n + y2]) != add(c.at(x, y), c.at(x, y2))) {
          out.map = std::nullopt;
          out.left_law = false;
          out.violation = {{x, y, y2}};
          return out;
        }
      }
    }
  }
  const Index k = a.rank();
  IntMat entries(k * k, c.group_b().rank());
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      GroupElement v = c.at(a.generator(i), a.generator(j));
      for (Index t = 0; t < c.group_b().rank(); ++t) {
        entries(i * k + j, t) = v.coords[static_cast<size_t>(t)];
      }
    }
  }
  out.map = BilinearMap(a, c.group_b(), std::move(entries));
  return out;
}

BilinearMap commutator_pairing(const Cocycle& c) {
  const AbelianGroup& a = c.group_a();
  const long n = c.order_a();
  IntMat table(Index(n) * Index(n), c.group_b().rank());
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      GroupElement v = sub(c.at(x, y), c.at(y, x));
      for (Index k = 0; k < c.group_b().rank(); ++k) {
        table(Index(x) * n + y, k) = v.coords[static_cast<size_t>(k)];
      }
    }
  }
  Cocycle pairing_table(a, c.group_b(), std::move(table));
  BilinearCheck check = is_bilinear(pairing_table);
  if (!check.map) {
    throw std::logic_error("commutator_pairing: pairing of a valid cocycle must be bilinear");
  }
  if (!check.map->is_alternating()) {
    throw std::logic_error("commutator_pairing: pairing must be alternating");
  }
  return *check.map;
}

Cocycle pullback(const AbelianGroup& a_prime, const IntMat& psi, const Cocycle& c) {
  if (!hom_well_defined(psi, a_prime, c.group_a())) {
    throw std::invalid_argument("pullback: map is not a homomorphism on residues");
  }
  const long n = to_long(a_prime.order(), "pullback");
  auto elems = a_prime.elements();
  IntMat table(Index(n) * Index(n), c.group_b().rank());
  std::vector<GroupElement> images;
  images.reserve(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    images.push_back(apply_hom(psi, elems[static_cast<size_t>(i)], c.group_a()));
  }
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      GroupElement v = c.at(images[static_cast<size_t>(x)], images[static_cast<size_t>(y)]);
      for (Index k = 0; k < c.group_b().rank(); ++k) {
        table(Index(x) * n + y, k) = v.coords[static_cast<size_t>(k)];
      }
    }
  }
  return Cocycle(a_prime, c.group_b(), std::move(table));
}

Cocycle pushforward(const IntMat& phi, const AbelianGroup& b_prime, const Cocycle& c) {
  if (!hom_well_defined(phi, c.group_b(), b_prime)) {
    throw std::invalid_argument("pushforward: map is not a homomorphism on residues");
  }
  const long n = c.order_a();
  IntMat table(Index(n) * Index(n), b_prime.rank());
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      GroupElement v = apply_hom(phi, c.at(x, y), b_prime);
      for (Index k = 0; k < b_prime.rank(); ++k) {
        table(Index(x) * n + y, k) = v.coords[static_cast<size_t>(k)];
      }
    }
  }
  return Cocycle(c.group_a(), b_prime, std::move(table));
}

CochainMap pushforward(const IntMat& phi, const AbelianGroup& b_prime, const CochainMap& h) {
  if (!hom_well_defined(phi, h.group_b(), b_prime)) {
    throw std::invalid_argument("pushforward: map is not a homomorphism on residues");
  }
  const long n = to_long(h.group_a().order(), "pushforward");
  IntMat values(Index(n), b_prime.rank());
  for (long x = 0; x < n; ++x) {
    GroupElement v = apply_hom(phi, h.at(x), b_prime);
    for (Index k = 0; k < b_prime.rank(); ++k) values(Index(x), k) = v.coords[static_cast<size_t>(k)];
  }
  return CochainMap(h.group_a(), b_prime, std::move(values));
}

std::vector<BilinearMap> bilinear_basis(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<BilinearMap> out;
  const Index k = a.rank();
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      Int gij = gcd(a.factors()[static_cast<size_t>(i)], a.factors()[static_cast<size_t>(j)]);
      for (Index t = 0; t < b.rank(); ++t) {
        Int g = gcd(gij, b.factors()[static_cast<size_t>(t)]);
        if (g <= 1) continue;
        IntMat e = IntMat::Zero(k * k, b.rank());
        e(i * k + j, t) = exact_div(b.factors()[static_cast<size_t>(t)], g);
        out.emplace_back(a, b, std::move(e));
      }
    }
  }
  return out;
}

Int bilinear_count(const AbelianGroup& a, const AbelianGroup& b) {
  Int n = 1;
  const Index k = a.rank();
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      Int gij = gcd(a.factors()[static_cast<size_t>(i)], a.factors()[static_cast<size_t>(j)]);
      for (Index t = 0; t < b.rank(); ++t) {
        n *= gcd(gij, b.factors()[static_cast<size_t>(t)]);
      }
    }
  }
  return n;
}

std::vector<BilinearMap> all_bilinear_maps(const AbelianGroup& a, const AbelianGroup& b,
                                           const Int& cap) {
  Int count = bilinear_count(a, b);
  if (count > cap) {
    throw CapacityError("all_bilinear_maps: search space exceeds configured bound");
  }
  std::vector<BilinearMap> basis = bilinear_basis(a, b);
  std::vector<Int> orders;
  orders.reserve(basis.size());
  for (const BilinearMap& m : basis) {
    // Order of the basis map inside Hom(A (x) A, B).
    Int o = 1;
    for (Index r = 0; r < m.entries().rows(); ++r) {
      for (Index c = 0; c < m.entries().cols(); ++c) {
        if (m.entries()(r, c) != 0) {
          o = lcm(o, exact_div(b.factors()[static_cast<size_t>(c)],
                               gcd(b.factors()[static_cast<size_t>(c)], m.entries()(r, c))));
        }
      }
    }
    orders.push_back(o);
  }
  std::vector<BilinearMap> out;
  out.reserve(static_cast<size_t>(to_long(count, "all_bilinear_maps")));
  std::vector<Int> coeff(basis.size(), Int(0));
  while (true) {
    IntMat e = IntMat::Zero(a.rank() * a.rank(), b.rank());
    for (size_t i = 0; i < basis.size(); ++i) e += coeff[i] * basis[i].entries();
    out.emplace_back(a, b, std::move(e));
    size_t pos = 0;
    while (pos < coeff.size()) {
      coeff[pos] += 1;
      if (coeff[pos] < orders[pos]) break;
      coeff[pos] = 0;
      ++pos;
    }
    if (pos == coeff.size()) break;
  }
  return out;
}

}  // namespace centext

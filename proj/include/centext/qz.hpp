#pragma once

#include <optional>
#include <vector>

#include "centext/abelian.hpp"

// Exact arithmetic in finite-rank powers of Q/Z. Elements are Eigen vectors
// of reduced rationals, every coordinate normalized into [0, 1). The ambient
// divisible group is never materialized: only finitely many values exist at
// any time, each of finite order.

namespace centext {

/// x mod 1, reduced, in [0, 1).
Rat qz_reduce(const Rat& x);

RatVec qz_zero(Index rank);
RatVec qz_reduce(RatVec v);
RatVec qz_add(const RatVec& x, const RatVec& y);
RatVec qz_neg(const RatVec& x);
RatVec qz_sub(const RatVec& x, const RatVec& y);
RatVec qz_scale(const Int& n, const RatVec& x);
bool qz_is_zero(const RatVec& x);
bool qz_equal(const RatVec& x, const RatVec& y);

/// Order of x in (Q/Z)^k: the lcm of the coordinate denominators.
Int qz_order(const RatVec& x);

/// Least common multiple of all denominators appearing in `values` (>= 1).
Int qz_denominator_lcm(const std::vector<RatVec>& values);

/// The canonical n-th root: coordinatewise, the reduced fraction a/b maps to
/// a/(b*n), reduced again. n times the result gives back the input.
RatVec qz_nth_root(const RatVec& x, const Int& n);

/// Dense table A x A -> (Q/Z)^k, indexed like Cocycle tables.
struct QZTable {
  AbelianGroup a;
  Index rank = 0;
  std::vector<RatVec> values;  // |A|^2 entries, row-major

  const RatVec& at(long i, long j) const;
  RatVec& at(long i, long j);
  static QZTable zero(const AbelianGroup& a, Index rank);
};

/// Map A -> (Q/Z)^k with value 0 at the identity.
struct QZMap {
  AbelianGroup a;
  Index rank = 0;
  std::vector<RatVec> values;  // |A| entries

  const RatVec& at(long i) const { return values[static_cast<size_t>(i)]; }
  static QZMap zero(const AbelianGroup& a, Index rank);
};

/// (x, y) |-> h(x) + h(y) - h(xy) over Q/Z coordinates.
QZTable qz_coboundary(const QZMap& h);

/// Bilinear map A x A -> (Q/Z)^k by generator values, like BilinearMap.
struct QZBilinear {
  AbelianGroup a;
  Index rank = 0;
  std::vector<RatVec> entries;  // rank(A)^2 generator-pair values

  const RatVec& at_generators(Index i, Index j) const;
  RatVec at(const GroupElement& x, const GroupElement& y) const;
  bool is_symmetric_on(const AbelianGroup& a) const;
  static QZBilinear zero(const AbelianGroup& a, Index rank);
};

QZTable qz_bilinear_table(const QZBilinear& b);

bool qz_tables_equal(const QZTable& x, const QZTable& y);
QZTable qz_table_sub(const QZTable& x, const QZTable& y);

/// Coboundary witness for a table with values in (Q/Z)^k, or nullopt. Any
/// solution h of dh = t satisfies ord(x) * h(x) = sum_{s<ord(x)} t(s x, x),
/// so denominators of h divide M0 * exp(A) where M0 is the lcm of the
/// denominators in t; the search over that finite stand-in is complete.
std::optional<QZMap> qz_coboundary_witness(const QZTable& t);

}  // namespace centext

#include "centext/qz.hpp"

namespace centext {

Rat qz_reduce(const Rat& x) {
  Rat r = x;
  r.canonicalize();
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  r -= Rat(fl);
  r.canonicalize();
  return r;
}

RatVec qz_zero(Index rank) {
  RatVec v(rank);
  for (Index i = 0; i < rank; ++i) v(i) = 0;
  return v;
}

RatVec qz_reduce(RatVec v) {
  for (Index i = 0; i < v.size(); ++i) v(i) = qz_reduce(v(i));
  return v;
}

RatVec qz_add(const RatVec& x, const RatVec& y) { return qz_reduce(RatVec(x + y)); }
RatVec qz_neg(const RatVec& x) { return qz_reduce(RatVec(-x)); }
RatVec qz_sub(const RatVec& x, const RatVec& y) { return qz_reduce(RatVec(x - y)); }

RatVec qz_scale(const Int& n, const RatVec& x) {
  RatVec v = x;
  for (Index i = 0; i < v.size(); ++i) v(i) = qz_reduce(Rat(n) * v(i));
  return v;
}

bool qz_is_zero(const RatVec& x) {
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) != 0) return false;
  }
  return true;
}

bool qz_equal(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) return false;
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) != y(i)) return false;
  }
  return true;
}

Int qz_order(const RatVec& x) {
  Int n = 1;
  for (Index i = 0; i < x.size(); ++i) n = lcm(n, Int(x(i).get_den()));
  return n;
}

Int qz_denominator_lcm(const std::vector<RatVec>& values) {
  Int n = 1;
  for (const RatVec& v : values) n = lcm(n, qz_order(v));
  return n;
}

RatVec qz_nth_root(const RatVec& x, const Int& n) {
  if (n < 1) throw std::invalid_argument("qz_nth_root: n must be >= 1");
  RatVec v(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Rat r(Int(x(i).get_num()), Int(x(i).get_den()) * n);
    r.canonicalize();
    v(i) = r;
  }
  return qz_reduce(std::move(v));
}

const RatVec& QZTable::at(long i, long j) const {
  long n = to_long(a.order(), "QZTable");
  return values[static_cast<size_t>(i * n + j)];
}

RatVec& QZTable::at(long i, long j) {
  long n = to_long(a.order(), "QZTable");
  return values[static_cast<size_t>(i * n + j)];
}

QZTable QZTable::zero(const AbelianGroup& a, Index rank) {
  QZTable t;
  t.a = a;
  t.rank = rank;
  long n = to_long(a.order(), "QZTable::zero");
  t.values.assign(static_cast<size_t>(n) * n, qz_zero(rank));
  return t;
}

QZMap QZMap::zero(const AbelianGroup& a, Index rank) {
  QZMap m;
  m.a = a;
  m.rank = rank;
  m.values.assign(static_cast<size_t>(to_long(a.order(), "QZMap::zero")), qz_zero(rank));
  return m;
}

QZTable qz_coboundary(const QZMap& h) {
  QZTable t = QZTable::zero(h.a, h.rank);
  long n = to_long(h.a.order(), "qz_coboundary");
  auto elems = h.a.elements();
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      long xy = to_long(
          h.a.index_of(add(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])),
          "qz_coboundary");
      t.at(x, y) = qz_sub(qz_add(h.at(x), h.at(y)), h.at(xy));
    }
  }
  return t;
}

const RatVec& QZBilinear::at_generators(Index i, Index j) const {
  return entries[static_cast<size_t>(i * a.rank() + j)];
}

RatVec QZBilinear::at(const GroupElement& x, const GroupElement& y) const {
  if (x.parent() != a || y.parent() != a) {
    throw std::invalid_argument("QZBilinear::at: element of another group");
  }
  RatVec acc = qz_zero(rank);
  const Index k = a.rank();
  for (Index i = 0; i < k; ++i) {
    if (x.coords[static_cast<size_t>(i)] == 0) continue;
    for (Index j = 0; j < k; ++j) {
      if (y.coords[static_cast<size_t>(j)] == 0) continue;
      Int w = x.coords[static_cast<size_t>(i)] * y.coords[static_cast<size_t>(j)];
      acc = qz_add(acc, qz_scale(w, at_generators(i, j)));
    }
  }
  return acc;
}

bool QZBilinear::is_symmetric_on(const AbelianGroup& group) const {
  const Index k = group.rank();
  for (Index i = 0; i < k; ++i) {
    for (Index j = i + 1; j < k; ++j) {
      if (!qz_equal(at_generators(i, j), at_generators(j, i))) return false;
    }
  }
  return true;
}

QZBilinear QZBilinear::zero(const AbelianGroup& a, Index rank) {
  QZBilinear b;
  b.a = a;
  b.rank = rank;
  b.entries.assign(static_cast<size_t>(a.rank() * a.rank()), qz_zero(rank));
  return b;
}

QZTable qz_bilinear_table(const QZBilinear& b) {
  QZTable t = QZTable::zero(b.a, b.rank);
  long n = to_long(b.a.order(), "qz_bilinear_table");
  auto elems = b.a.elements();
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      t.at(x, y) = b.at(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)]);
    }
  }
  return t;
}

bool qz_tables_equal(const QZTable& x, const QZTable& y) {
  if (x.a != y.a || x.rank != y.rank) return false;
  for (size_t i = 0; i < x.values.size(); ++i) {
    if (!qz_equal(x.values[i], y.values[i])) return false;
  }
  return true;
}

QZTable qz_table_sub(const QZTable& x, const QZTable& y) {
  if (x.a != y.a || x.rank != y.rank) {
    throw std::invalid_argument("qz_table_sub: mismatched tables");
  }
  QZTable t = x;
  for (size_t i = 0; i < t.values.size(); ++i) t.values[i] = qz_sub(x.values[i], y.values[i]);
  return t;
}

std::optional<QZMap> qz_coboundary_witness(const QZTable& t) {
  const AbelianGroup& a = t.a;
  const long n = to_long(a.order(), "qz_coboundary_witness");
  const Index k = t.rank;
  if (n == 1 || k == 0) {
    bool all_zero = true;
    for (const RatVec& v : t.values) all_zero = all_zero && qz_is_zero(v);
    if (!all_zero) return std::nullopt;
    return QZMap::zero(a, k);
  }
  // Denominator bound M1 = M0 * exp(A); see header.
  Int m0 = qz_denominator_lcm(t.values);
  Int m1 = m0 * a.exponent();

  auto elems = a.elements();
  const Index unknowns = Index(n - 1) * k;
  const Index rows = Index(n - 1) * Index(n - 1) * k;
  IntMat m = IntMat::Zero(rows, unknowns);
  IntVec rhs(rows);
  std::vector<Int> moduli(static_cast<size_t>(rows), m1);
  auto slot = [&](long x, Index w) { return Index(x - 1) * k + w; };
  Index row = 0;
  for (long x = 1; x < n; ++x) {
    for (long y = 1; y < n; ++y) {
      long xy = to_long(
          a.index_of(add(elems[static_cast<size_t>(x)], elems[static_cast<size_t>(y)])),
          "qz_coboundary_witness");
      const RatVec& v = t.at(x, y);
      for (Index w = 0; w < k; ++w, ++row) {
        m(row, slot(x, w)) += 1;
        m(row, slot(y, w)) += 1;
        if (xy != 0) m(row, slot(xy, w)) -= 1;
        rhs(row) = Int(v(w).get_num()) * exact_div(m1, Int(v(w).get_den()));
      }
    }
  }
  // Identity rows of the table must vanish for a coboundary.
  for (long i = 0; i < n; ++i) {
    if (!qz_is_zero(t.at(0, i)) || !qz_is_zero(t.at(i, 0))) return std::nullopt;
  }
  auto sol = solve_congruences(m, moduli, rhs);
  if (!sol) return std::nullopt;
  QZMap h = QZMap::zero(a, k);
  for (long x = 1; x < n; ++x) {
    RatVec v(k);
    for (Index w = 0; w < k; ++w) {
      Rat r((*sol)(slot(x, w)), m1);
      r.canonicalize();
      v(w) = r;
    }
    h.values[static_cast<size_t>(x)] = qz_reduce(std::move(v));
  }
  return h;
}

}  // namespace centext

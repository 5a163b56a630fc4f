#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

// Scalar types and Eigen adapters used throughout the library.
//
// All arithmetic is exact: Int is an arbitrary-precision integer and Rat an
// arbitrary-precision rational. Fixed-width integers appear only as loop
// indices.

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace centext {

using Int = mpz_class;
using Rat = mpq_class;
using Index = Eigen::Index;

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// Thrown when an input exceeds a configured enumeration or table bound.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Least nonnegative residue of a modulo m (m > 0). mod(x, 1) == 0.
inline Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Floor quotient, matching mod() above: a == floor_div(a,m)*m + mod(a,m).
inline Int floor_div(const Int& a, const Int& m) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return q;
}

/// Exact division; throws if b does not divide a.
inline Int exact_div(const Int& a, const Int& b) {
  if (b == 0 || a % b != 0) {
    throw std::invalid_argument("exact_div: not divisible");
  }
  return a / b;
}

/// n*(n-1)/2 as an exact integer, valid for any n (also negative).
inline Int binomial2(const Int& n) { return n * (n - 1) / 2; }

inline long to_long(const Int& x, const char* what) {
  if (!x.fits_slong_p()) {
    throw CapacityError(std::string(what) + ": value does not fit a machine word");
  }
  return x.get_si();
}

/// Determinant by fraction-free Gaussian elimination (Bareiss). Exact.
Int determinant(const IntMat& m);

/// Componentwise least nonnegative residues; moduli[i] applies to row i.
IntVec mod_rows(const IntVec& v, const std::vector<Int>& moduli);

}  // namespace centext

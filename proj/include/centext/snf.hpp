#pragma once

#include <optional>
#include <vector>

#include "centext/numeric.hpp"

// Integer linear algebra backbone: Smith normal form over Z and congruence
// systems modulo a vector of moduli. Everything downstream (canonical forms,
// Hom/Ext, H^2, witness searches) reduces to these two primitives.

namespace centext {

/// u * m * v = d with u, v unimodular and d diagonal, d(i,i) >= 0 and
/// d(i,i) | d(i+1,i+1). Inverse transforms are tracked alongside.
struct SmithNormalForm {
  IntMat u, d, v;
  IntMat u_inv, v_inv;
  Index rank = 0;  // number of nonzero diagonal entries

  Int diag(Index i) const { return d(i, i); }
};

struct SnfOptions {
  bool with_u = true;  // skip the row transform when only v is needed
  bool with_v = true;  // skip the column transform when only u is needed

  // Valid only when the caller needs d and v for congruences modulo
  // reduce_mod (entries may be changed by multiples of it, which leaves the
  // solution set alone but breaks u*m*v == d as an exact equation).
  Int reduce_mod = 0;

  // Stop at a diagonal matrix without enforcing the divisibility chain; the
  // kernel-modulo computation only needs diagonal decoupling.
  bool diagonal_only = false;
};

/// Deterministic SNF: pivot is the smallest-absolute-value nonzero entry of
/// the trailing submatrix, ties broken row-major.
SmithNormalForm smith_normal_form(const IntMat& m, const SnfOptions& opts = {});

/// Solves m*x == rhs (mod moduli[i] in row i, componentwise) over the
/// integers. moduli[i] == 0 means exact equality in that row. Returns the
/// canonical solution: the SNF particular solution with zero free
/// coordinates, then each entry x[j] reduced to its least nonnegative
/// residue modulo the period of coordinate j in the homogeneous solution
/// lattice. Returns nullopt when the system has no solution.
std::optional<IntVec> solve_congruences(const IntMat& m,
                                        const std::vector<Int>& moduli,
                                        const IntVec& rhs);

/// Lattice of solutions of m*x == 0 (mod modulus), uniform modulus >= 1.
/// basis = v * diag(steps) with v unimodular; v_inv is tracked so membership
/// and coordinates can be decided exactly. Prime moduli take a row-reduction
/// fast path; the general case reduces via SNF.
struct KernelLattice {
  IntMat basis;            // n x n, columns span the solution lattice
  IntMat v, v_inv;         // unimodular change of coordinates
  std::vector<Int> steps;  // basis = v * diag(steps)
};
KernelLattice kernel_mod_uniform(const IntMat& m, const Int& modulus);

/// Columns of a full-rank basis of {x : m*x == 0 mod moduli[i] row-wise},
/// heterogeneous moduli (each >= 1). Computed via auxiliary modulus columns.
IntMat kernel_mod(const IntMat& m, const std::vector<Int>& moduli);

/// Invariant factors (>= 2, divisibility chain) of Z^n / columnLattice(m),
/// for a lattice of full rank n; throws if the quotient is infinite.
std::vector<Int> quotient_invariants(const IntMat& lattice_basis);

}  // namespace centext

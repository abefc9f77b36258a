#pragma once

#include <optional>
#include <vector>

#include "modvis/errors.hpp"
#include "modvis/intmatrix.hpp"
#include "modvis/ratmatrix.hpp"
#include "modvis/rational.hpp"

namespace modvis {

// --- normal forms -----------------------------------------------------------

// Canonical row-style Hermite normal form: zero rows dropped, pivots positive,
// entries above each pivot reduced into [0, pivot). Equal row lattices have
// bitwise-equal HNF.
IntegerMatrix hnf_rows(const IntegerMatrix& m);

struct SnfResult {
  IntegerMatrix d;     // diagonal, d1 | d2 | ... >= 0
  IntegerMatrix u;     // unimodular, rows x rows
  IntegerMatrix v;     // unimodular, cols x cols
  IntegerMatrix vinv;  // inverse of v
};

// U * M * V = D with U, V unimodular.
SnfResult smith_normal_form(const IntegerMatrix& m);

std::vector<Int> invariant_factors(const IntegerMatrix& m);

// Basis rows of {x : x * M = 0}; the result is a saturated lattice in Z^rows.
IntegerMatrix left_kernel(const IntegerMatrix& m);

// Basis rows of {v : M * v^T = 0} in Z^cols.
inline IntegerMatrix right_kernel(const IntegerMatrix& m) { return left_kernel(m.transpose()); }

// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntegerMatrix& m);
Rational determinant(const RationalMatrix& m);

// --- exact solves ------------------------------------------------------------

// X with X * A = B over Q (A full row rank; every row of B in the row span of
// A). Throws SpanMismatch if the system is inconsistent or A is rank-deficient.
RationalMatrix solve_left(const IntegerMatrix& a, const IntegerMatrix& b);
RationalMatrix solve_left(const IntegerMatrix& a, const RationalMatrix& b);

// X with A * X = B over Q (A full column rank, consistent system).
RationalMatrix solve_right(const IntegerMatrix& a, const IntegerMatrix& b);

// --- integer lattices --------------------------------------------------------

// Finite-rank subgroup of Z^n held by a canonical HNF basis, so equality of
// lattices is equality of the stored bases.
class IntegerLattice {
 public:
  IntegerLattice() = default;
  IntegerLattice(long ambient, IntegerMatrix generating_rows);

  static IntegerLattice standard(long n) { return IntegerLattice(n, IntegerMatrix::identity(n)); }
  static IntegerLattice zero(long n) { return IntegerLattice(n, IntegerMatrix(0, n)); }

  long ambient_rank() const { return ambient_; }
  long rank() const { return basis_.rows(); }
  const IntegerMatrix& basis() const { return basis_; }

  bool operator==(const IntegerLattice& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const IntegerLattice& o) const { return !(*this == o); }

  bool contains(const std::vector<Int>& v) const;
  bool contains(const std::vector<Rational>& v) const;
  bool contains(const IntegerLattice& sub) const;

  // Coordinates of v in the stored basis, if v lies in the lattice.
  std::optional<std::vector<Int>> coordinates(const std::vector<Int>& v) const;

 private:
  long ambient_ = 0;
  IntegerMatrix basis_;  // rank x ambient, canonical HNF
};

IntegerLattice saturate(const IntegerLattice& l);
IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b);

// |det T| for the change of basis carrying l1 onto l2 inside their common
// Q-span; equals [l1 : l2] when l2 is a finite-index sublattice of l1.
Rational generalized_index(const IntegerLattice& l1, const IntegerLattice& l2);

// Elementary divisors (> 1) of l_big / l_small.
std::vector<Int> quotient_invariants(const IntegerLattice& l_big, const IntegerLattice& l_small);

// Surjection q: Z^n -> Z^(n-k) with kernel exactly the saturated sublattice w;
// returned as the n x (n-k) matrix acting on row vectors by x -> x * Q.
IntegerMatrix quotient_map(const IntegerLattice& w);

// --- rational lattices -------------------------------------------------------

// (1/den) * L for an IntegerLattice L; normal form divides out the common
// content so equal lattices compare equal componentwise.
class RationalLattice {
 public:
  RationalLattice() = default;
  RationalLattice(IntegerLattice lat, Int den);
  explicit RationalLattice(IntegerLattice lat) : RationalLattice(std::move(lat), 1) {}
  RationalLattice(long ambient, const std::vector<std::vector<Rational>>& rows);

  long ambient_rank() const { return lat_.ambient_rank(); }
  long rank() const { return lat_.rank(); }
  const IntegerLattice& scaled_lattice() const { return lat_; }
  const Int& denominator() const { return den_; }

  bool operator==(const RationalLattice& o) const { return den_ == o.den_ && lat_ == o.lat_; }
  bool operator!=(const RationalLattice& o) const { return !(*this == o); }

  bool contains(const std::vector<Rational>& v) const;
  bool contains(const RationalLattice& sub) const;
  std::vector<std::vector<Rational>> basis_rows() const;

 private:
  void normalize();
  IntegerLattice lat_;
  Int den_ = 1;
};

RationalLattice lattice_sum(const RationalLattice& a, const RationalLattice& b);
RationalLattice lattice_intersect(const RationalLattice& a, const RationalLattice& b);
Rational generalized_index(const RationalLattice& l1, const RationalLattice& l2);
std::vector<Int> quotient_invariants(const RationalLattice& l_big, const RationalLattice& l_small);

}  // namespace modvis

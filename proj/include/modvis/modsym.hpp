#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "modvis/intmatrix.hpp"
#include "modvis/lattice.hpp"
#include "modvis/p1.hpp"
#include "modvis/ratmatrix.hpp"
#include "modvis/rational.hpp"

namespace modvis {

// A cusp a/c in lowest terms with c >= 0; infinity is 1/0.
struct Cusp {
  long num = 0;
  long den = 1;
  bool operator==(const Cusp& o) const { return num == o.num && den == o.den; }
};

Cusp cusp_reduce(long num, long den);
bool cusps_equivalent(long level, const Cusp& a, const Cusp& b);

// Sparse integer row: list of (column, coefficient), sorted by column.
using SparseIntRow = std::vector<std::pair<long, Int>>;

// Weight-2 Manin-symbol presentation of the homology of X_0(N).
//
// Coordinates come in three layers:
//   V: the rational relation quotient, dimension D, basis = free generators;
//   y: basis of the lattice spanned by all Manin symbols inside V (H holds
//      that basis as rows, scaled by delta);
//   z: basis of the cuspidal integral homology H_1(X_0(N), Z), the rows of
//      k_basis in y-coordinates. In z-coordinates H_1(Z) is the standard
//      lattice Z^(2g).
class ModSymSpace {
 public:
  long level = 1;
  P1Table p1;

  long dim_v = 0;               // D
  std::vector<long> free_gen;   // V-coordinate -> symbol index
  std::vector<SparseIntRow> sym_v;  // symbol -> delta * (image in V-coords)
  Int delta = 1;

  IntegerMatrix h;        // D x D upper-triangular HNF, rows = y-basis * delta
  IntegerMatrix k_basis;  // 2g x D, rows = integral cuspidal basis in y-coords
  std::vector<long> k_pivots;  // pivot column of each k_basis row

  std::vector<Cusp> cusps;
  RationalMatrix boundary_y;  // #cusps x D, boundary of the y-basis vectors

  IntegerMatrix star_y;  // D x D
  IntegerMatrix star_z;  // 2g x 2g

  long cuspidal_rank() const { return k_basis.rows(); }  // 2g
  long genus() const { return cuspidal_rank() / 2; }

  IntegerLattice integral_lattice() const { return IntegerLattice::standard(cuspidal_rank()); }

  // y-coordinates of a single Manin symbol.
  std::vector<Int> symbol_y(long symbol_index) const;

  // Solves H^T t = r by forward substitution; every division must be exact.
  std::vector<Int> solve_ht(const std::vector<Int>& r) const;

  // y -> z for vectors in the span of the cuspidal basis.
  std::vector<Rational> y_to_z(const std::vector<Rational>& y) const;
  std::vector<Rational> z_to_y(const std::vector<Rational>& z) const;

  // Cached Hecke matrices on z-coordinates, keyed by index n.
  IntegerMatrix hecke_z(long n) const;
  // Cached winding projection (see winding module); z-coordinates.
  const std::vector<Rational>& winding_e() const;

  mutable std::mutex cache_mutex;
  mutable std::map<long, IntegerMatrix> hecke_cache;
  mutable std::optional<std::vector<Rational>> winding_cache;
};

// Builds the full presentation. Throws LevelTooLarge if |P^1(Z/N)| exceeds
// the budget.
std::shared_ptr<ModSymSpace> build_space(long n, long max_p1_size = 20000);

// Star involution on cuspidal coordinates (S^2 = I).
IntegerMatrix star_involution(const ModSymSpace& space);

// Star-fixed sublattice of a star-stable lattice in z-coordinates.
IntegerLattice plus_lattice(const IntegerLattice& l, const ModSymSpace& space);
RationalLattice plus_lattice(const RationalLattice& l, const ModSymSpace& space);

// Coordinates of the winding element in the cuspidal basis (z-coordinates).
std::vector<Rational> winding_coordinates(const ModSymSpace& space);

}  // namespace modvis

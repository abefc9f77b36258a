#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "modvis/lattice.hpp"
#include "modvis/modsym.hpp"

namespace modvis {

// A rational Hecke eigensystem that is new at its level: the homological
// avatar of an elliptic newform quotient.
struct RationalNewform {
  long level = 0;
  long index = 0;  // position in the canonical per-level ordering
  std::map<long, Int> eigen;  // prime -> a_ell
  long eigen_bound = 0;       // eigen holds all primes <= this
  IntegerLattice sub_lattice;  // H1[I_f] in cuspidal coordinates, rank 2, saturated
  std::vector<std::pair<long, Int>> combo;  // separating operator sum w * T_p
  Int combo_theta = 0;                      // its eigenvalue on this system
  bool rank_zero = false;                   // analytic rank 0
  std::map<long, int> atkin_lehner;         // q || N -> sign of w_q

  std::string label() const { return std::to_string(level) + "f" + std::to_string(index); }
};

struct IsotypicData {
  std::vector<long> generator_primes;  // primes behind the T_ell - a_ell generators
  IntegerLattice kernel;               // H1[I_f]
  IntegerLattice image_span;           // saturation of I_f * H1 inside H1
};

// The newform quotient side: H1(E, Z) as an explicit rank-2 quotient of H1.
struct HomologicalE {
  IntegerMatrix quotient;    // 2g x 2; row vectors map by x -> x * quotient
  IntegerMatrix star;        // star action on the quotient (2 x 2, column action)
  IntegerLattice h1e;        // Z^2
  IntegerLattice h1e_plus;   // star-fixed sublattice, rank 1
};

// All rational newforms of the space, canonically ordered. Eigenvalues are
// computed for every prime up to the Sturm bound; the analytic-rank bit is
// decided exactly from the winding element.
std::vector<RationalNewform> rational_newforms(const std::shared_ptr<ModSymSpace>& space);

// a_ell for prime ell, extending the cached table on demand.
Int eigenvalue(const ModSymSpace& space, RationalNewform& f, long ell, long ell_budget = 100000);

inline bool analytic_rank_is_zero(const RationalNewform& f) { return f.rank_zero; }

// Separating operator of f as a matrix on cuspidal coordinates.
IntegerMatrix combo_matrix(const ModSymSpace& space, const RationalNewform& f);

IsotypicData isotypic_data(const ModSymSpace& space, const RationalNewform& f);
HomologicalE homological_e(const ModSymSpace& space, const RationalNewform& f);

// Complete rational-newform eigen tables at a (divisor) level, each extended
// to all primes <= bound; memoized process-wide.
std::vector<std::map<long, Int>> divisor_system_tables(long level, long bound);
// The cached space behind a divisor-level table (Hecke matrices accumulate on it).
std::shared_ptr<ModSymSpace> divisor_space(long level);
void clear_divisor_cache();

}  // namespace modvis

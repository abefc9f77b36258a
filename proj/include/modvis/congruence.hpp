#pragma once

#include <optional>
#include <vector>

#include "modvis/newform.hpp"

namespace modvis {

// ceil(mu / 6) for the index mu of Gamma_0(N): two weight-2 forms of level N
// agreeing on a_n for all n up to this bound agree identically.
long sturm_bound(long n);

// Certified congruence datum for an ordered pair (f rank 0, g positive rank).
struct CongruentPair {
  long level = 0;
  long f_index = 0;
  long g_index = 0;
  long p = 0;      // odd prime
  Int r = 1;       // p-power modulus of the congruence
  long index_bound = 0;  // primes ell <= this (ell not dividing Np) were compared
  long safety = 1;
};

// Largest p-power dividing every a_ell(f) - a_ell(g) over primes
// ell <= safety * sturm_bound(N) with ell not dividing Np; nullopt when p
// divides no difference. The result certifies the congruence only up to the
// stated bound.
std::optional<Int> congruence_power(const ModSymSpace& space, RationalNewform& f,
                                    RationalNewform& g, long p, long safety = 3);

// All (f, g, p) with f of analytic rank zero, g of positive analytic rank and
// a nontrivial congruence power at some odd prime p <= p_max.
std::vector<CongruentPair> find_visible_pairs(const ModSymSpace& space,
                                              std::vector<RationalNewform>& forms, long p_max,
                                              long safety = 3);

enum class ExclusionResult { kProvedExcluded, kPossibleCongruence };

// One-sided test of the hypothesis that f (and its congruent partner, when
// given) is congruent mod p to no other newform of level dividing N. Two
// routes must both come back clean: the simultaneous mod-p eigenspace over
// every divisor level has to equal the span forced by f (and the partner),
// and no other computed rational system may agree with f mod p on the tested
// primes.
ExclusionResult excludes_other_congruences(const ModSymSpace& space, const RationalNewform& f,
                                           long p, const std::vector<RationalNewform>& level_forms,
                                           const RationalNewform* partner = nullptr);

}  // namespace modvis

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "modvis/congruence.hpp"
#include "modvis/newform.hpp"
#include "modvis/rational.hpp"

namespace modvis {

struct CurveRecord {
  std::string label;
  long conductor = 0;
  std::array<Int, 5> a{};  // a1, a2, a3, a4, a6
  std::optional<long> declared_rank;
  std::optional<Int> declared_torsion;
};

struct ParsedCurveFile {
  std::vector<CurveRecord> curves;
  std::vector<std::string> errors;  // one entry per malformed line
};

// JSON lines {label, N, ainvs[5], rank?, torsion?}; malformed lines are
// collected, not fatal.
ParsedCurveFile parse_curve_file(const std::string& path);

enum class KodairaClass {
  kGood,
  kIm,
  kII,
  kIII,
  kIV,
  kI0Star,
  kImStar,
  kIVStar,
  kIIIStar,
  kIIStar,
};

struct LocalData {
  Int q = 0;
  KodairaClass type = KodairaClass::kGood;
  long m = 0;         // the n in I_n / I_n^*
  Int c_q = 1;        // Tamagawa number
  long v_disc = 0;    // valuation of the minimal discriminant
  long components = 1;  // irreducible components of the special fiber
  long conductor_exponent = 0;
  std::array<Int, 5> minimal_model{};  // local minimal model reached by the algorithm
  std::string kodaira_symbol() const;
};

LocalData tate_local_data(const CurveRecord& c, const Int& q);

// Product over p | disc of p^(conductor exponent).
Int conductor_from_tate(const CurveRecord& c);

Int discriminant(const std::array<Int, 5>& a);

// |E(Q)_tor| by the integral-point bound on the scaled model, verified by the
// group law, and checked against reduction bounds at good odd primes.
Int torsion_order(const CurveRecord& c);

// a_ell = ell + 1 - #E(F_ell) at a prime of good reduction.
Int ap_point_count(const CurveRecord& c, long ell);

// The unique newform whose eigenvalues match the point counts for all good
// primes up to the Sturm bound; nullptr when none.
RationalNewform* match_curve_to_newform(const CurveRecord& c, const ModSymSpace& space,
                                        std::vector<RationalNewform>& forms);

struct BSDReport {
  Rational lratio;
  Int torsion = 1;
  Int tamagawa_product = 1;
  Rational sha_analytic;
  bool manin_assumed = true;       // c_E = 1 not computed, only flagged
  bool c_infinity_power_of_2 = true;
};

BSDReport bsd_report(const Rational& lratio_value, const Int& torsion, const Int& tamagawa);

enum class TriState { kProved, kFailed, kUnknown };

// The hypothesis ledger for one congruent pair at an odd prime p.
struct HypothesisFlags {
  TriState p_odd = TriState::kUnknown;
  TriState multiplicity_one = TriState::kUnknown;  // hypothesis (*) via the sufficient criterion
  TriState p2_ndivides_level = TriState::kUnknown;
  TriState p_ndivides_cq_e = TriState::kUnknown;
  TriState p_ndivides_cq_f = TriState::kUnknown;
  TriState p_ndivides_torsion_f = TriState::kUnknown;
  TriState exclusion = TriState::kUnknown;  // proved iff the one-sided test excluded
  bool e_irreducible_certified = false;
  bool f_irreducible_certified = false;
  std::string not_checked = "|(J0(N)/F_dual)(Q)_tor| not computable here";

  bool all_proved() const {
    return p_odd == TriState::kProved && multiplicity_one == TriState::kProved &&
           p2_ndivides_level == TriState::kProved && exclusion == TriState::kProved;
  }
};

// Certifies E[p] irreducible via an auxiliary good prime ell with
// x^2 - a_ell x + ell irreducible mod p; absence of a certificate is
// "unknown", never "reducible".
bool irreducibility_certificate(const CurveRecord& c, long p, long ell_limit = 200);

HypothesisFlags hypothesis_report(long level, long p, const CurveRecord* curve_e,
                                  const CurveRecord* curve_f, ExclusionResult exclusion);

}  // namespace modvis

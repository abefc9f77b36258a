#pragma once

#include "modvis/newform.hpp"

namespace modvis {

// The winding element and the lattices its Hecke translates span.
struct WindingData {
  std::vector<Rational> e;    // cuspidal coordinates
  Int cuspidal_order = 1;     // least n with n*e integral
  RationalLattice te_lattice;  // span of T_n e over the generation bound
  RationalLattice ie_lattice;  // te ∩ H1(Z)
  long generation_bound = 0;   // bound after stabilization
};

WindingData winding_data(const std::shared_ptr<ModSymSpace>& space);

struct LRatioReport {
  long level = 0;
  long form_index = 0;
  Rational lratio;             // algebraic L(f,1)/Omega up to the recorded flags
  bool projection_zero = false;  // positive analytic rank: no index defined
  Int cuspidal_image_order = 1;  // |pi(Te)/pi(Ie)| when rank zero
  bool manin_p2_condition = true;  // p^2-free level context, recorded per report
};

// [H1(E,Z)^+ : pi(Te)]; exactly zero (with the flag set) when the projection
// of the winding element onto the f-component vanishes.
Rational lratio(const ModSymSpace& space, const RationalNewform& f, const WindingData& wd);

// |pi(Te) / pi(Ie)|; requires analytic rank zero.
Int cuspidal_image_order(const ModSymSpace& space, const RationalNewform& f,
                         const WindingData& wd);

LRatioReport lratio_report(const ModSymSpace& space, const RationalNewform& f,
                           const WindingData& wd);

}  // namespace modvis

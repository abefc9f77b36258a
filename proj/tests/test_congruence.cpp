#include <numeric>

#include "doctest.h"
#include "modvis/congruence.hpp"
#include "oracles.hpp"

using namespace modvis;

TEST_CASE("sturm bounds") {
  CHECK(sturm_bound(11) == 2);
  CHECK(sturm_bound(1) == 1);
  CHECK(sturm_bound(37) == 7);
}

TEST_CASE("congruence power basics at level 37") {
  auto s = build_space(37);
  auto forms = rational_newforms(s);
  REQUIRE(forms.size() == 2);
  RationalNewform& f = forms[0].rank_zero ? forms[0] : forms[1];
  RationalNewform& g = forms[0].rank_zero ? forms[1] : forms[0];

  SUBCASE("degenerate pair is rejected") {
    CHECK_THROWS_AS(congruence_power(*s, f, f, 3), PairDegenerate);
  }
  SUBCASE("p = 2 is rejected") { CHECK_THROWS_AS(congruence_power(*s, f, g, 2), ConfigError); }
  SUBCASE("a single witness kills the congruence") {
    // a_2 difference is +-2, so no odd 3-power congruence
    CHECK(eigenvalue(*s, f, 2) - eigenvalue(*s, g, 2) != 0);
    CHECK_FALSE(congruence_power(*s, f, g, 3).has_value());
  }
  SUBCASE("symmetry") {
    CHECK(congruence_power(*s, f, g, 3) == congruence_power(*s, g, f, 3));
    CHECK(congruence_power(*s, f, g, 5) == congruence_power(*s, g, f, 5));
  }
  SUBCASE("hand check: the gcd of differences up to 43 is a power of 2") {
    // oracle: point counts on both conductor-37 curves
    std::array<long, 5> c37a{0, 0, 1, -1, 0};
    std::array<long, 5> c37b{0, 1, 1, -23, -50};
    long acc = 0;
    for (long ell : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 41L, 43L}) {
      long d = oracles::ap_from_counting(c37a, ell) - oracles::ap_from_counting(c37b, ell);
      acc = std::gcd(acc, d);
    }
    CHECK(acc != 0);
    while (acc % 2 == 0) acc /= 2;
    CHECK(acc == 1);
  }
}

TEST_CASE("find_visible_pairs") {
  SUBCASE("level 11 has only one newform") {
    auto s = build_space(11);
    auto forms = rational_newforms(s);
    CHECK(find_visible_pairs(*s, forms, 13).empty());
  }
  SUBCASE("level 37 pair is 2-congruent only, so no odd pair") {
    auto s = build_space(37);
    auto forms = rational_newforms(s);
    CHECK(find_visible_pairs(*s, forms, 13).empty());
  }
  SUBCASE("genus zero level") {
    auto s = build_space(10);
    auto forms = rational_newforms(s);
    CHECK(find_visible_pairs(*s, forms, 13).empty());
  }
}

TEST_CASE("exclusion test") {
  SUBCASE("level 11 is excluded for every p") {
    auto s = build_space(11);
    auto forms = rational_newforms(s);
    REQUIRE(forms.size() == 1);
    for (long p : {3L, 5L, 7L})
      CHECK(excludes_other_congruences(*s, forms[0], p, forms) == ExclusionResult::kProvedExcluded);
  }
  SUBCASE("the mod-2 congruence at level 37 is detected") {
    auto s = build_space(37);
    auto forms = rational_newforms(s);
    RationalNewform& f = forms[0].rank_zero ? forms[0] : forms[1];
    CHECK(excludes_other_congruences(*s, f, 2, forms) == ExclusionResult::kPossibleCongruence);
  }
  SUBCASE("no mod-5 collision at level 37") {
    auto s = build_space(37);
    auto forms = rational_newforms(s);
    RationalNewform& f = forms[0].rank_zero ? forms[0] : forms[1];
    CHECK(excludes_other_congruences(*s, f, 5, forms) == ExclusionResult::kProvedExcluded);
  }
  SUBCASE("partner span is allowed at the pair level") {
    auto s = build_space(37);
    auto forms = rational_newforms(s);
    RationalNewform& f = forms[0].rank_zero ? forms[0] : forms[1];
    RationalNewform& g = forms[0].rank_zero ? forms[1] : forms[0];
    // with the partner supplied, the mod-2 kernel is exactly the pair span
    CHECK(excludes_other_congruences(*s, f, 2, forms, &g) == ExclusionResult::kProvedExcluded);
  }
}

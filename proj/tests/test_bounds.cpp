#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "facetlab/bounds.hpp"
#include "facetlab/simplex_law.hpp"
#include "facetlab/special.hpp"

using namespace ftl;

TEST_CASE("Hausdorff tail bound values and limits") {
  const RawBound b = hausdorff_tail_bound(2, 50, 1.0);
  CHECK(b.raw == doctest::Approx(2.12e-4).epsilon(0.01));
  // Tiny delta: vacuous (clamped to 1).
  CHECK(hausdorff_tail_bound(2, 50, 1e-9).clamped == doctest::Approx(1.0));
  // Large N: geometric decay.
  CHECK(hausdorff_tail_bound(2, 100000, 0.5).raw < 1e-12);
  CHECK_THROWS_AS(hausdorff_tail_bound(2, 50, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff_tail_bound(2, 50, 1.5), std::invalid_argument);
}

TEST_CASE("max facet tail bound") {
  CHECK(max_facet_tail_bound(2, 100, 1.0).raw == doctest::Approx(0.0186).epsilon(0.01));
  // t -> 0: min-clamp at 1.
  CHECK(max_facet_tail_bound(2, 100, 1e-12).clamped == doctest::Approx(1.0));
  // Base root: bound hits 0 for huge t.
  CHECK(max_facet_tail_bound(2, 100, 1e9).raw == doctest::Approx(0.0));
  CHECK_THROWS_AS(max_facet_tail_bound(2, 100, 0.0), std::invalid_argument);
}

TEST_CASE("max facet expectation bound") {
  const double c = std::pow(6.0, 1.0) * std::sqrt(M_E * 2.0) / 1.0 * (2.0 * M_PI / 2.0);
  CHECK(max_facet_expectation_bound(2, 1000) ==
        doctest::Approx(c * std::log(1000.0) / 1000.0).epsilon(1e-12));
  // Decreasing beyond N = e.
  double prev = max_facet_expectation_bound(2, 3);
  for (long N : {10L, 100L, 1000L, 10000L}) {
    const double v = max_facet_expectation_bound(2, N);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("Theorem 11 lower constant and Theorem 2 interval") {
  CHECK(max_facet_lower_constant(2, 0.0, 0.0) == doctest::Approx(1.0 / (2.0 * M_PI)));
  const double v1 = miles_expected_volume(2), v2 = 0.35;
  CHECK(max_facet_lower_constant(3, v1, v2) > 0.0);
  CHECK_THROWS_AS(max_facet_lower_constant(3, v1, 0.0), std::invalid_argument);
  const MinFacetInterval iv = min_facet_interval(2, 100);
  CHECK(iv.lower == doctest::Approx(5.1962e-4).epsilon(1e-4));
  CHECK(iv.upper == doctest::Approx(6.2832e-4).epsilon(1e-4));
  CHECK(iv.explicit_constants);
  CHECK(min_facet_interval(3, 100).exponent == doctest::Approx(-1.6));
  CHECK(!min_facet_interval(3, 100).explicit_constants);
  CHECK(min_facet_interval(5, 100).exponent == doctest::Approx(-1.5));
}

TEST_CASE("minimum facet existence bound") {
  CHECK(min_facet_existence_bound(3, 100, 1e-5).raw == doctest::Approx(0.179).epsilon(0.01));
  CHECK(min_facet_existence_bound(3, 100, 0.0).raw == doctest::Approx(0.0));
  CHECK(min_facet_existence_bound(4, 100, 1e-4).raw > 0.0);
  CHECK_THROWS_AS(min_facet_existence_bound(2, 100, 0.1), std::invalid_argument);
  // Monotone in t and N.
  double prev = 0.0;
  for (double t : {1e-7, 1e-6, 1e-5, 1e-4}) {
    const double v = min_facet_existence_bound(3, 100, t).raw;
    CHECK(v > prev);
    prev = v;
  }
  prev = 0.0;
  for (long N : {50L, 100L, 200L, 400L}) {
    const double v = min_facet_existence_bound(4, N, 1e-4).raw;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("lemma sandwich evaluators") {
  const double v1 = miles_expected_volume(2);
  const MomentEstimate m2 = estimate_moment(51, 2, 2, 100000);
  const double R = std::pow(M_PI, 3) * 3;
  const SandwichBound l13 = lemma13_bounds(3, R, v1, m2.value);
  CHECK(l13.lower > 0.0);
  CHECK(l13.lower < l13.upper);
  CHECK_THROWS_AS(lemma13_bounds(3, 10.0, v1, m2.value), std::invalid_argument);

  const SandwichBound l15 = lemma15_bounds(3, 100, 1.0);
  CHECK(l15.lower == doctest::Approx(4.0 / (std::pow(M_PI, 3) * 1e5) / 1e6).epsilon(1e-12));
  CHECK(l15.upper == doctest::Approx(171.0 * std::pow(M_PI, 7) / 16.0 / 1e6).epsilon(1e-12));
  // Lower side out of range for big t.
  CHECK(lemma15_bounds(3, 100, 10.0).lower == doctest::Approx(0.0));
  const SandwichBound l15b = lemma15_bounds(4, 100, 0.5);
  CHECK(l15b.lower > 0.0);
  CHECK(l15b.lower < l15b.upper);
}

TEST_CASE("lemma 17 quadrature check") {
  for (int n : {4, 5}) {
    for (long N : {10000L, 100000L}) {
      const BoundReport rep = lemma17_integral_check(n, N);
      CHECK(rep.satisfied);
      CHECK(rep.empirical > 0.0);
      CHECK(rep.empirical <= rep.upper);
    }
  }
  CHECK_THROWS_AS(lemma17_integral_check(3, 10000), std::invalid_argument);
}

TEST_CASE("event estimators stay inside their sandwiches") {
  const double R = std::pow(M_PI, 3) * 3;
  const BoundReport h = estimate_event_H(2025, 3, R, 400000);
  CHECK((h.satisfied || h.inconclusive));
  CHECK(h.events > 0);
  CHECK(h.empirical >= 0.0);

  const BoundReport ht = estimate_event_Htilde(2025, 3, 100, M_PI, 400000);
  CHECK((ht.satisfied || ht.inconclusive));
  // t = 0: probability zero.
  const BoundReport ht0 = estimate_event_Htilde(2025, 3, 100, 0.0, 50000);
  CHECK(ht0.empirical == doctest::Approx(0.0));
}

TEST_CASE("scaling fits recover synthetic laws exactly") {
  std::vector<FitPoint> pts;
  for (double N : {100.0, 200.0, 400.0, 800.0, 1600.0}) {
    pts.push_back({N, 3.7 * std::pow(N, -1.5), 0.0});
  }
  const ScalingFit fit = fit_scaling(pts, FitModel::power);
  CHECK(fit.alpha == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(fit.c == doctest::Approx(3.7).epsilon(1e-12));
  CHECK(fit.rms == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<FitPoint> pts2;
  for (double N : {100.0, 200.0, 400.0, 800.0}) {
    pts2.push_back({N, 2.5 * std::log(N) / N, 0.0});
  }
  const ScalingFit fit2 = fit_scaling(pts2, FitModel::log_over_N);
  CHECK(fit2.c == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(fit2.ratio_spread == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_scaling({{100.0, 1.0, 0.0}}, FitModel::power), std::invalid_argument);
}

TEST_CASE("theorem constants are positive") {
  const TheoremConstants tc = theorem_constants(3, miles_expected_volume(2), 0.35);
  CHECK(tc.thm11_constant > 0.0);
  CHECK(tc.thm10_expectation_constant > 0.0);
  CHECK(tc.prop16_constant == doctest::Approx(57.0 * M_PI));
  CHECK(theorem_constants(4, miles_expected_volume(3), 0.05).prop16_constant > 0.0);
}

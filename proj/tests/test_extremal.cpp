#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "facetlab/extremal.hpp"

using namespace ftl;

TEST_CASE("trial summaries satisfy structural invariants") {
  for (int n : {2, 3, 4}) {
    for (long N : {n + 1L, 20L, 100L}) {
      const TrialSummary s = run_trial(321, n, N, 0);
      CHECK(s.min_facet_vol > 0.0);
      CHECK(s.min_facet_vol <= s.max_facet_vol);
      CHECK(s.max_cap_height > 0.0);
      CHECK(s.max_cap_height < 2.0);
      CHECK(s.cap_volume_violations == 0);
      if (n == 2) {
        CHECK(s.min_arc_gap <= 2.0 * M_PI / N + 1e-12);
        CHECK(s.max_arc_gap >= 2.0 * M_PI / N - 1e-12);
      }
    }
  }
}

TEST_CASE("n=2 gaps partition the circle and chords match arcs") {
  for (long trial = 0; trial < 50; ++trial) {
    const long N = 40;
    // Recompute gaps directly to cross-check the trial summary.
    RngStream trial_rng(654, 0x10000000 + 16 * trial);
    PointCloud cloud = sample_sphere(trial_rng, 2, N);
    std::vector<double> ang(N);
    for (long i = 0; i < N; ++i) ang[i] = std::atan2(cloud.point(i)[1], cloud.point(i)[0]);
    std::sort(ang.begin(), ang.end());
    double sum = 0.0, mn = 1e300, mx = 0.0, cmin = 1e300, cmax = 0.0;
    for (long i = 0; i < N; ++i) {
      const double g = i + 1 < N ? ang[i + 1] - ang[i] : 2.0 * M_PI + ang[0] - ang[N - 1];
      sum += g;
      mn = std::min(mn, g);
      mx = std::max(mx, g);
      cmin = std::min(cmin, 2.0 * std::sin(0.5 * g));
      cmax = std::max(cmax, 2.0 * std::sin(0.5 * g));
    }
    CHECK(sum == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
    const TrialSummary s = run_trial(654, 2, N, trial);
    CHECK(s.min_arc_gap == doctest::Approx(mn).epsilon(1e-12));
    CHECK(s.max_arc_gap == doctest::Approx(mx).epsilon(1e-12));
    CHECK(s.min_facet_vol == doctest::Approx(cmin).epsilon(1e-12));
    CHECK(s.max_facet_vol == doctest::Approx(cmax).epsilon(1e-12));
  }
}

TEST_CASE("n=2 trial agrees with the generic hull on the same cloud") {
  for (long trial = 0; trial < 10; ++trial) {
    RngStream rng(987, 0x10000000 + 16 * trial);
    const PointCloud cloud = sample_sphere(rng, 2, 25);
    const HullResult h = convex_hull(cloud);
    const FacetStats fs = facet_statistics(h);
    const TrialSummary s = run_trial(987, 2, 25, trial);
    CHECK(s.min_facet_vol == doctest::Approx(fs.min_vol).epsilon(1e-12));
    CHECK(s.max_facet_vol == doctest::Approx(fs.max_vol).epsilon(1e-12));
    CHECK(s.max_cap_height == doctest::Approx(fs.max_cap_height).epsilon(1e-12));
    CHECK(s.contains_origin == h.contains_origin);
  }
}

TEST_CASE("aggregate is deterministic and matches the serial reference") {
  for (int n : {2, 3}) {
    const AggregateStat a = aggregate(777, n, 50, 200);
    const AggregateStat b = aggregate(777, n, 50, 200);
    const AggregateStat c = aggregate_serial(777, n, 50, 200);
    CHECK(a.min_facet.mean == b.min_facet.mean);
    CHECK(a.min_facet.mean == c.min_facet.mean);
    CHECK(a.min_facet.stderr_ == c.min_facet.stderr_);
    CHECK(a.max_facet.mean == c.max_facet.mean);
    CHECK(a.max_cap_height.mean == c.max_cap_height.mean);
    CHECK(a.contains_origin_frac == c.contains_origin_frac);
  }
}

TEST_CASE("single-trial stderr is reported as zero") {
  const AggregateStat a = aggregate(5, 2, 30, 1);
  CHECK(a.trials == 1);
  CHECK(a.min_facet.stderr_ == 0.0);
}

TEST_CASE("n=2 minimum edge sits in the Theorem-2 interval") {
  const long N = 60, trials = 20000;
  const AggregateStat a = aggregate(246, 2, N, trials);
  const double lo = 3.0 * std::sqrt(3.0) / (static_cast<double>(N) * N);
  const double hi = 2.0 * M_PI / (static_cast<double>(N) * N);
  CHECK(a.min_facet.mean >= lo - 4.0 * a.min_facet.stderr_);
  CHECK(a.min_facet.mean <= hi + 4.0 * a.min_facet.stderr_);
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(run_trial(1, 3, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(aggregate(1, 2, 30, 0), std::invalid_argument);
}

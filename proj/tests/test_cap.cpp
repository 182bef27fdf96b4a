#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "facetlab/cap.hpp"
#include "facetlab/special.hpp"

using namespace ftl;

TEST_CASE("cap area closed forms") {
  CHECK(cap_area(2, 1.0) == doctest::Approx(0.0));
  CHECK(cap_area(2, -1.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(cap_area(2, 0.0) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(cap_area(3, 0.25) == doctest::Approx(2.0 * M_PI * 0.75).epsilon(1e-14));
  CHECK(cap_area(3, -1.0) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  // Hemisphere is half the sphere in any dimension.
  for (int n = 2; n <= 6; ++n) {
    CHECK(cap_area(n, 0.0) == doctest::Approx(0.5 * sphere_area(n)).epsilon(1e-12));
    CHECK(cap_area(n, -1.0) == doctest::Approx(sphere_area(n)).epsilon(1e-12));
    // Complement symmetry.
    CHECK(cap_area(n, -0.4) + cap_area(n, 0.4) == doctest::Approx(sphere_area(n)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(cap_area(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cap_area(3, 1.5), std::invalid_argument);
}

TEST_CASE("cap area monotone decreasing in p") {
  for (int n = 2; n <= 6; ++n) {
    double prev = cap_area(n, -1.0);
    for (double p = -0.95; p < 1.0; p += 0.05) {
      const double a = cap_area(n, p);
      CHECK(a < prev);
      prev = a;
    }
  }
}

TEST_CASE("cap area sandwich for n >= 4") {
  for (int n = 4; n <= 6; ++n) {
    for (double p : {0.05, 0.2, 0.5, 0.8, 0.95}) {
      const CapAreaBounds b = cap_area_bounds(n, p);
      const double a = cap_area(n, p);
      CHECK(b.lower <= a * (1 + 1e-12));
      CHECK(a <= b.upper * (1 + 1e-12));
    }
  }
  CHECK_THROWS_AS(cap_area_bounds(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cap_area_bounds(4, 0.0), std::invalid_argument);
}

TEST_CASE("Monte-Carlo cap hit fraction matches analytic area") {
  const long samples = 200000;
  for (int n : {2, 3, 4, 5}) {
    for (double p : {-0.5, 0.0, 0.3, 0.8}) {
      RngStream rng(2024, n * 100 + static_cast<int>(10 * (p + 1)));
      long hits = 0;
      double x[8];
      for (long i = 0; i < samples; ++i) {
        sample_sphere_point(rng, n, x);
        if (x[0] >= p) ++hits;
      }
      const double frac = static_cast<double>(hits) / samples;
      const double expect = cap_area(n, p) / sphere_area(n);
      const double se = std::sqrt(expect * (1.0 - expect) / samples);
      CHECK(std::fabs(frac - expect) <= 4.0 * se);
    }
  }
}

TEST_CASE("cap offset and angle from area fraction") {
  for (int n : {2, 3, 4, 5}) {
    for (double R : {2.5, 10.0, 100.0, 1000.0}) {
      const double p = cap_offset_from_fraction(n, R);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(cap_area(n, p) == doctest::Approx(sphere_area(n) / R).epsilon(1e-9));
      const CapAngle a = cap_angle_from_fraction(n, R);
      CHECK(a.phi == doctest::Approx(std::acos(p)).epsilon(1e-9));
      // The n=2 sandwich is an exact identity (phi = pi/R); allow for the
      // bisection's absolute error on top of the relative slack.
      CHECK(a.lower <= a.phi * (1 + 1e-12) + 1e-10);
      CHECK(a.phi <= a.upper * (1 + 1e-12) + 1e-10);
    }
  }
  CHECK_THROWS_AS(cap_offset_from_fraction(3, 1.5), std::invalid_argument);
}

TEST_CASE("greedy cap packing respects the count sandwich and disjointness") {
  for (int n : {2, 3, 4}) {
    for (double R : {10.0, 100.0, 1000.0}) {
      RngStream rng(77, n * 1000 + static_cast<int>(R));
      const CapPacking pk = build_cap_packing(rng, n, R);
      const double k = static_cast<double>(pk.caps.size());
      CHECK(k >= std::pow(3.0, -n) * R);
      CHECK(k <= R);
      // Centers separated by at least delta implies disjoint delta/2 caps.
      for (std::size_t i = 0; i < pk.caps.size(); ++i) {
        for (std::size_t j = i + 1; j < pk.caps.size(); ++j) {
          double d2 = 0.0;
          for (int d = 0; d < n; ++d) {
            const double diff = pk.caps[i].center[d] - pk.caps[j].center[d];
            d2 += diff * diff;
          }
          CHECK(std::sqrt(d2) >= pk.delta * (1 - 1e-12));
        }
      }
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "facetlab/simplex_law.hpp"
#include "facetlab/special.hpp"

using namespace ftl;

TEST_CASE("Miles expected volume closed forms") {
  CHECK(miles_expected_volume(2) == doctest::Approx(3.0 / (2.0 * M_PI)).epsilon(1e-13));
  CHECK(miles_expected_volume(3) == doctest::Approx(4.0 * M_PI / 105.0).epsilon(1e-13));
  for (int n = 2; n <= 8; ++n) CHECK(miles_expected_volume(n) > 0.0);
  CHECK_THROWS_AS(miles_expected_volume(1), std::invalid_argument);
}

TEST_CASE("Monte-Carlo moments match Miles within 5 stderr") {
  for (int n : {2, 3, 4}) {
    const MomentEstimate m = estimate_moment(9001, n, 1, 200000);
    CHECK(std::fabs(m.value - miles_expected_volume(n)) <= 5.0 * m.stderr_);
    CHECK(m.stderr_ > 0.0);
  }
}

TEST_CASE("Jensen: second moment dominates squared first moment") {
  for (int n : {2, 3}) {
    const MomentEstimate m1 = estimate_moment(9002, n, 1, 100000);
    const MomentEstimate m2 = estimate_moment(9002, n, 2, 100000);
    const double sigma = 2.0 * m1.value * m1.stderr_ + m2.stderr_;
    CHECK(m2.value >= m1.value * m1.value - 4.0 * sigma);
  }
}

TEST_CASE("cdf bound constants") {
  // b_3 = 3 pi from the closed form.
  CHECK(cdf_upper_constant(3) == doctest::Approx(3.0 * M_PI).epsilon(1e-12));
  for (int n = 3; n <= 6; ++n) {
    CHECK(cdf_lower_constant(n) > 0.0);
    CHECK(cdf_lower_constant(n) <= cdf_upper_constant(n));
  }
}

TEST_CASE("cdf bounds evaluation") {
  const CdfBounds z = cdf_bounds(2, 0.0);
  CHECK(z.lower == doctest::Approx(0.0));
  CHECK(z.upper == doctest::Approx(0.0));
  const CdfBounds b = cdf_bounds(2, 0.1);
  CHECK(b.lower == doctest::Approx(std::pow(0.2, 2.0 / 3.0) / std::pow(M_PI, 8.0 / 3.0))
                       .epsilon(1e-12));
  CHECK(b.lower == doctest::Approx(0.0161543).epsilon(1e-4));
  CHECK(b.lower_applicable);
  // Clamping and the n = 2 validity range.
  CHECK(cdf_bounds(2, 10.0).upper == doctest::Approx(1.0));
  CHECK(!cdf_bounds(2, 10.0).lower_applicable);
  CHECK(!cdf_bounds(3, ball_volume(3) + 1.0).lower_applicable);
  CHECK(cdf_bounds(3, 0.01).upper == doctest::Approx(3.0 * M_PI * 0.01).epsilon(1e-12));
  CHECK_THROWS_AS(cdf_bounds(3, -1.0), std::invalid_argument);
}

TEST_CASE("empirical CDF respects the sandwich") {
  const SandwichReport r2 = verify_cdf_sandwich(9003, 2, {0.01, 0.1, 1.0}, 200000);
  CHECK(r2.ok);
  const SandwichReport r3 = verify_cdf_sandwich(9003, 3, {0.001, 0.01, 0.1}, 200000);
  CHECK(r3.ok);
  for (const auto& e : r2.entries) {
    if (e.lower_applicable) CHECK(e.lower <= e.upper);
  }
}

TEST_CASE("second moment bound") {
  for (int n : {2, 3}) {
    const SecondMomentReport rep = verify_second_moment_bound(9004, n, 100000);
    CHECK(rep.ok);
    CHECK(rep.rhs <= 0.25 + 1e-9);  // Jensen makes V1^2/(4 V2) <= 1/4
  }
}

TEST_CASE("Blaschke-Petkantschin identity, f == 1") {
  const BpReport rep = verify_blaschke_petkantschin(9005, 3, 400000);
  CHECK(rep.lhs == doctest::Approx(std::pow(4.0 * M_PI, 3)).epsilon(1e-12));
  CHECK(rep.ok);
  CHECK_THROWS_AS(verify_blaschke_petkantschin(9005, 2, 1000), std::invalid_argument);
}

TEST_CASE("moment estimation is independent of shard scheduling") {
  const MomentEstimate a = estimate_moment(9006, 2, 1, 50000);
  const MomentEstimate b = estimate_moment(9006, 2, 1, 50000);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "facetlab/special.hpp"

using namespace ftl;

TEST_CASE("ln_gamma matches known values") {
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  CHECK(std::exp(ln_gamma(5.0)) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK_THROWS_AS(ln_gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ln_gamma(-1.5), std::invalid_argument);
}

TEST_CASE("beta function") {
  CHECK(beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beta(0.5, 0.5) == doctest::Approx(M_PI).epsilon(1e-13));
  CHECK(beta(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  // B(1/2, 1) = 2, used by the n = 3 CDF constant.
  CHECK(beta(0.5, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("ball volumes and sphere areas") {
  CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
  CHECK(ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
  for (int n = 2; n <= 10; ++n) CHECK(sphere_area(n) == doctest::Approx(n * ball_volume(n)));
}

TEST_CASE("regularized incomplete beta") {
  CHECK(reg_inc_beta(0.0, 2.0, 3.0) == doctest::Approx(0.0));
  CHECK(reg_inc_beta(1.0, 2.0, 3.0) == doctest::Approx(1.0));
  // I_x(1, 1) = x.
  for (double x : {0.1, 0.25, 0.5, 0.9}) {
    CHECK(reg_inc_beta(x, 1.0, 1.0) == doctest::Approx(x).epsilon(1e-13));
  }
  // I_{1/2}(a, a) = 1/2 by symmetry.
  for (double a : {0.5, 1.5, 4.0}) {
    CHECK(reg_inc_beta(0.5, a, a) == doctest::Approx(0.5).epsilon(1e-13));
  }
  // I_x(1/2, 1/2) = (2/pi) arcsin(sqrt(x)).
  for (double x : {0.2, 0.5, 0.8}) {
    CHECK(reg_inc_beta(x, 0.5, 0.5) ==
          doctest::Approx(2.0 / M_PI * std::asin(std::sqrt(x))).epsilon(1e-12));
  }
}

TEST_CASE("adaptive Simpson quadrature") {
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-10) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(adaptive_simpson([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-10) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-9));
  // Sharp boundary layer.
  const double v = adaptive_simpson([](double x) { return std::exp(-1000.0 * x); }, 0.0, 1.0, 1e-10);
  CHECK(v == doctest::Approx(1.0 / 1000.0).epsilon(1e-7));
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ftl {

// Raw formula value plus its [0, 1] clamp (probability semantics).
struct RawBound {
  double raw = 0.0;
  double clamped = 0.0;
};

struct SandwichBound {
  double lower = 0.0;
  double upper = 0.0;
};

struct BoundReport {
  std::string bound_name;
  int n = 0;
  double scale = 0.0;  // N or R
  double t = 0.0;      // threshold parameter where applicable
  double lower = 0.0;
  double upper = 0.0;
  double empirical = 0.0;
  double empirical_stderr = 0.0;
  long events = 0;     // accepted Monte-Carlo events (estimators only)
  bool satisfied = false;
  bool inconclusive = false;
};

struct TheoremConstants {
  int n = 0;
  double thm11_constant = 0.0;  // lower constant of E max facet * N/log N
  double thm10_expectation_constant = 0.0;
  double prop16_constant = 0.0;  // coefficient of the existence bound
};

// Tail bound on d_H(P_N, B^n) >= Delta, 0 < Delta <= 1.
RawBound hausdorff_tail_bound(int n, long N, double delta);

// Tail bound on the maximum facet volume, P(max >= t).
RawBound max_facet_tail_bound(int n, long N, double t);

// Upper bound on E max facet volume: constant * log N / N.
double max_facet_expectation_bound(int n, long N);

// Lower constant of E max facet * N / log N: 1/(2 pi) for n = 2, the
// second-moment constant otherwise. v1, v2 are Monte-Carlo simplex
// moments for the subsphere dimension (n points on S^{n-2}).
double max_facet_lower_constant(int n, double v1, double v2);

struct MinFacetInterval {
  double lower = 0.0;   // explicit only for n = 2
  double upper = 0.0;
  double exponent = 0.0;
  bool explicit_constants = false;
};
MinFacetInterval min_facet_interval(int n, long N);

// P(exists facet with volume <= t), n >= 3.
RawBound min_facet_existence_bound(int n, long N, double t);

// vol_{R,n} threshold of the event H; v1 as in max_facet_lower_constant.
double vol_Rn(int n, double R, double v1);

// Sandwich on E H_{R,C} (n >= 3, R >= pi^n n).
SandwichBound lemma13_bounds(int n, double R, double v1, double v2);

// Sandwich on E Htilde_{t,C} (n in {3, 4, 5}); lower side only valid for
// t <= pi (n = 3) resp. t <= vol(B^{n-1}) (n >= 4).
SandwichBound lemma15_bounds(int n, long N, double t);

// Monte-Carlo estimate of E H_{R,C} against the Lemma 13 sandwich.
// Tuples are conditioned on all n points lying in C (exact factor R^-n).
BoundReport estimate_event_H(std::uint64_t seed, int n, double R, long trials);

// Monte-Carlo estimate of E Htilde_{t,C} against the Lemma 15 sandwich.
BoundReport estimate_event_Htilde(std::uint64_t seed, int n, long N, double t, long trials);

// Quadrature LHS vs closed-form RHS of the key integral inequality
// (n >= 4); empirical carries the quadrature value.
BoundReport lemma17_integral_check(int n, long N);

struct FitPoint {
  double N = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
};

enum class FitModel { power, log_over_N };

struct ScalingFit {
  std::string statistic;
  int n = 0;
  FitModel model = FitModel::power;
  double alpha = 0.0;  // power model exponent
  double c = 0.0;      // prefactor
  std::vector<double> residuals;  // log-space (power) or ratio/c - 1
  std::vector<double> ratios;     // log_over_N model: mean * N / log N
  double rms = 0.0;
  double ratio_spread = 0.0;  // max/min ratio (log_over_N model)
};

// Weighted least squares on (log N, log mean) or the log N/N ratio fit.
// Requires >= 4 points with positive means.
ScalingFit fit_scaling(const std::vector<FitPoint>& points, FitModel model);

TheoremConstants theorem_constants(int n, double v1, double v2);

}  // namespace ftl

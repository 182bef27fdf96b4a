#pragma once

#include <cstdint>
#include <vector>

#include "facetlab/rng.hpp"

namespace ftl {

// Closed-form expected n-volume of the simplex spanned by n+1 uniform
// points on S^{n-1} (Miles), evaluated in log-space.
double miles_expected_volume(int n);

struct MomentEstimate {
  int k = 0;
  int n = 0;
  double value = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
};

// Monte-Carlo k-th moment of the random simplex volume over (n+1)-tuples
// on S^{n-1}. Deterministic given (seed, stream_base) and independent of
// thread count (fixed shard streams + pairwise reduction).
MomentEstimate estimate_moment(std::uint64_t seed, int n, int k, long samples);

struct CdfBounds {
  double lower = 0.0;        // valid only when lower_applicable
  double upper = 0.0;        // clamped at 1
  double upper_raw = 0.0;    // unclamped
  bool lower_applicable = false;
};

// Sandwich on P(vol_n <= t): n=2 uses (2t)^{2/3}/pi^{8/3} <= . <= 342 t^{2/3}
// (lower side valid for t <= pi); n >= 3 uses a_n t <= . <= b_n t (lower
// valid for t <= vol(B^n)).
CdfBounds cdf_bounds(int n, double t);

// Constants of the n >= 3 linear sandwich.
double cdf_lower_constant(int n);  // a_n
double cdf_upper_constant(int n);  // b_n

struct SandwichEntry {
  double t = 0.0;
  double empirical = 0.0;
  double stderr_ = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_applicable = false;
  bool ok = false;
};

struct SandwichReport {
  int n = 0;
  long samples = 0;
  std::vector<SandwichEntry> entries;
  bool ok = false;
};

// Empirical simplex-volume CDF at each grid point vs the cdf_bounds
// sandwich, 4 binomial stderr slack per side.
SandwichReport verify_cdf_sandwich(std::uint64_t seed, int n,
                                   const std::vector<double>& t_grid,
                                   long samples);

struct SecondMomentReport {
  int n = 0;
  long samples = 0;
  double v1 = 0.0;
  double v2 = 0.0;
  double lhs = 0.0;   // empirical P(vol >= v1/2)
  double rhs = 0.0;   // v1^2 / (4 v2)
  double slack = 0.0; // 4 sigma combined
  bool ok = false;
};

// P(vol >= V1/2) >= V1^2/(4 V2), both sides Monte-Carlo with plug-in V1.
SecondMomentReport verify_second_moment_bound(std::uint64_t seed, int n, long samples);

struct BpReport {
  int n = 0;
  long samples = 0;
  double lhs = 0.0;     // |S^{n-1}|^n
  double rhs = 0.0;     // Monte-Carlo estimate
  double stderr_ = 0.0;
  bool ok = false;
};

// Spherical Blaschke-Petkantschin identity with f == 1; supported for
// n in {3, 4}. n = 2 throws (0-dimensional subsphere measure).
BpReport verify_blaschke_petkantschin(std::uint64_t seed, int n, long samples);

}  // namespace ftl

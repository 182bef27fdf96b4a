#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "facetlab/hull.hpp"

namespace ftl {

struct TrialSummary {
  int n = 0;
  long N = 0;
  long trial_index = 0;
  double min_facet_vol = 0.0;
  double max_facet_vol = 0.0;
  double max_cap_height = 0.0;
  bool contains_origin = false;
  int resamples = 0;
  // Facets violating vol <= (2n/(n-1))^{(n-1)/2} (sqrt(n)/(n-1)!) h^{(n-1)/2}
  // with h the facet cap height; expected to stay 0.
  int cap_volume_violations = 0;
  // n = 2 only: geodesic arc gaps between angularly consecutive points.
  double min_arc_gap = 0.0;
  double max_arc_gap = 0.0;
};

struct StatMoments {
  double mean = 0.0;
  double stderr_ = 0.0;  // 0 when trials == 1 (not applicable)
};

struct AggregateStat {
  int n = 0;
  long N = 0;
  long trials = 0;
  StatMoments min_facet;
  StatMoments max_facet;
  StatMoments max_cap_height;
  StatMoments min_arc_gap;  // n = 2 only
  StatMoments max_arc_gap;  // n = 2 only
  double contains_origin_frac = 0.0;
  long total_resamples = 0;
  long cap_volume_violations = 0;
};

struct TrialFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One experiment: sample N points on S^{n-1}, enumerate hull facets,
// record extremal statistics. Degenerate hulls are resampled from the
// next substream (> 10 resamples raises TrialFailure). Deterministic
// given (seed, n, N, trial_index).
TrialSummary run_trial(std::uint64_t seed, int n, long N, long trial_index);

// Mean/stderr of every statistic over independent trials. OpenMP over
// trials; the reduction is a fixed pairwise tree keyed by trial index,
// so the result is byte-identical for any thread count.
AggregateStat aggregate(std::uint64_t seed, int n, long N, long trials);

// Serial reference implementation (no OpenMP); must match aggregate()
// bitwise. Kept for tests and the benchmark target.
AggregateStat aggregate_serial(std::uint64_t seed, int n, long N, long trials);

// Per-trial summaries in trial order, for tail-probability studies that
// need more than means.
std::vector<TrialSummary> run_trials(std::uint64_t seed, int n, long N, long trials);

}  // namespace ftl

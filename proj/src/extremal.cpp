#include "facetlab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ftl {
namespace {

constexpr std::uint64_t kTrialDomain = 0x10000000;
constexpr int kMaxResamples = 10;

double pairwise_sum(const double* x, long count) {
  if (count == 1) return x[0];
  const long half = count / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, count - half);
}

// Upper bound on a facet's (n-1)-volume in terms of its cap height.
double cap_volume_bound(int n, double h) {
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;
  return std::pow(2.0 * n / (n - 1.0), 0.5 * (n - 1)) * std::sqrt(static_cast<double>(n)) /
         fact * std::pow(h, 0.5 * (n - 1));
}

StatMoments reduce_stat(const std::vector<TrialSummary>& trials,
                        double (*get)(const TrialSummary&)) {
  const long T = static_cast<long>(trials.size());
  std::vector<double> v(T), v2(T);
  for (long i = 0; i < T; ++i) {
    v[i] = get(trials[i]);
    v2[i] = v[i] * v[i];
  }
  StatMoments m;
  m.mean = pairwise_sum(v.data(), T) / T;
  if (T > 1) {
    const double m2 = pairwise_sum(v2.data(), T) / T;
    const double var = std::max(0.0, (m2 - m.mean * m.mean) * T / (T - 1));
    m.stderr_ = std::sqrt(var / T);
  }
  return m;
}

TrialSummary trial_from_gaps(int n, long N, long trial_index, const PointCloud& cloud) {
  // Points on the unit circle: sort by angle; every consecutive pair is a
  // hull edge with chord length 2 sin(gap/2) and plane offset cos(gap/2).
  TrialSummary s;
  s.n = n;
  s.N = N;
  s.trial_index = trial_index;
  std::vector<double> ang(N);
  for (long i = 0; i < N; ++i) ang[i] = std::atan2(cloud.point(i)[1], cloud.point(i)[0]);
  std::sort(ang.begin(), ang.end());
  s.min_arc_gap = 1e300;
  s.min_facet_vol = 1e300;
  for (long i = 0; i < N; ++i) {
    const double gap = i + 1 < N ? ang[i + 1] - ang[i] : 2.0 * M_PI + ang[0] - ang[N - 1];
    s.min_arc_gap = std::min(s.min_arc_gap, gap);
    s.max_arc_gap = std::max(s.max_arc_gap, gap);
    const double chord = 2.0 * std::sin(0.5 * gap);
    s.min_facet_vol = std::min(s.min_facet_vol, chord);
    s.max_facet_vol = std::max(s.max_facet_vol, chord);
    // 1 - cos(gap/2) in a cancellation-free form; the naive expression
    // loses all relative accuracy for small gaps and breaks the
    // chord <= bound comparison below.
    const double sq = std::sin(0.25 * gap);
    const double h = 2.0 * sq * sq;
    s.max_cap_height = std::max(s.max_cap_height, h);
    if (chord > cap_volume_bound(2, h)) ++s.cap_volume_violations;
  }
  s.contains_origin = s.max_arc_gap <= M_PI;
  return s;
}

}  // namespace

TrialSummary run_trial(std::uint64_t seed, int n, long N, long trial_index) {
  if (N < n + 1) throw std::invalid_argument("run_trial: need N >= n+1");
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    RngStream rng(seed, kTrialDomain + 16 * static_cast<std::uint64_t>(trial_index) + attempt);
    const PointCloud cloud = sample_sphere(rng, n, N);
    if (n == 2) {
      // The angular path cannot be degenerate unless angles collide.
      TrialSummary s = trial_from_gaps(n, N, trial_index, cloud);
      if (s.min_arc_gap <= 0.0) continue;
      s.resamples = attempt;
      return s;
    }
    const HullResult hull = convex_hull(cloud);
    if (hull.degenerate) continue;
    TrialSummary s;
    s.n = n;
    s.N = N;
    s.trial_index = trial_index;
    s.resamples = attempt;
    const FacetStats fs = facet_statistics(hull);
    s.min_facet_vol = fs.min_vol;
    s.max_facet_vol = fs.max_vol;
    s.max_cap_height = fs.max_cap_height;
    s.contains_origin = hull.contains_origin;
    for (const Facet& f : hull.facets) {
      if (f.volume > cap_volume_bound(n, f.cap_height)) ++s.cap_volume_violations;
    }
    return s;
  }
  throw TrialFailure("run_trial: repeated degenerate hulls at n=" + std::to_string(n) +
                     " N=" + std::to_string(N) + " trial=" + std::to_string(trial_index));
}

std::vector<TrialSummary> run_trials(std::uint64_t seed, int n, long N, long trials) {
  if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
  std::vector<TrialSummary> out(trials);
  bool failed = false;
  std::string failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (long t = 0; t < trials; ++t) {
    try {
      out[t] = run_trial(seed, n, N, t);
    } catch (const std::exception& e) {
#pragma omp critical
      {
        failed = true;
        failure = e.what();
      }
    }
  }
  if (failed) throw TrialFailure(failure);
  return out;
}

static AggregateStat reduce(int n, long N, const std::vector<TrialSummary>& trials) {
  AggregateStat a;
  a.n = n;
  a.N = N;
  a.trials = static_cast<long>(trials.size());
  a.min_facet = reduce_stat(trials, [](const TrialSummary& s) { return s.min_facet_vol; });
  a.max_facet = reduce_stat(trials, [](const TrialSummary& s) { return s.max_facet_vol; });
  a.max_cap_height = reduce_stat(trials, [](const TrialSummary& s) { return s.max_cap_height; });
  if (n == 2) {
    a.min_arc_gap = reduce_stat(trials, [](const TrialSummary& s) { return s.min_arc_gap; });
    a.max_arc_gap = reduce_stat(trials, [](const TrialSummary& s) { return s.max_arc_gap; });
  }
  long origin = 0;
  for (const TrialSummary& s : trials) {
    origin += s.contains_origin ? 1 : 0;
    a.total_resamples += s.resamples;
    a.cap_volume_violations += s.cap_volume_violations;
  }
  a.contains_origin_frac = static_cast<double>(origin) / a.trials;
  return a;
}

AggregateStat aggregate(std::uint64_t seed, int n, long N, long trials) {
  return reduce(n, N, run_trials(seed, n, N, trials));
}

AggregateStat aggregate_serial(std::uint64_t seed, int n, long N, long trials) {
  if (trials < 1) throw std::invalid_argument("aggregate_serial: trials must be >= 1");
  std::vector<TrialSummary> out(trials);
  for (long t = 0; t < trials; ++t) out[t] = run_trial(seed, n, N, t);
  return reduce(n, N, out);
}

}  // namespace ftl

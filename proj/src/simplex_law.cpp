#include "facetlab/simplex_law.hpp"

#include <cmath>
#include <stdexcept>

#include "facetlab/geometry.hpp"
#include "facetlab/special.hpp"

namespace ftl {
namespace {

// Stream-index domains keep the Monte-Carlo verifiers statistically
// independent of each other under a shared master seed.
constexpr std::uint64_t kMomentDomain = 0x100000;
constexpr std::uint64_t kSandwichDomain = 0x200000;
constexpr std::uint64_t kSecondMomentDomain = 0x300000;
constexpr std::uint64_t kBpDomain = 0x400000;

constexpr int kShards = 256;

// Fixed-tree pairwise sum over per-shard accumulators; the result does
// not depend on how shards were scheduled across threads.
double pairwise_sum(const double* x, int count) {
  if (count == 1) return x[0];
  const int half = count / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, count - half);
}

long shard_begin(long samples, int shard) {
  return samples * shard / kShards;
}

// One random (n+1)-point simplex volume.
double sample_simplex_volume(RngStream& rng, int n) {
  double pts[7 * 6];
  for (int i = 0; i <= n; ++i) sample_sphere_point(rng, n, pts + i * n);
  return simplex_volume(pts, n, n + 1);
}

}  // namespace

double miles_expected_volume(int n) {
  if (n < 2) throw std::invalid_argument("miles_expected_volume: n must be >= 2");
  double lg = -ln_gamma(n + 1.0);
  lg += ln_gamma(0.5 * (n * n + 1)) - ln_gamma(0.5 * n * n);
  lg += n * (ln_gamma(0.5 * n) - ln_gamma(0.5 * (n + 1)));
  lg += ln_gamma(0.5 * n) - ln_gamma(0.5);
  return std::exp(lg);
}

MomentEstimate estimate_moment(std::uint64_t seed, int n, int k, long samples) {
  if (n < 2 || k < 1 || samples < 1000) {
    throw std::invalid_argument("estimate_moment: need n >= 2, k >= 1, samples >= 1e3");
  }
  double sum[kShards], sum2[kShards];
#pragma omp parallel for schedule(static)
  for (int s = 0; s < kShards; ++s) {
    RngStream rng(seed, kMomentDomain + 16 * s + static_cast<std::uint64_t>(k));
    double a = 0.0, b = 0.0;
    const long end = shard_begin(samples, s + 1);
    for (long i = shard_begin(samples, s); i < end; ++i) {
      const double v = std::pow(sample_simplex_volume(rng, n), k);
      a += v;
      b += v * v;
    }
    sum[s] = a;
    sum2[s] = b;
  }
  const double m1 = pairwise_sum(sum, kShards) / samples;
  const double m2 = pairwise_sum(sum2, kShards) / samples;
  MomentEstimate out;
  out.k = k;
  out.n = n;
  out.samples = samples;
  out.value = m1;
  const double var = std::max(0.0, m2 - m1 * m1);
  out.stderr_ = std::sqrt(var / samples);
  return out;
}

double cdf_lower_constant(int n) {
  if (n < 3) throw std::invalid_argument("cdf_lower_constant: n must be >= 3");
  const double m = n - 1.0;
  double lg = -0.5 - 0.5 * std::log(static_cast<double>(n));
  lg += (n + 1.0) * std::log(sphere_area(n - 1)) - n * std::log(sphere_area(n));
  lg -= 2.0 * std::log(static_cast<double>(n));
  lg += ln_gamma(0.5 * (m * m + 1)) - ln_gamma(0.5 * m * m);
  lg += m * (ln_gamma(0.5 * m) - ln_gamma(0.5 * n));
  lg += ln_gamma(0.5 * m) - ln_gamma(0.5);
  return std::exp(lg) / ball_volume(n);
}

double cdf_upper_constant(int n) {
  if (n < 3) throw std::invalid_argument("cdf_upper_constant: n must be >= 3");
  double lg = ln_gamma(n + 1.0);
  lg += (n + 1.0) * std::log(sphere_area(n - 1)) - n * std::log(sphere_area(n));
  lg += std::log(beta(0.5, 0.5 * (n * n - 3 * n + 2)));
  return std::exp(lg);
}

CdfBounds cdf_bounds(int n, double t) {
  if (n < 2) throw std::invalid_argument("cdf_bounds: n must be >= 2");
  if (t < 0.0) throw std::invalid_argument("cdf_bounds: t must be >= 0");
  CdfBounds out;
  if (n == 2) {
    out.lower_applicable = t <= M_PI;
    if (out.lower_applicable) out.lower = std::pow(2.0 * t, 2.0 / 3.0) / std::pow(M_PI, 8.0 / 3.0);
    out.upper_raw = 342.0 * std::pow(t, 2.0 / 3.0);
  } else {
    out.lower_applicable = t <= ball_volume(n);
    if (out.lower_applicable) out.lower = cdf_lower_constant(n) * t;
    out.upper_raw = cdf_upper_constant(n) * t;
  }
  out.upper = std::min(1.0, out.upper_raw);
  return out;
}

SandwichReport verify_cdf_sandwich(std::uint64_t seed, int n,
                                   const std::vector<double>& t_grid,
                                   long samples) {
  const int T = static_cast<int>(t_grid.size());
  std::vector<double> hits(static_cast<std::size_t>(kShards) * T, 0.0);
#pragma omp parallel for schedule(static)
  for (int s = 0; s < kShards; ++s) {
    RngStream rng(seed, kSandwichDomain + s);
    const long end = shard_begin(samples, s + 1);
    for (long i = shard_begin(samples, s); i < end; ++i) {
      const double v = sample_simplex_volume(rng, n);
      for (int j = 0; j < T; ++j) {
        if (v <= t_grid[j]) hits[static_cast<std::size_t>(s) * T + j] += 1.0;
      }
    }
  }
  SandwichReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.ok = true;
  std::vector<double> col(kShards);
  for (int j = 0; j < T; ++j) {
    for (int s = 0; s < kShards; ++s) col[s] = hits[static_cast<std::size_t>(s) * T + j];
    const double frac = pairwise_sum(col.data(), kShards) / samples;
    SandwichEntry e;
    e.t = t_grid[j];
    e.empirical = frac;
    e.stderr_ = std::sqrt(std::max(0.0, frac * (1.0 - frac)) / samples);
    const CdfBounds b = cdf_bounds(n, t_grid[j]);
    e.lower = b.lower;
    e.upper = b.upper;
    e.lower_applicable = b.lower_applicable;
    e.ok = frac <= b.upper + 4.0 * e.stderr_ &&
           (!b.lower_applicable || frac >= b.lower - 4.0 * e.stderr_);
    rep.ok = rep.ok && e.ok;
    rep.entries.push_back(e);
  }
  return rep;
}

SecondMomentReport verify_second_moment_bound(std::uint64_t seed, int n, long samples) {
  if (n < 2) throw std::invalid_argument("verify_second_moment_bound: n must be >= 2");
  // First pass pins the plug-in threshold V1/2; second pass counts.
  const MomentEstimate m1 = estimate_moment(seed, n, 1, samples);
  const MomentEstimate m2 = estimate_moment(seed, n, 2, samples);
  const double thresh = 0.5 * m1.value;
  double hits[kShards];
#pragma omp parallel for schedule(static)
  for (int s = 0; s < kShards; ++s) {
    RngStream rng(seed, kSecondMomentDomain + s);
    double h = 0.0;
    const long end = shard_begin(samples, s + 1);
    for (long i = shard_begin(samples, s); i < end; ++i) {
      if (sample_simplex_volume(rng, n) >= thresh) h += 1.0;
    }
    hits[s] = h;
  }
  SecondMomentReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.v1 = m1.value;
  rep.v2 = m2.value;
  rep.lhs = pairwise_sum(hits, kShards) / samples;
  rep.rhs = m1.value * m1.value / (4.0 * m2.value);
  const double se_lhs = std::sqrt(std::max(0.0, rep.lhs * (1.0 - rep.lhs)) / samples);
  const double se_rhs = rep.rhs * (2.0 * m1.stderr_ / m1.value + m2.stderr_ / m2.value);
  rep.slack = 4.0 * (se_lhs + se_rhs);
  rep.ok = rep.lhs >= rep.rhs - rep.slack;
  return rep;
}

BpReport verify_blaschke_petkantschin(std::uint64_t seed, int n, long samples) {
  if (n != 3 && n != 4) {
    throw std::invalid_argument("verify_blaschke_petkantschin: only n in {3, 4} supported");
  }
  // With f == 1 the LHS integrates to |S^{n-1}|^n. The RHS is sampled as
  // (p, xi_1..xi_n) with p uniform on [0, 1] and xi_i uniform on the
  // section sphere of radius sqrt(1 - p^2); by rotational symmetry theta
  // is fixed at e_1 and the |S^{n-1}| measure of theta multiplies out.
  // Section points are (p, sqrt(1-p^2) w) with w uniform on S^{n-2};
  // the subsphere surface measure contributes (|S^{n-2}| r^{n-2})^n.
  const double weight0 = sphere_area(n) * std::pow(sphere_area(n - 1), n);
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;  // (n-1)!
  double sum[kShards], sum2[kShards];
#pragma omp parallel for schedule(static)
  for (int s = 0; s < kShards; ++s) {
    RngStream rng(seed, kBpDomain + s);
    double a = 0.0, b = 0.0;
    const long end = shard_begin(samples, s + 1);
    for (long i = shard_begin(samples, s); i < end; ++i) {
      const double p = rng.next_double();
      const double r2 = 1.0 - p * p;
      const double r = std::sqrt(r2);
      double pts[6 * 6];
      double w[5];
      for (int j = 0; j < n; ++j) {
        sample_sphere_point(rng, n - 1, w);
        pts[j * n] = p;
        for (int d = 1; d < n; ++d) pts[j * n + d] = r * w[d - 1];
      }
      const double vol = simplex_volume(pts, n, n);
      const double val = weight0 * std::pow(r, (n - 2) * n) * fact * vol / std::pow(r2, 0.5 * n);
      a += val;
      b += val * val;
    }
    sum[s] = a;
    sum2[s] = b;
  }
  BpReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.lhs = std::pow(sphere_area(n), n);
  const double m1 = pairwise_sum(sum, kShards) / samples;
  const double m2 = pairwise_sum(sum2, kShards) / samples;
  rep.rhs = m1;
  rep.stderr_ = std::sqrt(std::max(0.0, m2 - m1 * m1) / samples);
  rep.ok = std::fabs(rep.rhs - rep.lhs) <= 4.0 * rep.stderr_;
  return rep;
}

}  // namespace ftl

#include "facetlab/cap.hpp"

#include <cmath>

#include "facetlab/special.hpp"

namespace ftl {

double Cap::angle() const { return std::acos(offset); }

double Cap::radius() const { return std::sqrt(std::max(0.0, 1.0 - offset * offset)); }

double cap_area(int n, double p) {
  if (n < 2) throw std::invalid_argument("cap_area: n must be >= 2");
  if (p < -1.0 || p > 1.0) throw std::invalid_argument("cap_area: p must be in [-1, 1]");
  if (n == 2) return 2.0 * std::acos(p);
  if (n == 3) return 2.0 * M_PI * (1.0 - p);
  if (p < 0.0) return sphere_area(n) - cap_area(n, -p);
  const double x = 1.0 - p * p;
  return 0.5 * sphere_area(n) * reg_inc_beta(x, 0.5 * (n - 1), 0.5);
}

CapAreaBounds cap_area_bounds(int n, double p) {
  if (n < 4) throw std::invalid_argument("cap_area_bounds: n must be >= 4");
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("cap_area_bounds: p must be in (0, 1]");
  const double lower = std::pow(1.0 - p * p, 0.5 * (n - 1)) * ball_volume(n - 1);
  return {lower, lower / p};
}

double cap_offset_from_fraction(int n, double R) {
  if (R < 2.0) throw std::invalid_argument("cap_offset_from_fraction: R must be >= 2");
  const double target = sphere_area(n) / R;
  double lo = 0.0, hi = 1.0;  // area decreasing in p; R >= 2 puts p in [0, 1]
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cap_area(n, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

CapAngle cap_angle_from_fraction(int n, double R) {
  if (n < 2) throw std::invalid_argument("cap_angle_from_fraction: n must be >= 2");
  if (R < 2.0) throw std::invalid_argument("cap_angle_from_fraction: R must be >= 2");
  CapAngle out;
  out.phi = std::acos(cap_offset_from_fraction(n, R));
  const double base = std::pow(sphere_area(n) / (R * ball_volume(n - 1)), 1.0 / (n - 1));
  out.lower = base;
  out.upper = std::pow(0.5 * M_PI, static_cast<double>(n - 2) / (n - 1)) * base;
  return out;
}

CapPacking build_cap_packing(RngStream& rng, int n, double R) {
  if (n < 2) throw std::invalid_argument("build_cap_packing: n must be >= 2");
  if (R < 2.0) throw std::invalid_argument("build_cap_packing: R must be >= 2");
  // Cap B(x, delta/2) on the sphere has plane offset 1 - delta^2/8.
  const double p = cap_offset_from_fraction(n, R);
  const double delta = std::sqrt(8.0 * (1.0 - p));
  const double delta2 = delta * delta;

  CapPacking packing;
  packing.dim = n;
  packing.area_fraction_denominator = R;
  packing.delta = delta;

  std::vector<double> centers;
  constexpr int kMaxRejectStreak = 10000;
  int streak = 0;
  std::vector<double> cand(n);
  while (streak < kMaxRejectStreak) {
    sample_sphere_point(rng, n, cand.data());
    bool ok = true;
    for (std::size_t i = 0; i < centers.size(); i += n) {
      double d2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = cand[j] - centers[i + j];
        d2 += d * d;
      }
      if (d2 < delta2) {
        ok = false;
        break;
      }
    }
    if (ok) {
      centers.insert(centers.end(), cand.begin(), cand.end());
      streak = 0;
    } else {
      ++streak;
    }
  }

  const std::size_t k = centers.size() / n;
  const double k_lower = R * std::pow(3.0, -n);
  if (static_cast<double>(k) < k_lower || static_cast<double>(k) > R) {
    throw PackingFailure("build_cap_packing: greedy net count outside [3^-n R, R]");
  }
  packing.caps.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Cap c;
    c.dim = n;
    c.center.assign(centers.begin() + i * n, centers.begin() + (i + 1) * n);
    c.offset = p;
    packing.caps.push_back(std::move(c));
  }
  return packing;
}

}  // namespace ftl

#pragma once

#include <vector>

#include "facetlab/geometry.hpp"
#include "facetlab/rng.hpp"

namespace ftl {

// Spherical cap {x in S^{n-1} : <x, center> >= offset}. Height 1 - p,
// polar angle arccos p, base radius sqrt(1 - p^2).
struct Cap {
  int dim;
  Vec center;
  double offset;

  double height() const { return 1.0 - offset; }
  double angle() const;
  double radius() const;
};

struct CapPacking {
  int dim;
  double area_fraction_denominator;  // R
  double delta;                      // center separation of the greedy net
  std::vector<Cap> caps;
};

struct PackingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Surface area of the cap with plane offset p, exact closed form for
// n in {2, 3}, incomplete beta otherwise. p in [-1, 1].
double cap_area(int n, double p);

// Sandwich on the cap area for n >= 4 and p in (0, 1]:
// (1-p^2)^{(n-1)/2} |B^{n-1}| <= area <= same / p.
struct CapAreaBounds {
  double lower;
  double upper;
};
CapAreaBounds cap_area_bounds(int n, double p);

// Polar angle of the cap with area |S^{n-1}|/R, solved by bisection to
// 1e-12, together with the analytic sandwich
// (|S^{n-1}|/(R |B^{n-1}|))^{1/(n-1)} <= phi <= (pi/2)^{(n-2)/(n-1)} * same.
struct CapAngle {
  double phi;
  double lower;
  double upper;
};
CapAngle cap_angle_from_fraction(int n, double R);

// Plane offset of the cap with area |S^{n-1}|/R (bisection on p).
double cap_offset_from_fraction(int n, double R);

// Randomized greedy maximal delta-net: caps B(x_i, delta/2) on S^{n-1} of
// common area |S^{n-1}|/R. The count k is validated against
// 3^{-n} R <= k <= R; violation raises PackingFailure.
CapPacking build_cap_packing(RngStream& rng, int n, double R);

}  // namespace ftl

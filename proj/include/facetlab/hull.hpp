#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "facetlab/geometry.hpp"
#include "facetlab/rng.hpp"

namespace ftl {

constexpr int kMaxHullDim = 6;

struct Facet {
  std::array<int, kMaxHullDim> vertices;  // first dim entries valid, sorted
  std::array<double, kMaxHullDim> normal; // outward unit normal
  double offset;      // signed: >= 0 iff the origin is on the inner side
  double volume;      // (n-1)-volume of the vertex simplex
  double cap_height;  // 1 - offset
};

struct HullResult {
  int dim = 0;
  std::vector<Facet> facets;
  bool contains_origin = false;
  bool degenerate = false;
};

struct FacetStats {
  double min_vol;
  double max_vol;
  double max_cap_height;  // lower bound on d_H(P_N, B^n)
  double min_offset;
};

struct NoStatisticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Facet enumeration of conv(cloud) by incremental beneath-beyond
// insertion (angular sort for dim 2; the dim-2 path assumes points on
// the unit circle, which the PointCloud invariant guarantees).
// Sets `degenerate` when no full-dimensional simplex exists.
HullResult convex_hull(const PointCloud& cloud);

// Exact extrema over the facet list. Throws NoStatisticsError on a
// degenerate hull.
FacetStats facet_statistics(const HullResult& hull);

// Every (n-2)-face shared by exactly two facets; used by tests and the
// verify suites.
bool ridges_consistent(const HullResult& hull);

}  // namespace ftl

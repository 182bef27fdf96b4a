#pragma once

#include <stdexcept>
#include <vector>

namespace ftl {

using Vec = std::vector<double>;

struct Hyperplane {
  Vec normal;     // unit length
  double offset;  // signed distance from origin, >= 0 by convention
};

struct DegenerateSimplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gram determinant of a set of points, where the simplex is affinely
// degenerate iff the determinant vanishes. det(E E^T) with E the edge
// matrix p_i - p_0.
double gram_determinant(const double* pts, int dim, int k);

// (k-1)-dimensional volume of conv of k points in R^dim,
// sqrt(det(E E^T)) / (k-1)!. Requires 2 <= k <= dim + 1.
double simplex_volume(const double* pts, int dim, int k);
double simplex_volume(const std::vector<Vec>& points);

// Hyperplane through dim affinely independent points, oriented so the
// offset is nonnegative. Throws DegenerateSimplexError when the points
// are affinely dependent (Gram determinant below 1e-24).
Hyperplane hyperplane_through(const double* pts, int dim);
Hyperplane hyperplane_through(const std::vector<Vec>& points);

// Low-level variant writing into caller storage; returns false on a
// degenerate input instead of throwing.
bool hyperplane_through(const double* pts, int dim, double* normal, double* offset);

}  // namespace ftl

#include "facetlab/geometry.hpp"

#include <cmath>
#include <cstring>

namespace ftl {
namespace {

constexpr int kMaxDim = 11;
constexpr double kDegenerateGramTol = 1e-24;  // volume below 1e-12

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double gram_determinant(const double* pts, int dim, int k) {
  // G[i][j] = <p_{i+1} - p_0, p_{j+1} - p_0>, (k-1) x (k-1)
  const int m = k - 1;
  double g[kMaxDim][kMaxDim];
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double s = 0.0;
      for (int d = 0; d < dim; ++d) {
        s += (pts[(i + 1) * dim + d] - pts[d]) * (pts[(j + 1) * dim + d] - pts[d]);
      }
      g[i][j] = s;
      g[j][i] = s;
    }
  }
  // Gaussian elimination with partial pivoting; G is symmetric PSD so the
  // determinant is clamped at zero when roundoff drives it negative.
  double det = 1.0;
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r) {
      if (std::fabs(g[r][c]) > std::fabs(g[piv][c])) piv = r;
    }
    if (piv != c) {
      for (int j = 0; j < m; ++j) std::swap(g[c][j], g[piv][j]);
      det = -det;
    }
    if (g[c][c] == 0.0) return 0.0;
    det *= g[c][c];
    for (int r = c + 1; r < m; ++r) {
      const double f = g[r][c] / g[c][c];
      for (int j = c; j < m; ++j) g[r][j] -= f * g[c][j];
    }
  }
  return det < 0.0 ? 0.0 : det;
}

double simplex_volume(const double* pts, int dim, int k) {
  if (k < 2 || k > dim + 1) throw std::invalid_argument("simplex_volume: need 2 <= k <= dim+1");
  return std::sqrt(gram_determinant(pts, dim, k)) / factorial(k - 1);
}

double simplex_volume(const std::vector<Vec>& points) {
  const int k = static_cast<int>(points.size());
  if (k < 2) throw std::invalid_argument("simplex_volume: need 2 <= k <= dim+1");
  const int dim = static_cast<int>(points[0].size());
  std::vector<double> flat(static_cast<std::size_t>(k) * dim);
  for (int i = 0; i < k; ++i) std::memcpy(&flat[i * dim], points[i].data(), dim * sizeof(double));
  return simplex_volume(flat.data(), dim, k);
}

bool hyperplane_through(const double* pts, int dim, double* normal, double* offset) {
  if (gram_determinant(pts, dim, dim) < kDegenerateGramTol) return false;
  // Null vector of the (dim-1) x dim edge matrix via elimination with
  // column pivoting; the free column carries the normal direction.
  double a[kMaxDim][kMaxDim];
  const int rows = dim - 1;
  for (int i = 0; i < rows; ++i) {
    for (int d = 0; d < dim; ++d) a[i][d] = pts[(i + 1) * dim + d] - pts[d];
  }
  int col_of_row[kMaxDim];
  bool used[kMaxDim] = {};
  for (int r = 0; r < rows; ++r) {
    int best_c = -1;
    double best = 0.0;
    for (int c = 0; c < dim; ++c) {
      if (!used[c] && std::fabs(a[r][c]) > best) {
        best = std::fabs(a[r][c]);
        best_c = c;
      }
    }
    if (best_c < 0) return false;
    used[best_c] = true;
    col_of_row[r] = best_c;
    for (int r2 = 0; r2 < rows; ++r2) {
      if (r2 == r) continue;
      const double f = a[r2][best_c] / a[r][best_c];
      for (int c = 0; c < dim; ++c) a[r2][c] -= f * a[r][c];
    }
  }
  int free_col = -1;
  for (int c = 0; c < dim; ++c) {
    if (!used[c]) free_col = c;
  }
  double v[kMaxDim];
  v[free_col] = 1.0;
  for (int r = 0; r < rows; ++r) {
    v[col_of_row[r]] = -a[r][free_col] / a[r][col_of_row[r]];
  }
  double norm2 = 0.0;
  for (int c = 0; c < dim; ++c) norm2 += v[c] * v[c];
  const double inv = 1.0 / std::sqrt(norm2);
  double p = 0.0;
  for (int c = 0; c < dim; ++c) {
    v[c] *= inv;
    p += v[c] * pts[c];
  }
  if (p < 0.0) {
    p = -p;
    for (int c = 0; c < dim; ++c) v[c] = -v[c];
  }
  for (int c = 0; c < dim; ++c) normal[c] = v[c];
  *offset = p;
  return true;
}

Hyperplane hyperplane_through(const double* pts, int dim) {
  Hyperplane h;
  h.normal.resize(dim);
  if (!hyperplane_through(pts, dim, h.normal.data(), &h.offset)) {
    throw DegenerateSimplexError("hyperplane_through: affinely dependent points");
  }
  return h;
}

Hyperplane hyperplane_through(const std::vector<Vec>& points) {
  const int dim = static_cast<int>(points[0].size());
  if (static_cast<int>(points.size()) != dim) {
    throw std::invalid_argument("hyperplane_through: need exactly dim points");
  }
  std::vector<double> flat(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) std::memcpy(&flat[i * dim], points[i].data(), dim * sizeof(double));
  return hyperplane_through(flat.data(), dim);
}

}  // namespace ftl

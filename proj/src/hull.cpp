#include "facetlab/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ftl {
namespace {

constexpr double kPlaneTol = 1e-12;
constexpr double kDegenerateVolTol = 1e-12;

struct FacetRec {
  std::array<int, kMaxHullDim> verts;
  std::array<int, kMaxHullDim> neigh;
  std::array<double, kMaxHullDim> normal;
  double offset;
  bool alive;
  std::vector<int> conflicts;  // unprocessed points that see this facet
};

double dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Recomputes the signed plane distance of q in long double, aligned with
// the facet's stored outward normal. Used only when the double-precision
// distance is within 10x of the tolerance.
long double plane_eval_ld(const PointCloud& cloud, const FacetRec& f, const double* q) {
  const int n = cloud.dim;
  long double a[kMaxHullDim][kMaxHullDim];
  const double* v0 = cloud.point(f.verts[0]);
  for (int i = 0; i + 1 < n; ++i) {
    const double* vi = cloud.point(f.verts[i + 1]);
    for (int d = 0; d < n; ++d) a[i][d] = (long double)vi[d] - (long double)v0[d];
  }
  const int rows = n - 1;
  int col_of_row[kMaxHullDim];
  bool used[kMaxHullDim] = {};
  for (int r = 0; r < rows; ++r) {
    int best_c = -1;
    long double best = 0.0L;
    for (int c = 0; c < n; ++c) {
      if (!used[c] && fabsl(a[r][c]) > best) {
        best = fabsl(a[r][c]);
        best_c = c;
      }
    }
    if (best_c < 0) return 0.0L;
    used[best_c] = true;
    col_of_row[r] = best_c;
    for (int r2 = 0; r2 < rows; ++r2) {
      if (r2 == r) continue;
      const long double fac = a[r2][best_c] / a[r][best_c];
      for (int c = 0; c < n; ++c) a[r2][c] -= fac * a[r][c];
    }
  }
  int free_col = -1;
  for (int c = 0; c < n; ++c) {
    if (!used[c]) free_col = c;
  }
  long double v[kMaxHullDim];
  v[free_col] = 1.0L;
  for (int r = 0; r < rows; ++r) v[col_of_row[r]] = -a[r][free_col] / a[r][col_of_row[r]];
  long double norm2 = 0.0L, align = 0.0L;
  for (int c = 0; c < n; ++c) {
    norm2 += v[c] * v[c];
    align += v[c] * (long double)f.normal[c];
  }
  const long double sgn = align >= 0.0L ? 1.0L : -1.0L;
  long double d = 0.0L;
  for (int c = 0; c < n; ++c) d += v[c] * ((long double)q[c] - (long double)v0[c]);
  return sgn * d / sqrtl(norm2);
}

bool facet_sees(const PointCloud& cloud, const FacetRec& f, const double* q) {
  const double d = dot(f.normal.data(), q, cloud.dim) - f.offset;
  if (d > 10.0 * kPlaneTol) return true;
  if (d <= kPlaneTol) return false;  // on-plane points stay inside
  return plane_eval_ld(cloud, f, q) > (long double)kPlaneTol;
}

// Unit outward normal and offset of the facet plane, oriented away from
// the interior reference point.
bool facet_plane(const PointCloud& cloud, const int* verts, const double* interior,
                 double* normal, double* offset) {
  const int n = cloud.dim;
  std::array<double, kMaxHullDim * kMaxHullDim> flat;
  for (int i = 0; i < n; ++i) {
    const double* p = cloud.point(verts[i]);
    std::copy(p, p + n, flat.data() + i * n);
  }
  double p_off;
  if (!hyperplane_through(flat.data(), n, normal, &p_off)) return false;
  if (dot(normal, interior, n) > p_off) {
    for (int i = 0; i < n; ++i) normal[i] = -normal[i];
    p_off = -p_off;
  }
  *offset = p_off;
  return true;
}

double facet_volume(const PointCloud& cloud, const int* verts) {
  const int n = cloud.dim;
  std::array<double, kMaxHullDim * kMaxHullDim> flat;
  for (int i = 0; i < n; ++i) {
    const double* p = cloud.point(verts[i]);
    std::copy(p, p + n, flat.data() + i * n);
  }
  return simplex_volume(flat.data(), n, n);
}

// Greedy search for n+1 affinely independent points; empty on failure.
std::vector<int> initial_simplex(const PointCloud& cloud) {
  const int n = cloud.dim;
  const long N = cloud.count;
  std::vector<int> sel = {0};
  std::vector<double> flat;
  for (int k = 1; k <= n; ++k) {
    double best = -1.0;
    int best_i = -1;
    flat.resize(static_cast<std::size_t>(k + 1) * n);
    for (int j = 0; j < k; ++j) {
      const double* p = cloud.point(sel[j]);
      std::copy(p, p + n, flat.data() + j * n);
    }
    for (long i = 0; i < N; ++i) {
      if (std::find(sel.begin(), sel.end(), static_cast<int>(i)) != sel.end()) continue;
      const double* p = cloud.point(i);
      std::copy(p, p + n, flat.data() + k * n);
      const double g = gram_determinant(flat.data(), n, k + 1);
      if (g > best) {
        best = g;
        best_i = static_cast<int>(i);
      }
    }
    if (best_i < 0 || std::sqrt(std::max(0.0, best)) < kDegenerateVolTol) return {};
    sel.push_back(best_i);
  }
  return sel;
}

HullResult hull_2d(const PointCloud& cloud) {
  const long N = cloud.count;
  HullResult out;
  out.dim = 2;
  std::vector<long> order(N);
  std::iota(order.begin(), order.end(), 0L);
  std::vector<double> ang(N);
  for (long i = 0; i < N; ++i) ang[i] = std::atan2(cloud.point(i)[1], cloud.point(i)[0]);
  std::sort(order.begin(), order.end(), [&](long a, long b) { return ang[a] < ang[b]; });

  // Points on the unit circle are in convex position; fewer than 3
  // distinct directions means no 2-dimensional hull.
  long distinct = 1;
  for (long i = 1; i < N; ++i) {
    if (ang[order[i]] - ang[order[i - 1]] > 1e-15) ++distinct;
  }
  if (distinct < 3) {
    out.degenerate = true;
    return out;
  }

  double centroid[2] = {0.0, 0.0};
  for (long i = 0; i < N; ++i) {
    centroid[0] += cloud.point(i)[0];
    centroid[1] += cloud.point(i)[1];
  }
  centroid[0] /= N;
  centroid[1] /= N;

  double min_off = 1.0;
  for (long i = 0; i < N; ++i) {
    const int a = static_cast<int>(order[i]);
    const int b = static_cast<int>(order[(i + 1) % N]);
    const double* pa = cloud.point(a);
    const double* pb = cloud.point(b);
    Facet f{};
    f.vertices[0] = std::min(a, b);
    f.vertices[1] = std::max(a, b);
    // Edge normal: perpendicular to the chord, oriented away from the
    // point centroid.
    double nx = pb[1] - pa[1];
    double ny = pa[0] - pb[0];
    const double len = std::hypot(nx, ny);
    if (len < kDegenerateVolTol) continue;  // duplicate direction, zero-length edge
    nx /= len;
    ny /= len;
    double off = nx * pa[0] + ny * pa[1];
    if (nx * centroid[0] + ny * centroid[1] > off) {
      nx = -nx;
      ny = -ny;
      off = -off;
    }
    f.normal[0] = nx;
    f.normal[1] = ny;
    f.offset = off;
    f.volume = len;
    f.cap_height = 1.0 - off;
    min_off = std::min(min_off, off);
    out.facets.push_back(f);
  }
  out.contains_origin = min_off >= 0.0;
  return out;
}

}  // namespace

HullResult convex_hull(const PointCloud& cloud) {
  const int n = cloud.dim;
  const long N = cloud.count;
  if (n < 2 || n > kMaxHullDim) throw std::invalid_argument("convex_hull: dim must be in [2, 6]");
  if (N < n + 1) throw std::invalid_argument("convex_hull: need at least dim+1 points");
  if (n == 2) return hull_2d(cloud);

  HullResult out;
  out.dim = n;
  const std::vector<int> sel = initial_simplex(cloud);
  if (sel.empty()) {
    out.degenerate = true;
    return out;
  }

  std::array<double, kMaxHullDim> interior{};
  for (int j = 0; j <= n; ++j) {
    const double* p = cloud.point(sel[j]);
    for (int d = 0; d < n; ++d) interior[d] += p[d] / (n + 1);
  }

  std::vector<FacetRec> facets;
  facets.reserve(16 * N);

  // Initial simplex: facet j omits sel[j]; across the ridge omitting
  // vertex sel[k] sits facet k.
  for (int j = 0; j <= n; ++j) {
    FacetRec f{};
    std::array<int, kMaxHullDim + 1> omitted{};
    int idx = 0;
    for (int k = 0; k <= n; ++k) {
      if (k != j) {
        f.verts[idx] = sel[k];
        omitted[idx] = k;
        ++idx;
      }
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return f.verts[a] < f.verts[b]; });
    FacetRec g{};
    for (int i = 0; i < n; ++i) {
      g.verts[i] = f.verts[perm[i]];
      g.neigh[i] = omitted[perm[i]];
    }
    if (!facet_plane(cloud, g.verts.data(), interior.data(), g.normal.data(), &g.offset)) {
      out.degenerate = true;
      return out;
    }
    g.alive = true;
    facets.push_back(std::move(g));
  }

  // Conflict certificates: assigned[p] is an alive facet p sees, or -1
  // when p is known to be inside (or is a hull vertex already).
  std::vector<int> assigned(N, -1);
  {
    std::vector<char> in_simplex(N, 0);
    for (int s : sel) in_simplex[s] = 1;
    for (long p = 0; p < N; ++p) {
      if (in_simplex[p]) continue;
      for (int fi = 0; fi <= n; ++fi) {
        if (facet_sees(cloud, facets[fi], cloud.point(p))) {
          assigned[p] = fi;
          facets[fi].conflicts.push_back(static_cast<int>(p));
          break;
        }
      }
    }
  }

  std::vector<int> visible, stack, new_ids;
  std::vector<char> vis_flag;
  vis_flag.reserve(16 * N);
  for (long q_idx = 0; q_idx < N; ++q_idx) {
    if (assigned[q_idx] < 0) continue;
    const double* q = cloud.point(q_idx);

    // Visible set grows from the certificate facet; the region seen from
    // an exterior point is connected on the facet adjacency graph.
    visible.clear();
    vis_flag.assign(facets.size(), 0);
    stack.assign(1, assigned[q_idx]);
    vis_flag[assigned[q_idx]] = 1;
    while (!stack.empty()) {
      const int fi = stack.back();
      stack.pop_back();
      visible.push_back(fi);
      for (int i = 0; i < n; ++i) {
        const int gi = facets[fi].neigh[i];
        if (!vis_flag[gi] && facet_sees(cloud, facets[gi], q)) {
          vis_flag[gi] = 1;
          stack.push_back(gi);
        }
      }
    }

    std::map<std::array<int, kMaxHullDim>, std::pair<int, int>> subridge;
    new_ids.clear();
    for (int fi : visible) {
      for (int i = 0; i < n; ++i) {
        const int gi = facets[fi].neigh[i];
        if (vis_flag[gi]) continue;
        // Horizon ridge between visible fi and surviving gi.
        FacetRec nf{};
        int idx = 0;
        for (int k = 0; k < n; ++k) {
          if (k != i) nf.verts[idx++] = facets[fi].verts[k];
        }
        nf.verts[idx] = static_cast<int>(q_idx);
        std::sort(nf.verts.begin(), nf.verts.begin() + n);
        if (!facet_plane(cloud, nf.verts.data(), interior.data(), nf.normal.data(), &nf.offset)) {
          out.degenerate = true;
          return out;
        }
        nf.alive = true;
        const int nf_id = static_cast<int>(facets.size());
        int q_pos = 0;
        for (int k = 0; k < n; ++k) {
          if (nf.verts[k] == static_cast<int>(q_idx)) q_pos = k;
        }
        nf.neigh[q_pos] = gi;
        for (int k = 0; k < n; ++k) {
          if (facets[gi].neigh[k] == fi) facets[gi].neigh[k] = nf_id;
        }
        facets.push_back(std::move(nf));
        new_ids.push_back(nf_id);
        // Wire new-new adjacency through shared (n-2)-subsets.
        FacetRec& stored = facets.back();
        for (int k = 0; k < n; ++k) {
          if (k == q_pos) continue;
          std::array<int, kMaxHullDim> key{};
          key.fill(-1);
          int ki = 0;
          for (int m2 = 0; m2 < n; ++m2) {
            if (m2 != k && m2 != q_pos) key[ki++] = stored.verts[m2];
          }
          auto it = subridge.find(key);
          if (it == subridge.end()) {
            subridge.emplace(key, std::make_pair(nf_id, k));
          } else {
            stored.neigh[k] = it->second.first;
            facets[it->second.first].neigh[it->second.second] = nf_id;
            subridge.erase(it);
          }
        }
      }
    }

    // Retire the visible cone and recertify its orphaned conflict points.
    assigned[q_idx] = -1;
    for (int fi : visible) {
      facets[fi].alive = false;
      for (int p : facets[fi].conflicts) {
        if (p == q_idx || assigned[p] != fi) continue;
        assigned[p] = -1;
        for (int nf_id : new_ids) {
          if (facet_sees(cloud, facets[nf_id], cloud.point(p))) {
            assigned[p] = nf_id;
            facets[nf_id].conflicts.push_back(p);
            break;
          }
        }
      }
      facets[fi].conflicts.clear();
    }
  }

  double min_off = 1.0;
  for (const FacetRec& f : facets) {
    if (!f.alive) continue;
    Facet pub{};
    pub.vertices = f.verts;
    pub.normal = f.normal;
    pub.offset = f.offset;
    pub.volume = facet_volume(cloud, f.verts.data());
    pub.cap_height = 1.0 - f.offset;
    min_off = std::min(min_off, f.offset);
    out.facets.push_back(pub);
  }
  out.contains_origin = min_off >= 0.0;
  return out;
}

FacetStats facet_statistics(const HullResult& hull) {
  if (hull.degenerate || hull.facets.empty()) {
    throw NoStatisticsError("facet_statistics: degenerate hull");
  }
  FacetStats s{1e300, 0.0, 0.0, 1e300};
  for (const Facet& f : hull.facets) {
    s.min_vol = std::min(s.min_vol, f.volume);
    s.max_vol = std::max(s.max_vol, f.volume);
    s.max_cap_height = std::max(s.max_cap_height, f.cap_height);
    s.min_offset = std::min(s.min_offset, f.offset);
  }
  return s;
}

bool ridges_consistent(const HullResult& hull) {
  const int n = hull.dim;
  std::map<std::vector<int>, int> count;
  for (const Facet& f : hull.facets) {
    for (int omit = 0; omit < n; ++omit) {
      std::vector<int> ridge;
      ridge.reserve(n - 1);
      for (int k = 0; k < n; ++k) {
        if (k != omit) ridge.push_back(f.vertices[k]);
      }
      ++count[ridge];
    }
  }
  for (const auto& [ridge, c] : count) {
    if (c != 2) return false;
  }
  return true;
}

}  // namespace ftl

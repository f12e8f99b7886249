#include "toral/convex_hull.hpp"

#include <algorithm>
#include <map>

#include "toral/error.hpp"
#include "toral/linalg.hpp"

namespace toral {

__int128 orient3(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c, const LatticePoint& d) {
  const __int128 ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const __int128 vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  const __int128 wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
  return ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx);
}

int affine_rank(const std::vector<LatticePoint>& points) {
  if (points.size() <= 1) return 0;
  RationalMatrix rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != points[0].size()) throw InvalidArgument("dimension mismatch");
    RationalPoint r;
    for (std::size_t j = 0; j < points[i].size(); ++j) r.push_back(to_rational(points[i][j] - points[0][j]));
    rows.push_back(std::move(r));
  }
  return static_cast<int>(rank(std::move(rows)));
}

ConvexHull3 convex_hull3(std::vector<LatticePoint> points) {
  for (const auto& p : points) {
    if (p.size() != 3) throw InvalidArgument("hull points must be 3-dimensional");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  ConvexHull3 hull;
  hull.points = points;
  hull.volume = 0;
  hull.affine_rank = affine_rank(points);
  if (hull.affine_rank < 3) return hull;

  const auto& P = hull.points;
  const std::size_t n = P.size();
  // Initial simplex: point 0, then the first points raising the affine rank.
  std::size_t i1 = 1;
  std::size_t i2 = 0;
  std::size_t i3 = 0;
  auto cross_nonzero = [&](std::size_t a, std::size_t b, std::size_t c) {
    const __int128 ux = P[b][0] - P[a][0], uy = P[b][1] - P[a][1], uz = P[b][2] - P[a][2];
    const __int128 vx = P[c][0] - P[a][0], vy = P[c][1] - P[a][1], vz = P[c][2] - P[a][2];
    return uy * vz - uz * vy != 0 || uz * vx - ux * vz != 0 || ux * vy - uy * vx != 0;
  };
  for (i2 = 2; i2 < n && !cross_nonzero(0, i1, i2); ++i2) {
  }
  for (i3 = 2; i3 < n && (i3 == i2 || orient3(P[0], P[i1], P[i2], P[i3]) == 0); ++i3) {
  }
  std::vector<HullFace> faces;
  if (orient3(P[0], P[i1], P[i2], P[i3]) < 0) {
    faces = {{0, i1, i2}, {0, i3, i1}, {0, i2, i3}, {i1, i3, i2}};
  } else {
    faces = {{0, i2, i1}, {0, i1, i3}, {0, i3, i2}, {i1, i2, i3}};
  }
  // Outward faces have the remaining simplex vertex strictly below them.
  for (std::size_t p = 1; p < n; ++p) {
    if (p == i1 || p == i2 || p == i3) continue;
    std::vector<bool> visible(faces.size());
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      visible[f] = orient3(P[faces[f][0]], P[faces[f][1]], P[faces[f][2]], P[p]) > 0;
      any = any || visible[f];
    }
    if (!any) continue;
    // Horizon: directed edges of visible faces whose reverse is not visible.
    std::map<std::pair<std::size_t, std::size_t>, bool> edge_visible;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      for (int e = 0; e < 3; ++e) edge_visible[{faces[f][e], faces[f][(e + 1) % 3]}] = visible[f];
    }
    std::vector<HullFace> next;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) {
        next.push_back(faces[f]);
        continue;
      }
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = faces[f][e];
        const std::size_t b = faces[f][(e + 1) % 3];
        if (!edge_visible.at({b, a})) next.push_back({a, b, p});
      }
    }
    faces = std::move(next);
  }
  hull.faces = faces;
  // Fan from vertex 0 (lexicographically smallest, always a hull vertex).
  __int128 six = 0;
  for (const auto& f : faces) six += orient3(P[0], P[f[0]], P[f[1]], P[f[2]]);
  if (six < 0) throw ComputationError("hull orientation error");
  hull.volume = ExactRational(from_int128(six), BigInt(6));
  hull.volume.canonicalize();
  return hull;
}

ExactRational hull_volume(const std::vector<LatticePoint>& points) { return convex_hull3(points).volume; }

}  // namespace toral

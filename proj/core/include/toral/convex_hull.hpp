#pragma once

// Exact 3D convex hulls of lattice points.

#include <array>
#include <vector>

#include "toral/exact.hpp"

namespace toral {

/// Oriented triangle of hull vertex indices (counter-clockwise seen from outside).
using HullFace = std::array<std::size_t, 3>;

struct ConvexHull3 {
  /// Affine rank of the input (0..3). Faces are only built when it is 3.
  int affine_rank = 0;
  std::vector<LatticePoint> points;
  std::vector<HullFace> faces;
  ExactRational volume;
};

/// Incremental hull with strict visibility (coplanar points never split a
/// face). Volume is the fan sum from the lexicographically smallest vertex.
ConvexHull3 convex_hull3(std::vector<LatticePoint> points);

ExactRational hull_volume(const std::vector<LatticePoint>& points);

/// Affine rank of a point set in Z^d, computed exactly.
int affine_rank(const std::vector<LatticePoint>& points);

/// 6 × signed volume of the tetrahedron (a, b, c, d).
__int128 orient3(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c, const LatticePoint& d);

}  // namespace toral

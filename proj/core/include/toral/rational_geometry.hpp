#pragma once

// Circumcenters and plane parameterizations for triples of lattice points,
// computed exactly over Q, plus height bookkeeping.

#include <cstdint>
#include <vector>

#include "toral/exact.hpp"

namespace toral {

/// Center of the circle through three lattice points (same dimension d >= 2).
/// Solves the two perpendicular-bisector conditions along
/// X(t) = (A1 + A2)/2 + t(b - (a·b/|a|²)a), a = A2 - A1, b = A3 - A1.
/// Throws InvalidArgument("duplicate points") or InvalidArgument("collinear").
RationalPoint circumcenter(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3);

/// Largest component height of a rational point.
BigInt max_height(const RationalPoint& p);

/// X = V0 + x_{i1}·V1 + x_{i2}·V2 for every X in the affine plane through the
/// three points. i1 < i2 are 1-based coordinate indices: the first pair of rows
/// of [a b] with nonzero 2×2 minor.
struct PlaneParam {
  int i1 = 0;
  int i2 = 0;
  RationalPoint v0;
  RationalPoint v1;
  RationalPoint v2;

  RationalPoint at(const ExactRational& x1, const ExactRational& x2) const;
};

PlaneParam plane_through(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3);

struct HeightPropertyReport {
  bool negation = false;     // H(-x) = H(x)
  bool inversion = false;    // H(1/x) = H(x), vacuous when x = 0
  bool sum = false;          // H(x + y) <= 2 H(x) H(y)
  bool product = false;      // H(xy) <= H(x) H(y)
  BigInt h_x, h_y, h_sum, h_product;

  bool all() const { return negation && inversion && sum && product; }
};

HeightPropertyReport height_properties_check(const ExactRational& x, const ExactRational& y);

/// Random non-collinear triples with coordinates in [-R, R]^d; records the
/// largest circumcenter component height.
struct HeightAuditRow {
  std::int64_t coord_bound = 0;
  std::size_t samples = 0;
  BigInt max_height;
};

struct HeightAudit {
  std::vector<HeightAuditRow> rows;
  /// Least-squares slope of log(max height) against log(R); the empirical
  /// exponent in height <~ R^c.
  double exponent = 0.0;
};

HeightAudit circumcenter_height_audit(int d, const std::vector<std::int64_t>& bounds, std::size_t samples,
                                      std::uint64_t seed);

}  // namespace toral

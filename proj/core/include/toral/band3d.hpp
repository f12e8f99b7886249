#pragma once

// Bands, band sectors and north poles on the sphere λS² in R³.
//
// A band with integer axis v and lower height ℓ is {x : ℓ|v| <= x·v <= (ℓ+1)|v|}
// with 0 <= ℓ and ℓ + 1 <= λ (bands are split at the equator). ℓ is kept in the
// exact form α + β√m so that both H-parameterized bands (ℓ = λ - H - 1) and
// fixed-height bands (ℓ = a) decide membership exactly. The depth from the
// pole is H = λ - 1 - ℓ.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "toral/exact.hpp"
#include "toral/shell.hpp"

namespace toral {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

/// 1/6 |det(a - d, b - d, c - d)|.
ExactRational tetra_volume(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                           const LatticePoint& d);

/// Affine rank <= 2.
bool coplanar(const std::vector<LatticePoint>& points);

struct BandProfile3D {
  std::int64_t m = 0;
  ExactRational alpha;  // ℓ = alpha + beta·√m
  ExactRational beta;

  /// Band between heights λ - H - 1 and λ - H; requires 0 <= H <= λ - 1.
  static BandProfile3D from_depth(std::int64_t m, const ExactRational& h);
  /// Band between heights a and a + 1; requires a >= 0 and a + 1 <= λ.
  static BandProfile3D at_height(std::int64_t m, const ExactRational& a);
  static BandProfile3D equatorial(std::int64_t m) { return at_height(m, 0); }

  void validate() const;
  HighFloat lambda() const;
  HighFloat lower() const;
  HighFloat depth() const;  // H
  /// R = √(λ² - ℓ²), R0 = √(λ² - (ℓ + 1)²).
  HighFloat radius() const;
  HighFloat inner_radius() const;
};

struct Band3D {
  BandProfile3D profile;
  LatticePoint axis;  // nonzero; the band lies on the side x·axis >= 0

  void validate() const;
  bool contains(std::span<const std::int64_t> x) const;
  /// Unit axis in high precision.
  std::array<HighFloat, 3> unit_axis() const;
};

/// Band with the given axis containing point x of λS² (axis flipped so that
/// x·axis >= 0). ℓ is the integer ⌈x·v̂⌉ - 1 (clamped at 0), or the polar band
/// ℓ = λ - 1 when that integer band would leave the sphere.
Band3D band_through(std::int64_t m, LatticePoint axis, std::span<const std::int64_t> x);

struct BandGeometry {
  HighFloat R;
  HighFloat R0;
  HighFloat spherical_width;  // λ(arccos((λ-H-1)/λ) - arccos((λ-H)/λ))
  HighFloat chord;            // √(1 + (R - R0)²)
  HighFloat zone_area;        // 2πλ·1
};

/// Throws InvalidArgument unless 0 <= H <= λ - 1.
BandGeometry band_radius_and_width(std::int64_t m, const HighFloat& h);

/// ∫_0^1 A(h) dh with A(h) = θ/2 (λ² - (λ-H-h)²) - 1/2 (R0 + (R-R0)h)² sin θ,
/// integrated term by term. Requires 0 < θ < 1.
HighFloat sector_hull_volume(std::int64_t m, const HighFloat& h, const HighFloat& theta);

/// A(h) itself, for quadrature cross-checks.
HighFloat sector_area_profile(std::int64_t m, const HighFloat& h, const HighFloat& theta, const HighFloat& t);

/// λ·∠(P, x) where P = λ·v̂ is the band's north pole. Throws InvalidArgument
/// unless x lies on the band.
HighFloat north_pole_distance(const Band3D& band, std::span<const std::int64_t> x);

enum class BandRegime { Cap, Middle, Sectors };
std::string to_string(BandRegime r);

struct SectorCensus {
  std::size_t index = 0;
  std::size_t count = 0;
  std::vector<LatticePoint> points;
  ExactRational hull_volume;
  bool coplanar = true;
  /// Lattice points on the circle through three non-collinear sector points,
  /// when the sector is coplanar and has three such points.
  std::optional<std::size_t> circle_bound;
};

struct A13Config {
  double theta_coefficient = 1.0;  // θ = c·R^{-2/3}
  double phase = 0.0;              // azimuth of the first sector boundary
  double cap_overlap = 2.0;        // covering multiplicity for the middle regime
  bool circle_bounds = true;
};

struct A13Census {
  std::size_t count = 0;
  std::vector<LatticePoint> members;
  BandRegime regime = BandRegime::Cap;
  double R = 0.0;
  double lambda = 0.0;
  /// Regime 3: sector angle (2π divided evenly) and per-sector data.
  double theta = 0.0;
  std::size_t sector_count = 0;
  std::vector<SectorCensus> sectors;  // occupied sectors only
  /// Regime 2: caps of radius λ^{1/4} needed to cover the band.
  std::size_t covering_caps = 0;
};

/// Regimes: Cap when R² <= 4λ, Sectors when R >= λ^{3/4}, Middle otherwise.
A13Census census_A13(const Shell& shell, const Band3D& band, const A13Config& config = {});

struct A23Census {
  std::size_t count = 0;
  std::vector<LatticePoint> members;
  double alpha = 0.0;          // angle between the axes
  double pole_distance = 0.0;  // λ·∠(P, P')
  double theta = 0.0;          // λ^{-2/3}
  std::size_t occupied_sectors = 0;
  std::size_t covering_sectors = 0;  // sectors of the wider band meeting the sampled intersection
};

/// Throws InvalidArgument("not transverse") unless the axes are ν-transverse
/// with ν = 1/2.
A23Census census_A23(const Shell& shell, const Band3D& b1, const Band3D& b2, std::size_t samples = 1 << 16);

/// Azimuth of x about the unit axis, in [0, 2π).
double azimuth(const std::array<HighFloat, 3>& axis, std::span<const std::int64_t> x);

}  // namespace toral

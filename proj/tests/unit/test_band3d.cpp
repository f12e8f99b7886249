#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include "toral/band3d.hpp"
#include "toral/convex_hull.hpp"
#include "toral/error.hpp"

using namespace toral;

TEST(Band3D, TetraVolume) {
  EXPECT_EQ(tetra_volume({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}), ExactRational(1, 6));
  EXPECT_EQ(tetra_volume({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}), 0);
  EXPECT_EQ(tetra_volume({0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}), ExactRational(4, 3));
}

TEST(Band3D, Coplanar) {
  EXPECT_TRUE(coplanar({{0, 0, 0}, {5, 1, 2}, {3, 3, 3}}));
  EXPECT_FALSE(coplanar({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_TRUE(coplanar({{0, 0, 0}, {1, 2, 3}, {2, 4, 6}, {5, 10, 15}}));
}

TEST(Band3D, HullVolume) {
  EXPECT_EQ(hull_volume({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), ExactRational(1, 6));
  std::vector<LatticePoint> cube;
  for (int i = 0; i < 8; ++i) cube.push_back({i & 1, (i >> 1) & 1, (i >> 2) & 1});
  EXPECT_EQ(hull_volume(cube), 1);
  EXPECT_EQ(hull_volume({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {3, 2, 0}}), 0);
  // Octahedron with interior and edge points.
  std::vector<LatticePoint> octa = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}, {0, 0, 0}};
  EXPECT_EQ(hull_volume(octa), ExactRational(4, 3));
}

TEST(Band3D, RadiusAndWidth) {
  const auto g = band_radius_and_width(10000, 0);
  EXPECT_NEAR(static_cast<double>(g.R), std::sqrt(199.0), 1e-12);
  EXPECT_EQ(g.R0, 0);
  EXPECT_NEAR(static_cast<double>(g.spherical_width), 100 * std::acos(0.99), 1e-10);
  EXPECT_NEAR(static_cast<double>(g.zone_area), 2 * M_PI * 100, 1e-9);

  const auto eq = band_radius_and_width(10000, 99);
  EXPECT_NEAR(static_cast<double>(eq.R), 100.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(eq.spherical_width), 100 * (M_PI / 2 - std::acos(0.01)), 1e-10);
  EXPECT_THROW(band_radius_and_width(10000, 100), InvalidArgument);
}

TEST(Band3D, SectorVolume) {
  const std::int64_t m = 100;
  const HighFloat h = 5, theta = HighFloat(1) / 2;
  auto f = [&](const HighFloat& t) { return sector_area_profile(m, h, theta, t); };
  const HighFloat quad = boost::math::quadrature::gauss<HighFloat, 30>::integrate(f, HighFloat(0), HighFloat(1));
  const HighFloat closed = sector_hull_volume(m, h, theta);
  EXPECT_LT(static_cast<double>(abs(closed - quad) / quad), 1e-10);
  EXPECT_LT(static_cast<double>(sector_hull_volume(m, h, HighFloat("1e-20"))), 1e-18);
  EXPECT_THROW(sector_hull_volume(m, h, 1), InvalidArgument);
  EXPECT_THROW(sector_hull_volume(m, h, 0), InvalidArgument);
}

TEST(Band3D, Membership) {
  const Band3D eq{BandProfile3D::equatorial(25), {0, 0, 1}};
  const Shell s = enumerate_shell(3, 25);
  std::size_t brute = 0;
  for (const auto& p : s.points()) brute += (p[2] >= 0 && p[2] <= 1) ? 1 : 0;
  std::size_t count = 0;
  for (const auto& p : s.points()) count += eq.contains(p) ? 1 : 0;
  EXPECT_EQ(count, brute);

  // Irrational λ: a polar band of depth 0 on |x|² = 2 holds points with x3 >= √2 - 1.
  const Band3D polar{BandProfile3D::from_depth(2, 0), {0, 0, 1}};
  EXPECT_TRUE(polar.contains(LatticePoint{1, 0, 1}));
  EXPECT_FALSE(polar.contains(LatticePoint{1, 1, 0}));
}

TEST(Band3D, BandThrough) {
  const Band3D b = band_through(25, {0, 0, 1}, LatticePoint{3, 0, 4});
  EXPECT_TRUE(b.contains(LatticePoint{3, 0, 4}));
  const Band3D flipped = band_through(25, {0, 0, 1}, LatticePoint{3, 0, -4});
  EXPECT_TRUE(flipped.contains(LatticePoint{3, 0, -4}));
}

TEST(Band3D, NorthPoleDistance) {
  const Band3D polar{BandProfile3D::from_depth(10000, 0), {0, 0, 1}};
  const double d = static_cast<double>(north_pole_distance(polar, LatticePoint{0, 0, 100}));
  EXPECT_EQ(d, 0.0);
  const Band3D eq{BandProfile3D::equatorial(10000), {0, 0, 1}};
  EXPECT_NEAR(static_cast<double>(north_pole_distance(eq, LatticePoint{100, 0, 0})), M_PI / 2 * 100, 1e-9);
  EXPECT_THROW(north_pole_distance(eq, LatticePoint{0, 0, 100}), InvalidArgument);
}

TEST(Band3D, CensusA13) {
  const Shell s = enumerate_shell(3, 25);
  const Band3D eq{BandProfile3D::equatorial(25), {0, 0, 1}};
  const auto c = census_A13(s, eq);
  std::size_t brute = 0;
  for (const auto& p : s.points()) brute += (p[2] >= 0 && p[2] <= 1) ? 1 : 0;
  EXPECT_EQ(c.count, brute);
  EXPECT_EQ(census_A13(enumerate_shell(3, 7), Band3D{BandProfile3D::equatorial(7), {0, 0, 1}}).count, 0u);

  const std::int64_t big = 1000000;
  const auto sectors = census_A13(enumerate_shell(3, big), Band3D{BandProfile3D::equatorial(big), {0, 0, 1}});
  EXPECT_EQ(sectors.regime, BandRegime::Sectors);
  std::size_t total = 0;
  for (const auto& sec : sectors.sectors) {
    total += sec.count;
    if (sec.hull_volume < ExactRational(1, 6)) EXPECT_TRUE(sec.coplanar);
  }
  EXPECT_EQ(total, sectors.count);
}

TEST(Band3D, CensusA23) {
  const Shell s = enumerate_shell(3, 25);
  const Band3D b1 = band_through(25, {0, 0, 1}, LatticePoint{3, 4, 0});
  const Band3D b2 = band_through(25, {1, 0, 0}, LatticePoint{3, 4, 0});
  const auto c = census_A23(s, b1, b2);
  std::size_t brute = 0;
  for (const auto& p : s.points()) brute += (b1.contains(p) && b2.contains(p)) ? 1 : 0;
  EXPECT_EQ(c.count, brute);
  EXPECT_NEAR(c.alpha, M_PI / 2, 1e-12);
  EXPECT_THROW(census_A23(s, b1, band_through(25, {0, 0, 2}, LatticePoint{3, 4, 0})), InvalidArgument);
}

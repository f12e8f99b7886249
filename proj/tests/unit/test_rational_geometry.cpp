#include <gtest/gtest.h>

#include "toral/error.hpp"
#include "toral/rational_geometry.hpp"

using namespace toral;

TEST(RationalGeometry, Circumcenter) {
  EXPECT_EQ(circumcenter({0, 0}, {2, 0}, {0, 2}), (RationalPoint{1, 1}));
  const ExactRational third(1, 3);
  EXPECT_EQ(circumcenter({1, 0, 0}, {0, 1, 0}, {0, 0, 1}), (RationalPoint{third, third, third}));
  EXPECT_THROW(circumcenter({0, 0}, {1, 1}, {2, 2}), InvalidArgument);
  EXPECT_THROW(circumcenter({0, 0}, {0, 0}, {2, 2}), InvalidArgument);
}

TEST(RationalGeometry, CircumcenterIsEquidistant) {
  const LatticePoint a{3, -1, 7, 2}, b{-4, 5, 0, 1}, c{2, 2, -6, 9};
  const RationalPoint x = circumcenter(a, b, c);
  auto dist = [&](const LatticePoint& p) {
    ExactRational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (to_rational(p[i]) - x[i]) * (to_rational(p[i]) - x[i]);
    return s;
  };
  EXPECT_EQ(dist(a), dist(b));
  EXPECT_EQ(dist(a), dist(c));
}

TEST(RationalGeometry, PlaneThrough) {
  auto p = plane_through({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
  EXPECT_EQ(p.i1, 1);
  EXPECT_EQ(p.i2, 2);
  EXPECT_EQ(p.v0, (RationalPoint{0, 0, 0}));
  EXPECT_EQ(p.v1, (RationalPoint{1, 0, 0}));
  EXPECT_EQ(p.v2, (RationalPoint{0, 1, 0}));

  auto q = plane_through({0, 0, 1}, {1, 0, 1}, {0, 1, 1});
  EXPECT_EQ(q.v0, (RationalPoint{0, 0, 1}));
  EXPECT_EQ(q.at(3, 4), (RationalPoint{3, 4, 1}));

  EXPECT_THROW(plane_through({0, 0}, {1, 1}, {2, 2}), InvalidArgument);
}

TEST(RationalGeometry, HeightProperties) {
  EXPECT_TRUE(height_properties_check(ExactRational(1, 2), ExactRational(1, 3)).all());
  EXPECT_TRUE(height_properties_check(0, ExactRational(-5, 7)).all());
  EXPECT_TRUE(height_properties_check(3, -3).all());
  EXPECT_EQ(max_height({ExactRational(1, 3), ExactRational(-7, 2)}), 7);
}

#include <gtest/gtest.h>

#include "toral/error.hpp"
#include "toral/exact.hpp"
#include "toral/shell.hpp"

using namespace toral;

TEST(Shell, CircleOfRadiusFive) {
  const Shell s = enumerate_shell(2, 25);
  ASSERT_EQ(s.size(), 12u);
  const std::vector<LatticePoint> expected = {{-5, 0}, {-4, -3}, {-4, 3}, {-3, -4}, {-3, 4}, {0, -5},
                                              {0, 5},  {3, -4},  {3, 4},  {4, -3},  {4, 3},  {5, 0}};
  EXPECT_EQ(s.points(), expected);
}

TEST(Shell, UnitSphere) {
  const Shell s = enumerate_shell(3, 1);
  EXPECT_EQ(s.size(), 6u);
  EXPECT_TRUE(s.contains(LatticePoint{0, 0, -1}));
  EXPECT_TRUE(s.is_symmetric_closed());
}

TEST(Shell, EmptyShell) {
  EXPECT_TRUE(enumerate_shell(2, 3).empty());
  EXPECT_EQ(representation_count(2, 3), 0u);
}

TEST(Shell, RepresentationCounts) {
  EXPECT_EQ(representation_count(2, 25), 12u);
  EXPECT_EQ(representation_count(3, 2), 12u);
  EXPECT_EQ(representation_count(4, 1), 8u);
  // r_4(n) = 8 σ(n) for odd n.
  EXPECT_EQ(representation_count(4, 5), 48u);
}

TEST(Shell, RejectsBadInput) {
  EXPECT_THROW(enumerate_shell(1, 4), InvalidArgument);
  EXPECT_THROW(enumerate_shell(2, 0), InvalidArgument);
}

TEST(Exact, Height) {
  EXPECT_EQ(height(ExactRational(0)), 1);
  EXPECT_EQ(height(ExactRational(-7, 3)), 7);
  ExactRational half(2, 4);
  half.canonicalize();
  EXPECT_EQ(height(half), 2);
  EXPECT_EQ(height(parse_rational("2/4")), 2);
}

TEST(Exact, SurdSigns) {
  // 3 - 2√2 > 0, 1 - √2 < 0, 3 - √9 = 0.
  EXPECT_EQ(sign_a_plus_b_sqrt(3, -2, 2), 1);
  EXPECT_EQ(sign_a_plus_b_sqrt(1, -1, 2), -1);
  EXPECT_EQ(sign_a_plus_b_sqrt(3, -1, 9), 0);
  // 1 + √2 vs √5: (1 + √2)² = 3 + 2√2 > 5.
  EXPECT_EQ(sign_sum_two_surds(1, 1, 2, -1, 5), 1);
  EXPECT_EQ(sign_sum_two_surds(0, 1, 2, -1, 2), 0);
}

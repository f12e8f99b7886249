#include <gtest/gtest.h>

#include "toral/error.hpp"
#include "toral/quadratic_counting.hpp"

using namespace toral;

TEST(QuadraticCounting, Squarefree) {
  auto a = squarefree_decompose(12);
  EXPECT_EQ(a.P, 3);
  EXPECT_EQ(a.Q, 2);
  auto b = squarefree_decompose(1);
  EXPECT_EQ(b.P, 1);
  EXPECT_EQ(b.Q, 1);
  auto c = squarefree_decompose(50);
  EXPECT_EQ(c.P, 2);
  EXPECT_EQ(c.Q, 5);
  EXPECT_THROW(squarefree_decompose(0), InvalidArgument);
}

TEST(QuadraticCounting, LargeFactorization) {
  // (2^31 - 1)(2^61 - 1)² has a squarefree part beyond trial division.
  const BigInt p31("2147483647"), p61("2305843009213693951");
  auto s = squarefree_decompose(p31 * p61 * p61);
  EXPECT_EQ(s.P, p31);
  EXPECT_EQ(s.Q, p61);
}

TEST(QuadraticCounting, DivisorCount) {
  EXPECT_EQ(divisor_count(12), 6);
  EXPECT_EQ(divisor_count(1), 1);
  EXPECT_EQ(divisor_count(97), 2);
  EXPECT_EQ(divisor_count(-12), 6);
  EXPECT_THROW(divisor_count(0), InvalidArgument);
}

TEST(QuadraticCounting, NormForm) {
  EXPECT_EQ(represent_norm_form(1, 25).size(), 12u);
  auto r = represent_norm_form(2, 3);
  EXPECT_EQ(r.size(), 4u);
  for (const auto& [x, y] : r) {
    EXPECT_EQ(abs(x), 1);
    EXPECT_EQ(abs(y), 1);
  }
  EXPECT_TRUE(represent_norm_form(1, -1).empty());
  EXPECT_EQ(represent_norm_form(1, 0).size(), 1u);
}

TEST(QuadraticCounting, EmbeddedCircle) {
  auto a = embedded_circle_count({3, 4, 0}, {4, 3, 0}, {5, 0, 0});
  EXPECT_EQ(a.count, 12u);
  for (const auto& s : a.trace.solutions) EXPECT_EQ(a.trace.conic.evaluate(s.x1, s.x2), 0);
  EXPECT_EQ(embedded_circle_count({1, 0, 0}, {0, 1, 0}, {0, 0, 1}).count, 3u);
  EXPECT_THROW(embedded_circle_count({0, 0}, {1, 1}, {2, 2}), InvalidArgument);
}

TEST(QuadraticCounting, TiltedCircle) {
  // Great circle of |x|² = 6 in the plane x3 = x1 + x2.
  auto c = embedded_circle_count({1, 1, 2}, {-1, -1, -2}, {2, -1, 1});
  std::size_t brute = 0;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) brute += (x * x + y * y + z * z == 6 && z == x + y) ? 1 : 0;
  EXPECT_EQ(c.count, brute);
}

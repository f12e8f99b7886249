#include <gtest/gtest.h>

#include <cmath>

#include "toral/error.hpp"
#include "toral/restriction.hpp"

using namespace toral;

TEST(Restriction, SingleFrequency) {
  const Shell s = enumerate_shell(2, 25);
  const auto e = Eigenfunction::uniform(s, {{3, 4}});
  EXPECT_NEAR(restriction_norm_sq(e, GeodesicSubmanifold::line(0)), 2.0, 1e-14);
  EXPECT_NEAR(restriction_norm_sq(e, GeodesicSubmanifold::line(ExactRational(1, 3))), 2 * std::sqrt(1 + 1.0 / 9), 1e-14);
}

TEST(Restriction, PhaseZeroCap) {
  const Shell s = enumerate_shell(2, 25);
  const auto e = Eigenfunction::uniform(s, {{3, 4}, {4, 3}});
  const auto line = GeodesicSubmanifold::line(1);
  EXPECT_NEAR(restriction_norm_sq(e, line), 4 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(quadrature_restriction_norm(e, line, 64), 4 * std::sqrt(2.0), 1e-8);
}

TEST(Restriction, HermitianSymmetry) {
  const Shell s = enumerate_shell(2, 65);
  Rng rng(7);
  const auto e = Eigenfunction::random(s, rng);
  std::vector<Complex> conj;
  for (const auto& c : e.coeffs()) conj.push_back(std::conj(c));
  const Eigenfunction f(s, e.support(), conj);
  const auto sub = GeodesicSubmanifold::line(ExactRational(2, 5));
  EXPECT_NEAR(restriction_norm_sq(e, sub), restriction_norm_sq(f, sub), 1e-12);
}

TEST(Restriction, RejectsBadInput) {
  const Shell s = enumerate_shell(2, 25);
  EXPECT_THROW(Eigenfunction(s, {{3, 4}}, {Complex(2, 0)}), InvalidArgument);
  EXPECT_THROW(Eigenfunction::uniform(s, {{1, 1}}), InvalidArgument);
  EXPECT_THROW(GeodesicSubmanifold::line(2), InvalidArgument);
}

TEST(Restriction, KernelMatchesQuadrature) {
  Rng rng(11);
  const Shell s = enumerate_shell(3, 6);
  for (int k = 1; k <= 2; ++k) {
    const auto e = Eigenfunction::random(s, rng);
    const auto sub = GeodesicSubmanifold::random(3, k, rng);
    const double a = restriction_norm_sq(e, sub);
    const double b = quadrature_restriction_norm(e, sub, k == 1 ? 512 : 128);
    EXPECT_NEAR(a, b, 1e-6 * b);
  }
}

TEST(Restriction, ExtremalCap) {
  const Shell s = enumerate_shell(2, 25);
  const auto c = build_extremal_cap_2d(s, {{3, 4}, {4, 3}});
  EXPECT_EQ(c.count, 2u);
  EXPECT_NEAR(c.ratio, 2.0, 1e-12);
  EXPECT_TRUE(c.bracket_holds());
  EXPECT_NEAR(build_extremal_cap_2d(s, {{5, 0}}).ratio, 1.0, 1e-12);
  EXPECT_THROW(build_extremal_cap_2d(s, {{5, 0}, {-5, 0}}), InvalidArgument);
}

TEST(Restriction, ExtremalBandsAndSubsphere) {
  const Shell s2 = enumerate_shell(3, 2);
  const auto b = build_extremal_band_intersection(s2, {{1, 0, 0}, {0, 1, 0}}, {{1, 1, 0}});
  EXPECT_NEAR(b.ratio, 1.0, 1e-12);
  EXPECT_NEAR(b.baseline, b.submanifold.wedge_norm() * 4, 1e-12);

  const auto sub = build_extremal_subsphere_cap(enumerate_shell(3, 25), 2);
  EXPECT_EQ(sub.count, 2u);
  EXPECT_NEAR(sub.ratio, 2.0, 1e-12);
  EXPECT_THROW(build_extremal_subsphere_cap(enumerate_shell(3, 3), 2), InvalidArgument);
}

TEST(Restriction, HemisphereSplit) {
  const Shell s = enumerate_shell(2, 25);
  const auto h = hemisphere_split(s, {ExactRational(1, 2)});
  EXPECT_EQ(h.plus.size() + h.minus.size(), s.size());
  EXPECT_EQ(h.plus_violations, 0u);
  EXPECT_EQ(h.minus_violations, 0u);
}

TEST(Restriction, SlopeBound) {
  const Shell s = enumerate_shell(2, 25);
  const auto r = rational_slope_norm_bound(s, 1, 8, 0);
  EXPECT_GE(r.max_norm_sq, 4 * std::sqrt(2.0) - 1e-12);
  EXPECT_LE(r.max_over_q, r.derived_bound);
  EXPECT_THROW(rational_slope_norm_bound(s, 3, 8, 0), InvalidArgument);
}

TEST(Hilbert, Norms) {
  EXPECT_EQ(hilbert_truncated_norm({0.0, 64}).norm, 0.0);
  const auto h = hilbert_truncated_norm({1.0, 512});
  EXPECT_TRUE(h.converged);
  EXPECT_GE(h.norm, 1.0);
  EXPECT_LE(h.norm, M_PI + 0.1);
  EXPECT_NEAR(hilbert_truncated_norm({-0.5, 64}).norm, hilbert_truncated_norm({0.5, 64}).norm, 1e-7);
}

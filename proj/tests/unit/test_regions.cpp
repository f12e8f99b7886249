#include <gtest/gtest.h>

#include "toral/error.hpp"
#include "toral/regions.hpp"

using namespace toral;

namespace {

RationalPoint rp(std::initializer_list<ExactRational> v) { return RationalPoint(v); }

UnitBand unit_band(RationalPoint u, RationalPoint x0) { return UnitBand{std::move(u), std::move(x0), ExactRational(1, 2)}; }

}  // namespace

TEST(Regions, CapCount) {
  const Shell s = enumerate_shell(2, 25);
  auto r = cap_count(s, Cap{rp({ExactRational(7, 2), ExactRational(7, 2)}), 5});
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.members, (std::vector<LatticePoint>{{3, 4}, {4, 3}}));
  EXPECT_EQ(cap_count(s, Cap{rp({0, 0}), 25}).count, 12u);
  EXPECT_EQ(cap_count(s, Cap{rp({100, 100}), 1}).count, 0u);
}

TEST(Regions, BandCount) {
  const Shell s = enumerate_shell(2, 25);
  auto a = band_count(s, unit_band(rp({1, 0}), rp({5, 0})));
  EXPECT_EQ(a.count, 1u);
  EXPECT_EQ(a.members, (std::vector<LatticePoint>{{5, 0}}));
  auto b = band_count(s, unit_band(rp({1, 1}), rp({3, 4})));
  EXPECT_EQ(b.members, (std::vector<LatticePoint>{{3, 4}, {4, 3}}));
  EXPECT_EQ(band_count(s, unit_band(rp({1, 1}), rp({0, 0}))).count, 0u);
}

TEST(Regions, WedgeAndTransversality) {
  EXPECT_EQ(wedge_norm_sq({rp({1, 0, 0}), rp({0, 1, 0})}), 1);
  EXPECT_EQ(wedge_norm_sq({rp({1, 0, 1}), rp({0, 1, 1})}), 3);
  EXPECT_EQ(wedge_norm_sq({rp({1, 1}), rp({2, 2})}), 0);
  EXPECT_EQ(transversality_nu_sq(2, 3), ExactRational(1, 4));
  EXPECT_TRUE(is_transverse({rp({1, 0, 0}), rp({0, 1, 0})}, ExactRational(1, 4)));
  EXPECT_TRUE(is_transverse({rp({1, 0, 1}), rp({0, 1, 1})}, ExactRational(1, 4)));
  EXPECT_FALSE(is_transverse({rp({1, 1, 0}), rp({2, 2, 0})}, ExactRational(1, 4)));
}

TEST(Regions, BandFamilyValidation) {
  auto b1 = unit_band(rp({1, 0, 0}), rp({0, 0, 0}));
  auto b2 = unit_band(rp({0, 1, 0}), rp({0, 0, 0}));
  auto b3 = unit_band(rp({0, 0, 1}), rp({0, 0, 0}));
  EXPECT_NO_THROW(BandFamily({b1, b2}, 3));
  EXPECT_THROW(BandFamily({b1, b2, b3}, 3), InvalidArgument);
  EXPECT_THROW(BandFamily({b1, unit_band(rp({2, 0, 0}), rp({0, 0, 0}))}, 3), InvalidArgument);
}

TEST(Regions, MaxCap) {
  const Shell s = enumerate_shell(2, 25);
  auto r = max_cap_count(s, 5);
  EXPECT_EQ(r.count, 2u);
  ASSERT_TRUE(r.witness.has_value());
  for (const auto& p : r.members) EXPECT_TRUE(r.witness->contains(p, 25));
  EXPECT_EQ(r.count, max_cap_count_grid(s, 5.0, 20000));

  // ±e1, ±e2 with radius² 1: the center (1, 1)/√2 is at distance² 2 - √2 < 1
  // from both e1 and e2, so two points fit.
  const Shell unit = enumerate_shell(2, 1);
  EXPECT_EQ(max_cap_count(unit, 1).count, 2u);
  EXPECT_EQ(max_cap_count_grid(unit, 1.0, 20000), 2u);
  EXPECT_EQ(max_cap_count(unit, ExactRational(1, 2)).count, 1u);
  EXPECT_EQ(max_cap_count(s, 100).count, 12u);

  auto empty = max_cap_count(enumerate_shell(2, 3), 1);
  EXPECT_EQ(empty.count, 0u);
  EXPECT_FALSE(empty.witness.has_value());
}

TEST(Regions, MaxCapAgreesWithGridIn3D) {
  for (std::int64_t m : {9, 25, 50}) {
    const Shell s = enumerate_shell(3, m);
    const auto r2 = default_cap_radius_sq(m);
    EXPECT_GE(max_cap_count(s, r2).count, max_cap_count_grid(s, r2.get_d(), 20000)) << m;
  }
}

TEST(Regions, BandIntersection) {
  const Shell s25 = enumerate_shell(2, 25);
  BandSearchConfig cfg;
  cfg.max_tuples = 2000;
  auto a = max_band_intersection(s25, 1, cfg);
  EXPECT_GE(a.count, 2u);
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_EQ(family_count(s25, *a.witness).count, a.count);

  const Shell s2 = enumerate_shell(3, 2);
  // Anchored at lattice points the best is 2, e.g. {(1,0,±1)}. A closed band of
  // width 1 centered at x1 = 1/2 holds both levels x1 = 0 and x1 = 1, so over
  // all anchors the maximum is 5.
  std::size_t lattice_best = 0;
  for (const auto& p : s2.points()) {
    const UnitBand b1 = unit_band(rp({1, 0, 0}), to_rational_point(p));
    const UnitBand b2 = unit_band(rp({0, 1, 0}), to_rational_point(p));
    lattice_best = std::max(lattice_best, family_count(s2, BandFamily({b1, b2}, 3)).count);
  }
  EXPECT_EQ(lattice_best, 2u);
  auto b = max_over_anchors(s2, {{1, 0, 0}, {0, 1, 0}}, ExactRational(1, 2));
  EXPECT_EQ(b.count, 5u);
  ASSERT_TRUE(b.witness.has_value());
  EXPECT_EQ(family_count(s2, *b.witness).count, 5u);

  EXPECT_THROW(max_band_intersection(s25, 2, cfg), InvalidArgument);
}

TEST(Regions, Dyadic) {
  EXPECT_EQ(dyadic_level(2, 1), 1);
  EXPECT_EQ(dyadic_level(0, 1), 0);
  EXPECT_EQ(dyadic_level(10, 1), 4);
  const Shell s = enumerate_shell(2, 25);
  auto part = dyadic_decompose(s, rp({0, 1}), LatticePoint{0, 5});
  const auto idx = *s.index_of(LatticePoint{0, -5});
  ASSERT_GE(part.levels.size(), 5u);
  EXPECT_NE(std::find(part.levels[4].begin(), part.levels[4].end(), idx), part.levels[4].end());
  const auto self = *s.index_of(LatticePoint{0, 5});
  EXPECT_NE(std::find(part.levels[0].begin(), part.levels[0].end(), self), part.levels[0].end());
}

#include <gtest/gtest.h>

#include "toral/json_io.hpp"

using namespace toral;
namespace jio = toral::json_io;

TEST(JsonIo, Rationals) {
  EXPECT_EQ(jio::rational(ExactRational(-7, 3)), "-7/3");
  EXPECT_EQ(jio::rational(jio::json("10/4")), ExactRational(5, 2));
  EXPECT_EQ(jio::rational(jio::json(3)), 3);
}

TEST(JsonIo, ShellRoundTrip) {
  const Shell s = enumerate_shell(3, 9);
  EXPECT_EQ(jio::shell(jio::shell(s)), s);
}

TEST(JsonIo, EigenfunctionRoundTrip) {
  const Shell s = enumerate_shell(2, 25);
  Rng rng(3);
  const auto e = Eigenfunction::random(s, rng);
  const auto j = jio::eigenfunction(e);
  EXPECT_EQ(j["m"], 25);
  EXPECT_EQ(j["coeffs"].size(), s.size());
  const auto back = jio::eigenfunction(j);
  EXPECT_EQ(back.support(), e.support());
  for (std::size_t i = 0; i < e.coeffs().size(); ++i) EXPECT_EQ(back.coeffs()[i], e.coeffs()[i]);
}

TEST(JsonIo, SubmanifoldAndBands) {
  Rng rng(5);
  const auto sub = GeodesicSubmanifold::random(4, 2, rng);
  const auto back = jio::submanifold(jio::submanifold(sub));
  EXPECT_EQ(back.frame, sub.frame);
  EXPECT_EQ(back.base, sub.base);

  const UnitBand b{{1, 1, 0}, {3, 4, 0}, ExactRational(1, 2)};
  const auto bb = jio::band(jio::band(b));
  EXPECT_EQ(bb.direction, b.direction);
  EXPECT_EQ(bb.anchor, b.anchor);
  EXPECT_EQ(bb.half_width, b.half_width);
}

TEST(JsonIo, RoundtripChecker) {
  const Shell s = enumerate_shell(2, 25);
  jio::json j;
  j["shell"] = jio::shell(s);
  j["members"] = jio::lattice_points(std::vector<LatticePoint>{{3, 4}, {4, 3}});
  EXPECT_EQ(jio::roundtrip_mismatch(j), "");
  j["members"] = jio::json::array({jio::json::array({3, 4.5})});
  EXPECT_NE(jio::roundtrip_mismatch(j), "");
}

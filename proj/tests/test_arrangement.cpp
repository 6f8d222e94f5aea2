#include <gtest/gtest.h>

#include "support.hpp"

using namespace wktest;

namespace {

int count_kind(const std::vector<ComplementComponent>& cs, ComponentKind k) {
  return static_cast<int>(std::count_if(cs.begin(), cs.end(), [k](const auto& c) { return c.kind == k; }));
}

}  // namespace

TEST(Subdivision, TwoOverlappingSquares) {
  Subdivision s = Subdivision::build({Region(square_polygon(0, 0, 2)), Region(square_polygon(1, 1, 2))});
  EXPECT_EQ(s.vertices().size(), 10u);  // 8 corners and 2 crossings
  int doubly = 0;
  for (const auto& f : s.faces())
    if (f.bounded && f.cover == 2) {
      ++doubly;
      EXPECT_EQ(f.area, Scalar(1));
    }
  EXPECT_EQ(doubly, 1);
  EXPECT_EQ(s.component_count(), 1);
}

TEST(Subdivision, RandomInvariants) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto a = random_arrangement(rng);
    ASSERT_EQ(arrangement_invariants(a), "") << "arrangement " << i;
  }
}

TEST(Complement, RowSplitsPlaneInTwo) {
  std::vector<Region> row{Region(square_polygon(0, 0, 1))};
  Subdivision s = Subdivision::build_periodic(row, {Scalar(1), Scalar(0)});
  auto cs = complement_components(s);
  EXPECT_EQ(count_kind(cs, ComponentKind::Upper), 1);
  EXPECT_EQ(count_kind(cs, ComponentKind::Lower), 1);
  EXPECT_EQ(count_kind(cs, ComponentKind::Cavity), 0);
}

TEST(Complement, RingHasCavity) {
  std::vector<Region> ring;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != 1 || y != 1) ring.push_back(Region(square_polygon(x, y, 1)));
  Subdivision s = Subdivision::build(ring);
  auto cs = complement_components(s);
  EXPECT_EQ(count_kind(cs, ComponentKind::Cavity), 1);
  EXPECT_EQ(count_kind(cs, ComponentKind::Unbounded), 1);
}

TEST(Complement, IntrinsicHoleIsNotACavity) {
  std::vector<Region> one{Region(square_polygon(0, 0, 3), square_polygon(1, 1, 1))};
  auto cs = complement_components(Subdivision::build(one));
  EXPECT_EQ(count_kind(cs, ComponentKind::IntrinsicHole), 1);
  EXPECT_EQ(count_kind(cs, ComponentKind::Cavity), 0);
}

TEST(Complement, DiagonalChainPinches) {
  // Squares meeting only at corners leave the two sides touching at points.
  std::vector<Region> chain{Region(square_polygon(0, 0, 1))};
  Subdivision s = Subdivision::build_periodic(chain, {Scalar(1), Scalar(1)});
  auto cs = complement_components(s);
  const ComplementComponent* up = nullptr;
  const ComplementComponent* lo = nullptr;
  for (const auto& c : cs) {
    if (c.kind == ComponentKind::Upper) up = &c;
    if (c.kind == ComponentKind::Lower) lo = &c;
  }
  if (up && lo) EXPECT_FALSE(min_separation_positive(s, *up, *lo));
}

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace wktest;

namespace {

using Cells = std::set<std::pair<int, int>>;

// Random connected polyomino; retried until its outline is a simple polygon.
Cells random_polyomino(std::mt19937_64& rng, int n) {
  while (true) {
    Cells cells{{0, 0}};
    while (static_cast<int>(cells.size()) < n) {
      auto it = cells.begin();
      std::advance(it, rng() % cells.size());
      static const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
      int k = rng() % 4;
      cells.insert({it->first + dx[k], it->second + dy[k]});
    }
    try {
      polyomino_outline({cells.begin(), cells.end()});
      return cells;
    } catch (const ShapeError&) {
    }
  }
}

Region region_of(const Cells& c) { return Region(polyomino_outline({c.begin(), c.end()})); }

Cells shifted(const Cells& c, int dx, int dy) {
  Cells out;
  for (auto [x, y] : c) out.insert({x + dx, y + dy});
  return out;
}

int shared_cell_edges(const Cells& a, const Cells& b) {
  int n = 0;
  for (auto [x, y] : a)
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
      if (b.count({x + dx, y + dy})) ++n;
  return n;
}

}  // namespace

TEST(Polygon, AreaAndOrientation) {
  Polygon sq = square_polygon(0, 0, 2);
  EXPECT_EQ(area(sq), Scalar(4));
  std::vector<Point> cw(sq.vertices.rbegin(), sq.vertices.rend());
  EXPECT_EQ(signed_area(cw), Scalar(-4));
  Polygon c = canonical_polygon(cw);
  EXPECT_EQ(signed_area(c.vertices), Scalar(4));
  EXPECT_EQ(c.vertices.front(), (Point{0, 0}));
}

TEST(Polygon, CanonicalRemovesCollinear) {
  Polygon p = canonical_polygon({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {2, 2}, {0, 2}});
  EXPECT_EQ(p.size(), 4u);
  EXPECT_TRUE(polygon_defect(p).empty());
}

TEST(Polygon, Defects) {
  EXPECT_FALSE(polygon_defect(Polygon{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}).empty());
  EXPECT_FALSE(polygon_defect(Polygon{{{0, 0}, {1, 0}}}).empty());
  EXPECT_FALSE(polygon_defect(Polygon{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}).empty());  // clockwise
  EXPECT_THROW(validate_polygon(Polygon{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}), GeometryError);
}

TEST(Region, HoleIsOutside) {
  Region r(square_polygon(0, 0, 3), square_polygon(1, 1, 1));
  EXPECT_EQ(area(r), Scalar(8));
  EXPECT_EQ(locate(r, {Scalar::rational(3, 2), Scalar::rational(3, 2)}), Location::Outside);
  EXPECT_EQ(locate(r, {Scalar(1), Scalar::rational(3, 2)}), Location::Boundary);
  EXPECT_EQ(locate(r, {Scalar::rational(1, 2), Scalar::rational(1, 2)}), Location::Inside);
  // A unit square sitting in the hole does not overlap the region.
  EXPECT_FALSE(interiors_intersect(r, Region(square_polygon(1, 1, 1))));
  EXPECT_TRUE(interiors_intersect(r, Region(square_polygon(Scalar::rational(1, 2), 1, 1))));
}

TEST(Region, TouchingIsNotOverlap) {
  Region a(square_polygon(0, 0, 1));
  EXPECT_FALSE(interiors_intersect(a, Region(square_polygon(1, 0, 1))));
  EXPECT_FALSE(interiors_intersect(a, Region(square_polygon(1, 1, 1))));
  EXPECT_TRUE(interiors_intersect(a, Region(square_polygon(0, 0, 1))));
  EXPECT_TRUE(interiors_intersect(a, Region(square_polygon(Scalar::rational(1, 4), Scalar::rational(1, 4),
                                                           Scalar::rational(1, 2)))));
  auto s = shared_boundary(a, Region(square_polygon(1, Scalar::rational(1, 2), 1)));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].length_squared(), Scalar::rational(1, 4));
  EXPECT_THROW(shared_boundary(a, a), GeometryError);
}

TEST(Region, PolyominoOracle) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    Cells a = random_polyomino(rng, 1 + rng() % 7), b0 = random_polyomino(rng, 1 + rng() % 7);
    Cells b = shifted(b0, static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3);
    Region ra = region_of(a), rb = region_of(b);
    bool overlap = false;
    for (const auto& c : a) overlap |= b.count(c) > 0;
    ASSERT_EQ(interiors_intersect(ra, rb), overlap);
    ASSERT_EQ(area(ra), Scalar(static_cast<long long>(a.size())));
    if (overlap) continue;
    // Shared segments are axis-parallel with integer lengths; compare the sum.
    long long len = 0;
    for (const auto& s : shared_boundary(ra, rb)) {
      Scalar dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
      len += (dx.sign() < 0 ? -dx : dx).floor().convert_to<long long>() +
             (dy.sign() < 0 ? -dy : dy).floor().convert_to<long long>();
    }
    ASSERT_EQ(len, shared_cell_edges(a, b));
    // Moving both by the same isometry changes nothing.
    Isometry g{static_cast<int>(rng() % 12), rng() % 2 == 1, {random_scalar(rng, 5), random_scalar(rng, 5)}};
    ASSERT_FALSE(interiors_intersect(transformed(ra, g), transformed(rb, g)));
    ASSERT_EQ(area(transformed(ra, g)), area(ra));
  }
}

TEST(Region, InteriorPointIsInside) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Region r = region_of(random_polyomino(rng, 1 + rng() % 9));
    ASSERT_EQ(locate(r, interior_point(r)), Location::Inside);
  }
}

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace wktest;

namespace {

using Cells = std::set<std::pair<int, int>>;

Cells random_cells(std::mt19937_64& rng, int n) {
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

// Translations v = p - q over outline vertices for which the shifted cells
// are disjoint and some cell edge is shared.
std::set<std::pair<long long, long long>> oracle_contacts(const Cells& cells, const Polygon& outline) {
  std::set<std::pair<long long, long long>> out;
  for (const auto& p : outline.vertices)
    for (const auto& q : outline.vertices) {
      long long vx = (p.x - q.x).floor().convert_to<long long>(), vy = (p.y - q.y).floor().convert_to<long long>();
      bool overlap = false;
      int shared = 0;
      for (auto [x, y] : cells) {
        if (cells.count({x - vx, y - vy})) overlap = true;
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
          if (cells.count({x + dx - vx, y + dy - vy})) ++shared;
      }
      if (!overlap && shared > 0) out.insert({vx, vy});
    }
  return out;
}

}  // namespace

TEST(Contacts, SquareUnderEachGroup) {
  RealizedShape sq = unit_square();
  for (auto opts : {SymmetryOptions{false, 1}, SymmetryOptions{false, 4}, SymmetryOptions{true, 12}}) {
    auto cs = enumerate_contacts({&sq, Isometry::identity()}, sq, opts);
    EXPECT_EQ(cs.size(), 4u) << opts.rotation_subgroup;
    for (const auto& g : cs) EXPECT_TRUE(opts.permits(g));
  }
}

TEST(Contacts, PolyominoTranslationOracle) {
  std::mt19937_64 rng(42);
  const SymmetryOptions translations{false, 1};
  for (int i = 0; i < 40; ++i) {
    Cells cells = random_cells(rng, 1 + rng() % 6);
    Polygon outline = polyomino_outline({cells.begin(), cells.end()});
    RealizedShape s = realize(Region(outline), "poly");
    auto got = enumerate_contacts({&s, Isometry::identity()}, s, translations);
    std::set<std::pair<long long, long long>> mine;
    for (const auto& g : got) {
      ASSERT_TRUE(g.is_translation());
      mine.insert({g.shift.x.floor().convert_to<long long>(), g.shift.y.floor().convert_to<long long>()});
    }
    ASSERT_EQ(mine, oracle_contacts(cells, outline)) << "polyomino " << i;
  }
}

TEST(Contacts, ContactsShareBoundaryWithoutOverlap) {
  for (const auto& name : corpus_names()) {
    RealizedShape s = realize(corpus(name));
    ContactTable table(s, {});
    Region base = s.region;
    for (const auto& c : table.contacts()) {
      Region r = transformed(base, c);
      ASSERT_FALSE(interiors_intersect(base, r)) << name;
      ASSERT_FALSE(shared_boundary(base, r).empty()) << name;
    }
  }
}

TEST(Symmetries, Counts) {
  EXPECT_EQ(symmetries(unit_square()).size(), 8u);
  EXPECT_EQ(symmetries(unit_hexagon()).size(), 12u);
  EXPECT_EQ(symmetries(unit_hexagon(), {false, 12}).size(), 6u);
  EXPECT_EQ(symmetries(realize(corpus("chopped_disk"))).size(), 4u);
  EXPECT_EQ(symmetries(realize(corpus("deformed_hexagon"))).size(), 1u);
}

TEST(Symmetries, CanonicalPoseIsInvariant) {
  std::mt19937_64 rng(8);
  RealizedShape sq = unit_square();
  auto syms = symmetries(sq);
  for (int i = 0; i < 100; ++i) {
    Isometry g{static_cast<int>(rng() % 12), rng() % 2 == 1, {random_scalar(rng, 5), random_scalar(rng, 5)}};
    Isometry c = canonical_pose(g, syms);
    for (const auto& s : syms) ASSERT_EQ(canonical_pose(compose(g, s), syms), c);
    ASSERT_EQ(transformed(sq.region, c).outer.vertices.size(), 4u);
  }
}

TEST(ContactTable, RelationsMatchDirectTests) {
  RealizedShape s = realize(corpus("heesch_pentagon"));
  ContactTable table(s, {});
  const auto& cs = table.contacts();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    Isometry g = cs[rng() % cs.size()];
    Isometry h = compose(cs[rng() % cs.size()], cs[rng() % cs.size()]);
    Relation r = table.relation(g, h);
    Region a = transformed(s.region, g), b = transformed(s.region, h);
    bool overlap = interiors_intersect(a, b);
    ASSERT_EQ(r.conflict, overlap);
    if (!overlap) ASSERT_EQ(r.shares, !shared_boundary(a, b).empty());
  }
}

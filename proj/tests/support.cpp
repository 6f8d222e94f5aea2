#include "support.hpp"

#include <set>

namespace wktest {

Dec to_dec(const Scalar& s) {
  Dec a(s.a().str()), b(s.b().str()), d(s.d().str());
  return (a + b * boost::multiprecision::sqrt(Dec(3))) / d;
}

Scalar random_scalar(std::mt19937_64& rng, int max_component) {
  std::uniform_int_distribution<long long> c(-max_component, max_component), den(1, max_component);
  return Scalar(c(rng), c(rng), den(rng));
}

Polygon square_polygon(const Scalar& x0, const Scalar& y0, const Scalar& side) {
  return Polygon{{{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}}};
}

RealizedShape unit_square() { return realize(Region(square_polygon(0, 0, 1)), "square"); }

RealizedShape unit_hexagon() {
  std::vector<Point> v;
  for (int k = 0; k < 6; ++k) v.push_back({cos30k(2 * k), sin30k(2 * k)});
  return realize(Region(Polygon{v}), "hexagon");
}

Isometry at(long long x, long long y) { return Isometry::translation({Scalar(x), Scalar(y)}); }

ThicknessCertificate square_rows(const RealizedShape& sq, int rows, int per_row, const std::vector<Scalar>& shifts) {
  ThicknessCertificate tc;
  tc.config.period = {Scalar(per_row), Scalar(0)};
  for (int r = 0; r < rows; ++r)
    for (int j = 0; j < per_row; ++j) {
      Scalar s = r < static_cast<int>(shifts.size()) ? shifts[r] : Scalar(0);
      tc.config.units.push_back({&sq, Isometry::translation({Scalar(j) + s, Scalar(r)})});
      tc.classes.push_back(r + 1);
    }
  return tc;
}

ThicknessCertificate moved(const ThicknessCertificate& tc, const Isometry& g) {
  ThicknessCertificate out = tc;
  out.config.period = g.linear(tc.config.period);
  for (auto& u : out.config.units) u.pose = compose(g, u.pose);
  return out;
}

ThicknessCertificate random_tiling_wall(std::mt19937_64& rng, const RealizedShape& sq, const RealizedShape& hex,
                                        bool odd) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int t = odd ? 2 * pick(0, 3) + 1 : pick(1, 6);
  // Each class is a band of 1-2 consecutive rows.
  std::vector<int> band;
  for (int c = 1; c <= t; ++c)
    for (int k = pick(1, 2); k > 0; --k) band.push_back(c);
  const int rows = static_cast<int>(band.size());
  const int per = pick(1, 3);

  ThicknessCertificate tc;
  if (pick(0, 1) == 0) {
    std::vector<Scalar> shifts;
    for (int r = 0; r < rows; ++r) shifts.push_back(Scalar::rational(pick(0, 5), 6));
    tc = square_rows(sq, rows, per, shifts);
    tc.classes = {};
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < per; ++j) tc.classes.push_back(band[r]);
  } else {
    // Zigzag rows of flat-topped hexagons; row r sits sqrt3 * r higher.
    tc.config.period = {Scalar(3 * per), Scalar(0)};
    const Scalar h = Scalar::sqrt3(), half = Scalar(0, 1, 2);
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < per; ++j) {
        Scalar x = Scalar(3 * j);
        tc.config.units.push_back({&hex, Isometry::translation({x, Scalar(r) * h})});
        tc.config.units.push_back({&hex, Isometry::translation({x + Scalar::rational(3, 2), Scalar(r) * h + half})});
        tc.classes.push_back(band[r]);
        tc.classes.push_back(band[r]);
      }
  }
  Isometry g{pick(0, 11), pick(0, 1) == 1, {Scalar::rational(pick(-9, 9), pick(1, 4)), Scalar(0, pick(-3, 3), 2)}};
  return moved(tc, g);
}

}  // namespace wktest

namespace wktest {

RandomArrangement random_arrangement(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RandomArrangement a;
  const int n = pick(1, 6);
  const bool rects = pick(0, 1) == 0;
  for (int i = 0; i < n; ++i) {
    if (rects) {
      int x0 = pick(0, 6), y0 = pick(0, 6), x1 = x0 + pick(1, 4), y1 = y0 + pick(1, 4);
      a.rects.push_back({x0, y0, x1, y1});
      a.regions.push_back(Region(Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}));
    } else {
      // Triangles, rectangles and hexagons under exact rotations.
      Polygon p;
      switch (pick(0, 2)) {
        case 0: p = Polygon{{{0, 0}, {pick(1, 3), 0}, {0, pick(1, 3)}}}; break;
        case 1: p = square_polygon(0, 0, pick(1, 3)); break;
        default: p = unit_hexagon().region.outer; break;
      }
      Isometry g{pick(0, 11), pick(0, 1) == 1, {Scalar::rational(pick(0, 8), pick(1, 2)), Scalar(0, pick(0, 4), 2)}};
      Region r(transformed(p, g));
      if (pick(0, 4) == 0) {
        // A hole strictly inside a big square.
        r = Region(square_polygon(0, 0, 4), square_polygon(1, 1, pick(1, 2)));
        r = transformed(r, Isometry::translation({Scalar(pick(0, 4)), Scalar(pick(0, 4))}));
      }
      a.regions.push_back(r);
    }
  }
  return a;
}

long long grid_union_area(const std::vector<std::array<int, 4>>& rects) {
  std::set<std::pair<int, int>> cells;
  for (const auto& r : rects)
    for (int x = r[0]; x < r[2]; ++x)
      for (int y = r[1]; y < r[3]; ++y) cells.insert({x, y});
  return static_cast<long long>(cells.size());
}

std::string arrangement_invariants(const RandomArrangement& a) {
  Subdivision s = Subdivision::build(a.regions);
  for (int e : s.euler_per_component())
    if (e != 2) return "Euler characteristic " + std::to_string(e);
  // Faces weighted by cover add up to the input areas.
  Scalar weighted(0), covered(0), input(0);
  for (const auto& f : s.faces()) {
    if (!f.bounded) {
      if (f.cover != 0) return "unbounded face is covered";
      continue;
    }
    if (f.area.sign() <= 0) return "face with non-positive area";
    weighted += Scalar(f.cover) * f.area;
    if (f.cover > 0) covered += f.area;
  }
  for (const auto& r : a.regions) input += area(r);
  if (weighted != input) return "cover-weighted face area " + weighted.to_string() + " != " + input.to_string();
  if (!a.rects.empty() && covered != Scalar(grid_union_area(a.rects)))
    return "union area " + covered.to_string() + " != grid count";
  return {};
}

}  // namespace wktest

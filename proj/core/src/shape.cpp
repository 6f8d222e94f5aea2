#include "wallkit/shape.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

namespace wallkit {

Scalar EdgeProfile::area() const {
  // The apex runs left to right above the axis, so the closed loop is clockwise.
  return -signed_area(apex);
}

EdgeProfile triangle_profile(std::string id, const Scalar& s0, const Scalar& s1, const Scalar& height) {
  EdgeProfile p;
  p.id = std::move(id);
  p.s0 = s0;
  p.s1 = s1;
  p.apex = {{s0, Scalar(0)}, {Scalar::rational(1, 2) * (s0 + s1), height}, {s1, Scalar(0)}};
  return p;
}

EdgeProfile default_profile() {
  return triangle_profile("tri", Scalar::rational(3, 8), Scalar::rational(5, 8), Scalar::rational(1, 8));
}

namespace {

Vec2 outward(const Vec2& edge) { return {edge.y, -edge.x}; }

Point edge_point(const Point& a, const Point& b, const Point& local, Side side) {
  Vec2 e = b - a;
  Scalar h = side == Side::In ? -local.y : local.y;
  return a + local.x * e + h * outward(e);
}

std::string edge_msg(int edge, const std::string& what) {
  std::ostringstream os;
  os << "edge " << edge << ": " << what;
  return os.str();
}

void validate_profile(const EdgeProfile& p) {
  if (p.apex.size() < 3) throw ShapeError("profile " + p.id + ": apex needs at least 3 points");
  if (p.s0.sign() < 0 || compare(p.s0, p.s1) >= 0 || compare(p.s1, Scalar(1)) > 0)
    throw ShapeError("profile " + p.id + ": footprint must satisfy 0 <= s0 < s1 <= 1");
  if (!(p.apex.front() == Point{p.s0, Scalar(0)}) || !(p.apex.back() == Point{p.s1, Scalar(0)}))
    throw ShapeError("profile " + p.id + ": apex must start at (s0,0) and end at (s1,0)");
  for (std::size_t i = 1; i + 1 < p.apex.size(); ++i)
    if (p.apex[i].y.sign() <= 0) throw ShapeError("profile " + p.id + ": interior apex points need y > 0");
  std::vector<Point> loop(p.apex.rbegin(), p.apex.rend());
  Polygon footprint{loop};
  std::string defect = polygon_defect(footprint);
  if (!defect.empty()) throw ShapeError("profile " + p.id + ": footprint region not simple: " + defect);
}

std::vector<Point> realize_points(const DecoratedShape& d, const std::vector<const Decoration*>& per_edge) {
  std::vector<Point> pts;
  const auto& base = d.base;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Point& a = base[i];
    const Point& b = base.next(i);
    pts.push_back(a);
    const Decoration* dec = per_edge[i];
    if (!dec) continue;
    const EdgeProfile& prof = d.profiles.at(dec->profile);
    for (const auto& lp : prof.apex) pts.push_back(edge_point(a, b, lp, dec->side));
  }
  // Footprints touching the edge ends produce duplicates of base vertices.
  std::vector<Point> out;
  for (auto& p : pts)
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

Polygon strip_collinear(std::vector<Point> pts) {
  // Like canonical_polygon but keeps the starting vertex when possible.
  Polygon canon = canonical_polygon(std::move(pts));
  return canon;
}

}  // namespace

void validate(const DecoratedShape& d) {
  std::string defect = polygon_defect(d.base);
  if (!defect.empty()) throw ShapeError("base polygon: " + defect);
  if (d.hole) {
    try {
      validate_region(Region(d.base, d.hole));
    } catch (const GeometryError& e) {
      throw ShapeError(e.what());
    }
  }
  for (const auto& [id, prof] : d.profiles) {
    if (id != prof.id) throw ShapeError("profile key " + id + " does not match its id " + prof.id);
    validate_profile(prof);
  }
  std::vector<const Decoration*> per_edge(d.base.size(), nullptr);
  for (const auto& dec : d.decorations) {
    if (dec.edge < 0 || dec.edge >= static_cast<int>(d.base.size()))
      throw ShapeError(edge_msg(dec.edge, "no such edge"));
    if (per_edge[dec.edge]) throw ShapeError(edge_msg(dec.edge, "decorated twice"));
    if (!d.profiles.count(dec.profile)) throw ShapeError(edge_msg(dec.edge, "unknown profile " + dec.profile));
    per_edge[dec.edge] = &dec;
  }
  Region base_region(d.base, d.hole);
  // Dents must stay strictly inside the base.
  for (const auto& dec : d.decorations) {
    if (dec.side != Side::In) continue;
    const auto& prof = d.profiles.at(dec.profile);
    const Point& a = d.base[dec.edge];
    const Point& b = d.base.next(dec.edge);
    for (std::size_t i = 1; i + 1 < prof.apex.size(); ++i)
      if (locate(base_region, edge_point(a, b, prof.apex[i], Side::In)) != Location::Inside)
        throw ShapeError(edge_msg(dec.edge, "dent leaves the base polygon"));
  }
  // Add decorations one at a time so a failure names its edge.
  std::vector<const Decoration*> partial(d.base.size(), nullptr);
  std::vector<int> order;
  for (const auto& dec : d.decorations) order.push_back(dec.edge);
  std::sort(order.begin(), order.end());
  for (int e : order) {
    partial[e] = per_edge[e];
    Polygon poly{realize_points(d, partial)};
    std::string why = polygon_defect(poly);
    if (!why.empty() && why.find("collinear") == std::string::npos)
      throw ShapeError(edge_msg(e, "realization is not simple (" + why + ")"));
    if (d.hole) {
      Polygon canon = canonical_polygon(poly.vertices);
      try {
        validate_region(Region(canon, d.hole));
      } catch (const GeometryError& err) {
        throw ShapeError(edge_msg(e, std::string("decoration collides with the hole: ") + err.what()));
      }
    }
  }
}

RealizedShape realize(const Region& r, std::string name) {
  validate_region(r);
  RealizedShape s;
  s.name = std::move(name);
  s.region = r;
  s.area = wallkit::area(r);
  s.diameter_squared = diameter_squared(r.outer);
  s.interior = interior_point(r);
  s.box = bbox_of(r.outer.vertices);
  return s;
}

RealizedShape realize(const DecoratedShape& d) {
  validate(d);
  std::vector<const Decoration*> per_edge(d.base.size(), nullptr);
  for (const auto& dec : d.decorations) per_edge[dec.edge] = &dec;
  Polygon poly = strip_collinear(realize_points(d, per_edge));
  RealizedShape s;
  try {
    s = realize(Region(poly, d.hole), d.name);
  } catch (const GeometryError& e) {
    throw ShapeError(std::string("realization invalid: ") + e.what());
  }
  s.provenance = d;
  return s;
}

DecoratedShape transformed(const DecoratedShape& d, const Isometry& g) {
  DecoratedShape out = d;
  const int n = static_cast<int>(d.base.size());
  out.base.vertices.clear();
  for (const auto& v : d.base.vertices) out.base.vertices.push_back(g.apply(v));
  if (d.hole) out.hole = wallkit::transformed(*d.hole, g);
  if (!g.reflect) return out;
  std::reverse(out.base.vertices.begin(), out.base.vertices.end());
  // Reversal maps edge i (v_i -> v_{i+1}) to edge n-2-i, traversed the other
  // way, so profiles are mirrored along the edge.
  out.profiles.clear();
  for (const auto& [id, prof] : d.profiles) {
    EdgeProfile m;
    m.id = id;
    m.s0 = Scalar(1) - prof.s1;
    m.s1 = Scalar(1) - prof.s0;
    for (auto it = prof.apex.rbegin(); it != prof.apex.rend(); ++it) m.apex.push_back({Scalar(1) - it->x, it->y});
    out.profiles.emplace(id, std::move(m));
  }
  for (auto& dec : out.decorations) dec.edge = ((n - 2 - dec.edge) % n + n) % n;
  return out;
}

// ---------------------------------------------------------------------------
// Corpus

namespace {

Scalar half_angle_tangent(double deg) {
  // Exact for multiples of 30 degrees (tan of multiples of 15 lie in Q(sqrt3)).
  long k = std::lround(deg);
  if (std::fabs(deg - double(k)) < 1e-12 && k % 30 == 0) {
    switch (((k / 30) % 12 + 12) % 12) {
      case 0: return Scalar(0);
      case 1: return Scalar(2, -1, 1);          // tan 15
      case 2: return Scalar(0, 1, 3);           // tan 30
      case 3: return Scalar(1);                 // tan 45
      case 4: return Scalar(0, 1, 1);           // tan 60
      case 5: return Scalar(2, 1, 1);           // tan 75
      default: break;
    }
  }
  double t = std::tan(deg * M_PI / 360.0);
  long best_p = 0, best_q = 1;
  double best_err = 1e9;
  for (long q = 1; q <= 16; ++q) {
    long p = std::lround(t * double(q));
    double err = std::fabs(t - double(p) / double(q));
    if (err < best_err - 1e-15) {
      best_err = err;
      best_p = p;
      best_q = q;
    }
  }
  return Scalar::rational(best_p, best_q);
}

Point circle_point(double deg) {
  Scalar t = half_angle_tangent(deg);
  Scalar t2 = t * t;
  Scalar den = Scalar(1) + t2;
  return {(Scalar(1) - t2) / den, Scalar(2) * t / den};
}

}  // namespace

std::vector<Point> circle_arc(int from_deg, int to_deg, int m) {
  if (m < 2 || m % 2 != 0) throw ShapeError("arc segment count must be even and >= 2");
  if (from_deg % 30 != 0 || to_deg % 30 != 0) throw ShapeError("arc ends must be multiples of 30 degrees");
  int mid2 = from_deg + to_deg;  // twice the mid angle
  if (mid2 % 30 != 0) throw ShapeError("arc mid angle must be a multiple of 15 degrees");
  std::vector<Point> pts(m + 1);
  for (int i = 0; i <= m / 2; ++i) {
    double deg = from_deg + double(to_deg - from_deg) * i / m;
    if (i == 0) {
      pts[i] = {cos30k(from_deg / 30), sin30k(from_deg / 30)};
    } else {
      pts[i] = circle_point(deg);
    }
  }
  Isometry mirror{mid2 / 30, true, {}};
  for (int i = m / 2 + 1; i <= m; ++i) pts[i] = mirror.apply(pts[m - i]);
  return pts;
}

Polygon polyomino_outline(const std::vector<std::pair<int, int>>& cells) {
  std::set<std::pair<int, int>> cs(cells.begin(), cells.end());
  // Directed unit edges with the cell on the left.
  std::map<std::pair<int, int>, std::pair<int, int>> next;
  auto add = [&](int x0, int y0, int x1, int y1) {
    if (next.count({x0, y0})) throw ShapeError("polyomino outline has a pinch vertex");
    next[{x0, y0}] = {x1, y1};
  };
  for (auto [x, y] : cs) {
    if (!cs.count({x, y - 1})) add(x, y, x + 1, y);
    if (!cs.count({x + 1, y})) add(x + 1, y, x + 1, y + 1);
    if (!cs.count({x, y + 1})) add(x + 1, y + 1, x, y + 1);
    if (!cs.count({x - 1, y})) add(x, y + 1, x, y);
  }
  std::vector<Point> pts;
  auto start = next.begin()->first;
  auto cur = start;
  do {
    pts.push_back({Scalar(cur.first), Scalar(cur.second)});
    cur = next.at(cur);
    if (pts.size() > next.size()) throw ShapeError("polyomino outline is not a single cycle");
  } while (cur != start);
  if (pts.size() != next.size()) throw ShapeError("polyomino has more than one boundary cycle");
  return canonical_polygon(std::move(pts));
}

namespace {

Polygon regular_hexagon() {
  std::vector<Point> v;
  for (int k = 0; k < 6; ++k) v.push_back({cos30k(2 * k), sin30k(2 * k)});
  return Polygon{v};
}

DecoratedShape chopped_disk(int m) {
  if (m < 4 || m % 2) throw ShapeError("chopped_disk: m must be even and >= 4");
  DecoratedShape d;
  d.name = "chopped_disk";
  // Flats at x = +-sqrt3/2 (chords of 60 degrees), arcs spanning 120 degrees.
  Scalar hx = Scalar(0, 1, 2), hy = Scalar::rational(1, 2);
  d.base = Polygon{{{hx, -hy}, {hx, hy}, {-hx, hy}, {-hx, -hy}}};
  // Top edge runs from (sqrt3/2, 1/2) to (-sqrt3/2, 1/2): local s = 1/2 - x/sqrt3, h = (y - 1/2)/sqrt3.
  EdgeProfile arc;
  arc.id = "arc";
  const Scalar r3 = Scalar::sqrt3();
  for (const auto& p : circle_arc(30, 150, m))
    arc.apex.push_back({Scalar::rational(1, 2) - p.x / r3, (p.y - hy) / r3});
  arc.s0 = arc.apex.front().x;
  arc.s1 = arc.apex.back().x;
  d.profiles[arc.id] = arc;
  d.decorations = {{1, "arc", Side::Out}, {3, "arc", Side::Out}};
  return d;
}

DecoratedShape square_semicircle(int m) {
  if (m < 4 || m % 2) throw ShapeError("square_semicircle: m must be even and >= 4");
  DecoratedShape d;
  d.name = "square_semicircle";
  d.base = Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  EdgeProfile semi;
  semi.id = "semicircle";
  // Circle of radius 1/2 centred at (1/2, 0), traversed from s = 0 to s = 1.
  const Scalar half = Scalar::rational(1, 2);
  for (const auto& p : circle_arc(0, 180, m)) semi.apex.push_back({half - half * p.x, half * p.y});
  semi.s0 = Scalar(0);
  semi.s1 = Scalar(1);
  d.profiles[semi.id] = semi;
  d.decorations = {{0, "semicircle", Side::Out}};
  return d;
}

DecoratedShape heesch_pentagon(const std::string& variant) {
  DecoratedShape d;
  d.name = "heesch_pentagon";
  const Scalar r3h = Scalar(0, 1, 2);
  if (variant == "house") {
    // Square with an equilateral triangle on top.
    d.base = Polygon{{{0, 0}, {1, 0}, {1, 1}, {Scalar::rational(1, 2), Scalar(1) + r3h}, {0, 1}}};
  } else if (variant.empty() || variant == "heesch") {
    // Square, equilateral triangle on top, and a 30-60-90 triangle whose
    // hypotenuse lies on the right side of the square; its short leg continues
    // the right roof edge.
    d.base = Polygon{{{0, 0},
                      {1, 0},
                      {Scalar(1) + Scalar(0, 1, 4), Scalar::rational(1, 4)},
                      {Scalar::rational(1, 2), Scalar(1) + r3h},
                      {0, 1}}};
  } else if (variant == "sawtooth") {
    // 30-60-90 triangle under the bottom edge instead; this one tiles.
    d.base = Polygon{{{0, 0}, {Scalar(1), Scalar(0, -1, 3)}, {1, 1}, {Scalar::rational(1, 2), Scalar(1) + r3h}, {0, 1}}};
  } else {
    throw ShapeError("heesch_pentagon: unknown variant " + variant);
  }
  return d;
}

std::vector<std::pair<int, int>> parse_cells(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  std::regex re(R"(\((-?\d+),(-?\d+)\))");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it)
    out.emplace_back(std::stoi((*it)[1]), std::stoi((*it)[2]));
  return out;
}

// Shipped reconstruction; see friedman_region().
constexpr const char* kFriedmanDefault = "add=(-1,0)(-1,1)(-1,2);hole=(1,3)";

DecoratedShape friedman_region(const std::string& variant) {
  std::string v = variant.empty() ? kFriedmanDefault : variant;
  auto semi = v.find(';');
  if (v.rfind("add=", 0) != 0 || semi == std::string::npos || v.compare(semi + 1, 5, "hole=") != 0)
    throw ShapeError("friedman_region: variant must look like add=(x,y)(x,y)(x,y);hole=(x,y)");
  auto adds = parse_cells(v.substr(4, semi - 4));
  auto holes = parse_cells(v.substr(semi + 6));
  if (adds.size() != 3 || holes.size() != 1) throw ShapeError("friedman_region: need three additions and one hole");
  std::vector<std::pair<int, int>> cells;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 7; ++y) cells.emplace_back(x, y);
  for (auto [x, y] : adds) {
    bool inside = x >= 0 && x < 5 && y >= 0 && y < 7;
    bool adjacent = (x == -1 || x == 5) ? (y >= 0 && y < 7) : ((y == -1 || y == 7) && x >= 0 && x < 5);
    if (inside || !adjacent) throw ShapeError("friedman_region: additions must be edge-adjacent to the rectangle");
    cells.emplace_back(x, y);
  }
  auto [hx, hy] = holes.front();
  if (hx < 1 || hx > 3 || hy < 1 || hy > 5) throw ShapeError("friedman_region: hole must be an interior cell");
  cells.erase(std::remove(cells.begin(), cells.end(), std::make_pair(hx, hy)), cells.end());
  DecoratedShape d;
  d.name = "friedman_region";
  std::vector<std::pair<int, int>> solid;
  for (auto c : cells) solid.push_back(c);
  solid.emplace_back(hx, hy);  // outline ignores the hole
  d.base = polyomino_outline(solid);
  d.hole = Polygon{{{hx, hy}, {hx + 1, hy}, {hx + 1, hy + 1}, {hx, hy + 1}}};
  return d;
}

// Hexagon edge decorations: one character per edge, 'B' bump, 'D' dent,
// '-' straight.
DecoratedShape decorated_hexagon(const std::string& name, const std::string& pattern) {
  if (pattern.size() != 6) throw ShapeError(name + ": pattern needs 6 characters");
  DecoratedShape d;
  d.name = name;
  d.base = regular_hexagon();
  EdgeProfile tri = default_profile();
  d.profiles[tri.id] = tri;
  for (int e = 0; e < 6; ++e) {
    char c = pattern[e];
    if (c == 'B') d.decorations.push_back({e, tri.id, Side::Out});
    else if (c == 'D') d.decorations.push_back({e, tri.id, Side::In});
    else if (c != '-') throw ShapeError(name + ": pattern characters must be B, D or -");
  }
  return d;
}

constexpr const char* kDeformedHexagonDefault = "dent=3";
constexpr const char* kMannDefault = "-BBBDD";

DecoratedShape deformed_hexagon(const std::string& variant) {
  std::string v = variant.empty() ? kDeformedHexagonDefault : variant;
  if (v.rfind("dent=", 0) != 0 || v.size() != 6 || v[5] < '2' || v[5] > '5')
    throw ShapeError("deformed_hexagon: variant must be dent=2..5");
  std::string pattern = "BB----";
  pattern[v[5] - '0'] = 'D';
  return decorated_hexagon("deformed_hexagon", pattern);
}

DecoratedShape mann_region(const std::string& variant) {
  return decorated_hexagon("mann_region", variant.empty() ? kMannDefault : variant);
}

}  // namespace

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"chopped_disk",     "square_semicircle", "heesch_pentagon",
                                                 "friedman_region",  "deformed_hexagon",  "mann_region"};
  return names;
}

DecoratedShape corpus(const std::string& name, const CorpusParams& params) {
  if (name == "chopped_disk") return chopped_disk(params.m);
  if (name == "square_semicircle") return square_semicircle(params.m);
  if (name == "heesch_pentagon") return heesch_pentagon(params.variant);
  if (name == "friedman_region") return friedman_region(params.variant);
  if (name == "deformed_hexagon") return deformed_hexagon(params.variant);
  if (name == "mann_region") return mann_region(params.variant);
  throw ShapeError("unknown corpus shape: " + name);
}

}  // namespace wallkit

#include "wallkit/geom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wallkit {

double Segment::length() const { return std::sqrt(length_squared().to_double()); }

void BBox::expand(const BBox& o) {
  xmin = std::min(xmin, o.xmin);
  ymin = std::min(ymin, o.ymin);
  xmax = std::max(xmax, o.xmax);
  ymax = std::max(ymax, o.ymax);
}

BBox bbox_of(const std::vector<Point>& pts) {
  BBox b{1e300, 1e300, -1e300, -1e300};
  for (const auto& p : pts) {
    double x = p.x.to_double(), y = p.y.to_double();
    b.xmin = std::min(b.xmin, x);
    b.xmax = std::max(b.xmax, x);
    b.ymin = std::min(b.ymin, y);
    b.ymax = std::max(b.ymax, y);
  }
  double pad = 1e-9 * (1.0 + std::max(std::fabs(b.xmax) + std::fabs(b.xmin), std::fabs(b.ymax) + std::fabs(b.ymin)));
  b.xmin -= pad;
  b.ymin -= pad;
  b.xmax += pad;
  b.ymax += pad;
  return b;
}

std::vector<std::vector<Point>> Region::cycles() const {
  std::vector<std::vector<Point>> out{outer.vertices};
  if (hole) out.emplace_back(hole->vertices.rbegin(), hole->vertices.rend());
  return out;
}

Scalar signed_area(const std::vector<Point>& pts) {
  Scalar twice;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    const Point& q = pts[(i + 1) % pts.size()];
    twice += cross(p, q);
  }
  return twice * Scalar::rational(1, 2);
}

Scalar area(const Polygon& p) { return signed_area(p.vertices); }
Scalar area(const Region& r) { return r.hole ? area(r.outer) - area(*r.hole) : area(r.outer); }

Polygon canonical_polygon(std::vector<Point> pts) {
  // Drop consecutive duplicates and collinear middles until stable.
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() >= 3; ++i) {
      const Point& a = pts[(i + pts.size() - 1) % pts.size()];
      const Point& b = pts[i];
      const Point& c = pts[(i + 1) % pts.size()];
      if (a == b || (orient(a, b, c) == 0 && dot_sign(b - a, c - b) > 0)) {
        pts.erase(pts.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (pts.size() >= 3 && signed_area(pts).sign() < 0) std::reverse(pts.begin(), pts.end());
  if (!pts.empty()) {
    auto it = std::min_element(pts.begin(), pts.end(), lex_less);
    std::rotate(pts.begin(), it, pts.end());
  }
  return Polygon{std::move(pts)};
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  return dot_sign(p - a, p - b) <= 0;
}

namespace {

// Do closed segments ab and cd share a point?
bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return o1 * o2 < 0 && o3 * o4 < 0;
}

// Points of segment cd that split segment ab (excluding nothing; the caller
// dedups). Appends to out.
void split_points(const Point& a, const Point& b, const Point& c, const Point& d, std::vector<Point>& out) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  if (o1 == 0 && o2 == 0) {
    if (on_segment(c, a, b)) out.push_back(c);
    if (on_segment(d, a, b)) out.push_back(d);
    return;
  }
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 > 0 || o3 * o4 > 0) return;
  if (o1 == 0) {
    out.push_back(c);
    return;
  }
  if (o2 == 0) {
    out.push_back(d);
    return;
  }
  if (o3 == 0 || o4 == 0) return;  // endpoint of ab, already a split point
  Vec2 r = b - a, s = d - c;
  Scalar t = cross(c - a, s) / cross(r, s);
  out.push_back(a + t * r);
}

struct DirectedEdge {
  Point a, b;
  BBox box;
};

std::vector<DirectedEdge> directed_edges(const Region& r) {
  std::vector<DirectedEdge> out;
  for (const auto& cyc : r.cycles()) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const Point& a = cyc[i];
      const Point& b = cyc[(i + 1) % cyc.size()];
      out.push_back({a, b, bbox_of({a, b})});
    }
  }
  return out;
}

struct Piece {
  Point a, b;
};

// Splits every edge of p at its contacts with q's edges.
std::vector<Piece> pieces_against(const std::vector<DirectedEdge>& pe, const std::vector<DirectedEdge>& qe) {
  std::vector<Piece> out;
  for (const auto& e : pe) {
    std::vector<Point> pts{e.a, e.b};
    for (const auto& f : qe) {
      if (!e.box.overlaps(f.box)) continue;
      split_points(e.a, e.b, f.a, f.b, pts);
    }
    Vec2 dir = e.b - e.a;
    std::vector<std::pair<Scalar, Point>> keyed;
    keyed.reserve(pts.size());
    for (auto& p : pts) keyed.emplace_back(dot(p - e.a, dir), std::move(p));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
                keyed.end());
    for (std::size_t i = 0; i + 1 < keyed.size(); ++i) out.push_back({keyed[i].second, keyed[i + 1].second});
  }
  return out;
}

Location locate_edges(const std::vector<DirectedEdge>& edges, const Point& p) {
  bool inside = false;
  for (const auto& e : edges) {
    const Point& a = e.a;
    const Point& b = e.b;
    int o = orient(a, b, p);
    if (o == 0 && dot_sign(p - a, p - b) <= 0) return Location::Boundary;
    bool a_above = compare(a.y, p.y) > 0;
    bool b_above = compare(b.y, p.y) > 0;
    if (a_above == b_above) continue;
    // Edge straddles the horizontal line through p; count crossings right of p.
    if (b_above ? o > 0 : o < 0) inside = !inside;
  }
  return inside ? Location::Inside : Location::Outside;
}

// Direction of the boundary edge of q through point m (m on q's boundary,
// not at a vertex of q).
const DirectedEdge* edge_through(const std::vector<DirectedEdge>& qe, const Point& m) {
  for (const auto& e : qe)
    if (on_segment(m, e.a, e.b)) return &e;
  return nullptr;
}

BBox region_box(const std::vector<DirectedEdge>& es) {
  BBox b = es.front().box;
  for (const auto& e : es) b.expand(e.box);
  return b;
}

bool pieces_enter(const std::vector<DirectedEdge>& pe, const std::vector<DirectedEdge>& qe) {
  const Scalar half = Scalar::rational(1, 2);
  for (const auto& pc : pieces_against(pe, qe)) {
    Point m = half * (pc.a + pc.b);
    Location loc = locate_edges(qe, m);
    if (loc == Location::Inside) return true;
    if (loc == Location::Boundary) {
      const DirectedEdge* f = edge_through(qe, m);
      if (f && same_direction(f->b - f->a, pc.b - pc.a)) return true;
    }
  }
  return false;
}

}  // namespace

std::string polygon_defect(const Polygon& p) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  std::ostringstream os;
  if (n < 3) return "polygon has fewer than 3 vertices";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (v[i] == v[j]) {
        os << "repeated vertex " << i << " and " << j;
        return os.str();
      }
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(p.prev(i), v[i], p.next(i)) == 0) {
      os << "collinear consecutive vertices at vertex " << i;
      return os.str();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common vertex; since no three
        // consecutive vertices are collinear this always holds.
        continue;
      }
      if (segments_touch(v[i], p.next(i), v[j], p.next(j))) {
        os << "edges " << i << " and " << j << " intersect";
        return os.str();
      }
    }
  }
  if (signed_area(v).sign() <= 0) return "polygon is not counter-clockwise";
  return {};
}

void validate_polygon(const Polygon& p) {
  std::string d = polygon_defect(p);
  if (!d.empty()) throw GeometryError(d);
}

void validate_region(const Region& r) {
  validate_polygon(r.outer);
  if (!r.hole) return;
  std::string d = polygon_defect(*r.hole);
  if (!d.empty()) throw GeometryError("hole: " + d);
  for (const auto& q : r.hole->vertices)
    if (locate(std::vector<std::vector<Point>>{r.outer.vertices}, q) != Location::Inside)
      throw GeometryError("hole is not strictly inside the outer polygon");
  for (std::size_t i = 0; i < r.hole->size(); ++i)
    for (std::size_t j = 0; j < r.outer.size(); ++j)
      if (segments_touch((*r.hole)[i], r.hole->next(i), r.outer[j], r.outer.next(j)))
        throw GeometryError("hole touches the outer boundary");
}

Polygon transformed(const Polygon& p, const Isometry& g) {
  std::vector<Point> pts;
  pts.reserve(p.size());
  for (const auto& v : p.vertices) pts.push_back(g.apply(v));
  if (g.reflect) std::reverse(pts.begin(), pts.end());
  return Polygon{std::move(pts)};
}

Region transformed(const Region& r, const Isometry& g) {
  Region out(transformed(r.outer, g));
  if (r.hole) out.hole = transformed(*r.hole, g);
  return out;
}

Location locate(const std::vector<std::vector<Point>>& cycles, const Point& p) {
  std::vector<DirectedEdge> edges;
  for (const auto& cyc : cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i) edges.push_back({cyc[i], cyc[(i + 1) % cyc.size()], {}});
  return locate_edges(edges, p);
}

Location locate(const Region& r, const Point& p) { return locate(r.cycles(), p); }

bool interiors_intersect(const Region& p, const Region& q) {
  auto pe = directed_edges(p);
  auto qe = directed_edges(q);
  if (!region_box(pe).overlaps(region_box(qe))) return false;
  return pieces_enter(pe, qe) || pieces_enter(qe, pe);
}

std::vector<Segment> shared_boundary_unchecked(const Region& p, const Region& q) {
  auto pe = directed_edges(p);
  auto qe = directed_edges(q);
  std::vector<Segment> out;
  if (!region_box(pe).overlaps(region_box(qe))) return out;
  const Scalar half = Scalar::rational(1, 2);
  for (const auto& pc : pieces_against(pe, qe)) {
    Point m = half * (pc.a + pc.b);
    const DirectedEdge* f = edge_through(qe, m);
    if (!f || !same_direction(f->a - f->b, pc.b - pc.a)) continue;
    if (!out.empty() && out.back().b == pc.a && orient(out.back().a, out.back().b, pc.b) == 0) {
      out.back().b = pc.b;
    } else {
      out.push_back({pc.a, pc.b});
    }
  }
  // The first and last segments may join across the cycle start.
  if (out.size() >= 2 && out.back().b == out.front().a && orient(out.back().a, out.back().b, out.front().b) == 0) {
    out.front().a = out.back().a;
    out.pop_back();
  }
  return out;
}

std::vector<Segment> shared_boundary(const Region& p, const Region& q) {
  if (interiors_intersect(p, q)) throw GeometryError("shared_boundary: interiors overlap");
  return shared_boundary_unchecked(p, q);
}

Point interior_point(const Polygon& p) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  const Scalar third = Scalar::rational(1, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = p.prev(i);
    const Point& b = v[i];
    const Point& c = p.next(i);
    if (orient(a, b, c) <= 0) continue;
    bool ear = true;
    for (std::size_t j = 0; j < n && ear; ++j) {
      const Point& w = v[j];
      if (w == a || w == b || w == c) continue;
      if (orient(a, b, w) >= 0 && orient(b, c, w) >= 0 && orient(c, a, w) >= 0) ear = false;
    }
    if (ear) return third * (a + b + c);
  }
  throw GeometryError("interior_point: no ear found");
}

Point interior_point(const Region& r) {
  if (!r.hole) return interior_point(r.outer);
  // Try points near each outer vertex along the inward bisector-ish direction:
  // midpoints of short ear triangles until one avoids the hole.
  const auto& v = r.outer.vertices;
  const std::size_t n = v.size();
  for (int shrink = 1; shrink <= 64; shrink *= 2) {
    Scalar w = Scalar::rational(1, 3 * shrink);
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = r.outer.prev(i);
      const Point& b = v[i];
      const Point& c = r.outer.next(i);
      if (orient(a, b, c) <= 0) continue;
      Point cand = b + w * ((a - b) + (c - b));
      if (locate(r, cand) == Location::Inside) return cand;
    }
  }
  throw GeometryError("interior_point: no interior point found");
}

namespace detail {
void segment_split_points(const Point& a, const Point& b, const Point& c, const Point& d, std::vector<Point>& out) {
  split_points(a, b, c, d, out);
}
}  // namespace detail

Scalar diameter_squared(const Polygon& p) {
  Scalar best;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      Scalar d = dot(p[i] - p[j], p[i] - p[j]);
      if (compare(d, best) > 0) best = d;
    }
  return best;
}

}  // namespace wallkit

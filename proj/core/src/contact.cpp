#include "wallkit/contact.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <unordered_set>

namespace wallkit {

std::vector<Isometry> SymmetryOptions::linear_parts() const {
  if (rotation_subgroup < 1 || 12 % rotation_subgroup != 0)
    throw std::invalid_argument("rotation subgroup order must divide 12");
  std::vector<Isometry> out;
  int step = 12 / rotation_subgroup;
  for (int r = 0; r < 12; r += step) {
    out.push_back({r, false, {}});
    if (allow_reflections) out.push_back({r, true, {}});
  }
  return out;
}

bool SymmetryOptions::permits(const Isometry& g) const {
  if (g.reflect && !allow_reflections) return false;
  return ((g.rot % 12) + 12) % (12 / rotation_subgroup) == 0;
}

BBox PlacedUnit::box() const {
  std::vector<Point> pts;
  for (const auto& v : shape->region.outer.vertices) pts.push_back(pose.apply(v));
  return bbox_of(pts);
}

namespace {

struct DirectedEdge {
  Point a, b;
};

std::vector<DirectedEdge> edges_of(const Region& r) {
  std::vector<DirectedEdge> out;
  for (const auto& cyc : r.cycles())
    for (std::size_t i = 0; i < cyc.size(); ++i) out.push_back({cyc[i], cyc[(i + 1) % cyc.size()]});
  return out;
}

std::vector<Point> vertices_of(const Region& r) {
  std::vector<Point> out = r.outer.vertices;
  if (r.hole) out.insert(out.end(), r.hole->vertices.begin(), r.hole->vertices.end());
  return out;
}

// Positive-length overlap of e with f translated by v, where f is known to be
// anti-parallel to e.
bool collinear_overlap(const DirectedEdge& e, const DirectedEdge& f, const Vec2& v) {
  Vec2 d = e.b - e.a;
  Point fa = f.a + v, fb = f.b + v;
  if (cross_sign(d, fa - e.a) != 0) return false;
  // f runs backwards along d, so fb projects below fa.
  Scalar tb = dot(d, fb - e.a), ta = dot(d, fa - e.a), len = dot(d, d);
  Scalar lo = compare(tb, Scalar(0)) > 0 ? tb : Scalar(0);
  Scalar hi = compare(ta, len) < 0 ? ta : len;
  return compare(lo, hi) < 0;
}

bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) || (o3 == 0 && on_segment(a, c, d)) ||
         (o4 == 0 && on_segment(b, c, d));
}

bool boundaries_touch(const Region& p, const Region& q) {
  auto pe = edges_of(p), qe = edges_of(q);
  for (const auto& e : pe)
    for (const auto& f : qe)
      if (segments_touch(e.a, e.b, f.a, f.b)) return true;
  return false;
}

bool same_region(const Region& r, const Region& s) {
  auto canon = [](const Region& x) {
    Region c(canonical_polygon(x.outer.vertices));
    if (x.hole) c.hole = canonical_polygon(x.hole->vertices);
    return c;
  };
  return canon(r) == canon(s);
}

}  // namespace

std::vector<Isometry> symmetries(const RealizedShape& shape, const SymmetryOptions& opts) {
  std::vector<Isometry> out;
  Polygon base = canonical_polygon(shape.region.outer.vertices);
  for (const auto& lin : opts.linear_parts()) {
    Region moved = transformed(shape.region, lin);
    Polygon mc = canonical_polygon(moved.outer.vertices);
    if (mc.size() != base.size()) continue;
    Isometry s = lin;
    s.shift = base[0] - mc[0];
    if (same_region(transformed(shape.region, s), shape.region)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

Isometry canonical_pose(const Isometry& g, const std::vector<Isometry>& syms) {
  Isometry best = g;
  for (const auto& s : syms) {
    Isometry c = compose(g, s);
    if (canonical_less(c, best)) best = c;
  }
  return best;
}

std::vector<Isometry> enumerate_contacts(const PlacedUnit& fixed, const RealizedShape& shape,
                                         const SymmetryOptions& opts) {
  const Region f_region = fixed.region();
  const auto f_edges = edges_of(f_region);
  const auto f_verts = vertices_of(f_region);
  const auto syms = symmetries(shape, opts);

  std::set<Isometry, decltype(&canonical_less)> found(&canonical_less);
  for (const auto& lin : opts.linear_parts()) {
    const Region m_region = transformed(shape.region, lin);
    const auto m_edges = edges_of(m_region);
    const auto m_verts = vertices_of(m_region);

    std::vector<std::pair<const DirectedEdge*, const DirectedEdge*>> antiparallel;
    for (const auto& e : f_edges)
      for (const auto& f : m_edges)
        if (same_direction(e.b - e.a, f.a - f.b)) antiparallel.emplace_back(&e, &f);
    if (antiparallel.empty()) continue;

    std::unordered_set<Vec2, Vec2Hash> tried;
    for (const auto& p : f_verts) {
      for (const auto& q : m_verts) {
        Vec2 v = p - q;
        if (!tried.insert(v).second) continue;
        bool edge_contact = std::any_of(antiparallel.begin(), antiparallel.end(),
                                        [&](const auto& pr) { return collinear_overlap(*pr.first, *pr.second, v); });
        if (!edge_contact) continue;
        Isometry g{lin.rot, lin.reflect, v};
        if (interiors_intersect(f_region, transformed(shape.region, g))) continue;
        found.insert(canonical_pose(g, syms));
      }
    }
  }
  std::vector<Isometry> out(found.begin(), found.end());
  return out;
}

bool conflicts(const PlacedUnit& u, const std::vector<PlacedUnit>& placed) {
  const BBox ub = u.box();
  std::optional<Region> ur;
  for (const auto& w : placed) {
    if (!ub.overlaps(w.box())) continue;
    if (!ur) ur = u.region();
    if (interiors_intersect(*ur, w.region())) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

ContactTable::ContactTable(const RealizedShape& shape, const SymmetryOptions& opts) : shape_(&shape), opts_(opts) {
  contacts_ = enumerate_contacts(PlacedUnit{&shape, Isometry::identity()}, shape, opts);
  syms_ = wallkit::symmetries(shape, opts);
  cx_ = (shape.box.xmin + shape.box.xmax) / 2;
  cy_ = (shape.box.ymin + shape.box.ymax) / 2;
  for (const auto& v : shape.region.outer.vertices)
    radius_ = std::max(radius_, std::hypot(v.x.to_double() - cx_, v.y.to_double() - cy_));
  radius_ += 1e-7;
}

std::pair<double, double> ContactTable::centre(const Isometry& g) const {
  double ang = g.rot * M_PI / 6.0;
  double c = std::cos(ang), s = std::sin(ang);
  double x = cx_, y = g.reflect ? -cy_ : cy_;
  return {c * x - s * y + g.shift.x.to_double(), s * x + c * y + g.shift.y.to_double()};
}

Relation ContactTable::relation(const Isometry& g, const Isometry& h) const {
  auto [gx, gy] = centre(g);
  auto [hx, hy] = centre(h);
  if (std::hypot(gx - hx, gy - hy) > 2 * radius_) return {};
  return relative(compose(invert(g), h));
}

Relation ContactTable::relative(const Isometry& rel_in) const {
  auto [x, y] = centre(rel_in);
  if (std::hypot(x - cx_, y - cy_) > 2 * radius_) return {};
  const Isometry rel = canonical_pose(rel_in, syms_);
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(rel);
    if (it != cache_.end()) return it->second;
  }
  const Region& a = shape_->region;
  const Region b = transformed(a, rel);
  Relation r;
  r.conflict = interiors_intersect(a, b);
  if (r.conflict) {
    r.touch = true;
  } else {
    r.shares = !shared_boundary_unchecked(a, b).empty();
    r.touch = r.shares || boundaries_touch(a, b);
  }
  std::unique_lock lock(mu_);
  cache_.emplace(rel, r);
  return r;
}

std::size_t ContactTable::cache_size() const {
  std::shared_lock lock(mu_);
  return cache_.size();
}

}  // namespace wallkit

#include "wallkit/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace wallkit {

namespace {

struct InputSeg {
  Point a, b;
  int polygon;
  int cycle;
  BBox box;
  double ax, ay, bx, by;
};

// Orientation sign from doubles when it is certain, 2 otherwise.
int quick_orient(double ax, double ay, double bx, double by, double cx, double cy) {
  double l = (bx - ax) * (cy - ay), r = (by - ay) * (cx - ax);
  double det = l - r, bound = 1e-10 * (std::fabs(l) + std::fabs(r)) + 1e-300;
  if (det > bound) return 1;
  if (det < -bound) return -1;
  return 2;
}

// True when the two segments certainly do not meet.
bool certainly_apart(const InputSeg& s, const InputSeg& t) {
  int o1 = quick_orient(s.ax, s.ay, s.bx, s.by, t.ax, t.ay);
  int o2 = quick_orient(s.ax, s.ay, s.bx, s.by, t.bx, t.by);
  if (o1 != 2 && o1 == o2) return true;
  int o3 = quick_orient(t.ax, t.ay, t.bx, t.by, s.ax, s.ay);
  int o4 = quick_orient(t.ax, t.ay, t.bx, t.by, s.bx, s.by);
  return o3 != 2 && o3 == o4;
}

struct PairHash {
  std::size_t operator()(const std::pair<int, int>& p) const {
    return std::size_t(p.first) * 0x9E3779B97F4A7C15ull ^ std::size_t(p.second);
  }
};

// Angular order of direction vectors, counter-clockwise starting at +x.
bool angle_less(const Vec2& u, const Vec2& v) {
  auto half = [](const Vec2& w) {
    int sy = w.y.sign();
    return (sy > 0 || (sy == 0 && w.x.sign() > 0)) ? 0 : 1;
  };
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return cross_sign(u, v) > 0;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Location locate_in_cycle(const std::vector<Point>& cyc, const Point& p) {
  return locate(std::vector<std::vector<Point>>{cyc}, p);
}

}  // namespace

Subdivision Subdivision::build(const std::vector<Region>& regions) {
  Subdivision s;
  s.construct(regions);
  return s;
}

Subdivision Subdivision::build_periodic(const std::vector<Region>& fundamental, const Vec2& period, int window) {
  if (period.is_zero()) throw GeometryError("build_periodic: zero period");
  Subdivision s;
  s.period_ = period;
  if (window <= 0) {
    // Wide enough that the central copies never see the window ends.
    double px = period.x.to_double(), py = period.y.to_double();
    double plen = std::hypot(px, py);
    double lo = 1e300, hi = -1e300;
    for (const auto& r : fundamental)
      for (const auto& v : r.outer.vertices) {
        double t = (v.x.to_double() * px + v.y.to_double() * py) / plen;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    window = static_cast<int>(std::ceil((hi - lo) / plen)) + 3;
    window = std::min(window, 64);
  }
  s.window_ = window;
  std::vector<Region> expanded;
  for (int k = -window; k <= window; ++k) {
    Isometry t = Isometry::translation(Scalar(k) * period);
    for (std::size_t i = 0; i < fundamental.size(); ++i) {
      expanded.push_back(k == 0 ? fundamental[i] : transformed(fundamental[i], t));
      s.polygon_copy_.push_back(k);
      s.polygon_source_.push_back(static_cast<int>(i));
    }
  }
  s.construct(expanded);
  return s;
}

std::vector<int> Subdivision::cycle_half_edges(int h) const {
  std::vector<int> out;
  int cur = h;
  do {
    out.push_back(cur);
    cur = half_edges_[cur].next;
  } while (cur != h);
  return out;
}

void Subdivision::construct(const std::vector<Region>& regions) {
  polygon_count_ = static_cast<int>(regions.size());
  std::vector<InputSeg> segs;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    auto cycles = regions[r].cycles();
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      const auto& cyc = cycles[c];
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const Point& a = cyc[i];
        const Point& b = cyc[(i + 1) % cyc.size()];
        segs.push_back({a, b, static_cast<int>(r), static_cast<int>(c), bbox_of({a, b}), a.x.to_double(),
                        a.y.to_double(), b.x.to_double(), b.y.to_double()});
      }
    }
  }

  // Split points via a sweep over x-extents.
  std::vector<std::vector<Point>> splits(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) splits[i] = {segs[i].a, segs[i].b};
  std::vector<std::size_t> order(segs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return segs[x].box.xmin < segs[y].box.xmin; });
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const auto& si = segs[order[oi]];
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const auto& sj = segs[order[oj]];
      if (sj.box.xmin > si.box.xmax) break;
      if (!si.box.overlaps(sj.box) || certainly_apart(si, sj)) continue;
      detail::segment_split_points(si.a, si.b, sj.a, sj.b, splits[order[oi]]);
      detail::segment_split_points(sj.a, sj.b, si.a, si.b, splits[order[oj]]);
    }
  }

  std::unordered_map<Point, int, Vec2Hash> vid;
  auto vertex_id = [&](const Point& p) {
    auto [it, inserted] = vid.emplace(p, static_cast<int>(vertices_.size()));
    if (inserted) vertices_.push_back(p);
    return it->second;
  };
  std::unordered_map<std::pair<int, int>, int, PairHash> eid;
  std::vector<std::pair<int, int>> edge_ends;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& sg = segs[i];
    Vec2 dir = sg.b - sg.a;
    std::vector<std::pair<Scalar, Point>> keyed;
    for (auto& p : splits[i]) keyed.emplace_back(dot(p - sg.a, dir), p);
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
                keyed.end());
    for (std::size_t k = 0; k + 1 < keyed.size(); ++k) {
      int u = vertex_id(keyed[k].second);
      int v = vertex_id(keyed[k + 1].second);
      int lo = std::min(u, v), hi = std::max(u, v);
      auto [it, inserted] = eid.emplace(std::make_pair(lo, hi), static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.push_back({});
        edge_ends.emplace_back(lo, hi);
      }
      // Interior is left of u->v; relative to lo->hi flip when u is hi.
      edges_[it->second].owners.push_back({sg.polygon, sg.cycle, u == lo ? 1 : -1});
    }
  }

  half_edges_.resize(edges_.size() * 2);
  std::vector<std::vector<int>> outgoing(vertices_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [lo, hi] = edge_ends[e];
    int h0 = static_cast<int>(2 * e), h1 = h0 + 1;
    half_edges_[h0] = {lo, h1, -1, -1, static_cast<int>(e)};
    half_edges_[h1] = {hi, h0, -1, -1, static_cast<int>(e)};
    outgoing[lo].push_back(h0);
    outgoing[hi].push_back(h1);
  }
  auto dest = [&](int h) { return half_edges_[half_edges_[h].twin].origin; };
  std::vector<int> position(half_edges_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    auto& out = outgoing[v];
    std::vector<Vec2> dirs;
    std::sort(out.begin(), out.end(), [&](int x, int y) {
      return angle_less(vertices_[dest(x)] - vertices_[v], vertices_[dest(y)] - vertices_[v]);
    });
    for (std::size_t i = 0; i < out.size(); ++i) position[out[i]] = static_cast<int>(i);
  }
  for (std::size_t h = 0; h < half_edges_.size(); ++h) {
    int t = half_edges_[h].twin;
    int v = half_edges_[t].origin;
    const auto& out = outgoing[v];
    int idx = position[t];
    half_edges_[h].next = out[(idx + static_cast<int>(out.size()) - 1) % static_cast<int>(out.size())];
  }

  // Components.
  UnionFind uf(vertices_.size());
  for (auto [lo, hi] : edge_ends) uf.unite(lo, hi);
  vertex_component_.assign(vertices_.size(), -1);
  std::unordered_map<int, int> comp_index;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    int root = uf.find(static_cast<int>(v));
    auto [it, inserted] = comp_index.emplace(root, component_count_);
    if (inserted) ++component_count_;
    vertex_component_[v] = it->second;
  }

  // Cycles.
  faces_.clear();
  faces_.push_back(Face{{}, 0, Scalar(0), false});
  std::vector<char> seen(half_edges_.size(), 0);
  struct HoleCycle {
    int half_edge;
    int component;
  };
  std::vector<HoleCycle> holes;
  struct PosCycle {
    int face;
    int component;
    std::vector<Point> pts;
  };
  std::vector<PosCycle> positive;
  for (std::size_t h = 0; h < half_edges_.size(); ++h) {
    if (seen[h]) continue;
    std::vector<Point> pts;
    int cur = static_cast<int>(h);
    do {
      seen[cur] = 1;
      pts.push_back(vertices_[half_edges_[cur].origin]);
      cur = half_edges_[cur].next;
    } while (cur != static_cast<int>(h));
    Scalar a = signed_area(pts);
    int comp = vertex_component_[half_edges_[h].origin];
    if (a.sign() > 0) {
      int f = static_cast<int>(faces_.size());
      faces_.push_back(Face{{static_cast<int>(h)}, 0, a, true});
      positive.push_back({f, comp, std::move(pts)});
    } else {
      holes.push_back({static_cast<int>(h), comp});
    }
  }
  // Attach each component's outer cycle to the smallest enclosing face.
  for (const auto& hc : holes) {
    Point probe = vertices_[half_edges_[hc.half_edge].origin];
    int best = 0;
    for (const auto& pc : positive) {
      if (pc.component == hc.component) continue;
      if (locate_in_cycle(pc.pts, probe) != Location::Inside) continue;
      if (best == 0 || compare(faces_[pc.face].area, faces_[best].area) < 0) best = pc.face;
    }
    faces_[best].cycles.push_back(hc.half_edge);
    if (best != 0) faces_[best].area += signed_area([&] {
        std::vector<Point> pts;
        for (int e : cycle_half_edges(hc.half_edge)) pts.push_back(vertices_[half_edges_[e].origin]);
        return pts;
      }());
  }
  for (std::size_t f = 0; f < faces_.size(); ++f)
    for (int rep : faces_[f].cycles)
      for (int e : cycle_half_edges(rep)) half_edges_[e].face = static_cast<int>(f);

  // Cover counts by propagation from the unbounded face.
  std::vector<char> known(faces_.size(), 0);
  known[0] = 1;
  std::deque<int> queue{0};
  std::vector<std::vector<int>> face_half_edges(faces_.size());
  for (std::size_t h = 0; h < half_edges_.size(); ++h) face_half_edges[half_edges_[h].face].push_back(static_cast<int>(h));
  auto delta = [&](int h) {
    int sum = 0;
    for (const auto& o : edges_[half_edges_[h].edge].owners) sum += o.side;
    return (h % 2 == 0) ? sum : -sum;
  };
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int h : face_half_edges[f]) {
      // h bounds f on its left; the twin bounds the face across.
      int t = half_edges_[h].twin;
      int g = half_edges_[t].face;
      int cg = faces_[f].cover + delta(t);
      if (!known[g]) {
        known[g] = 1;
        faces_[g].cover = cg;
        queue.push_back(g);
      } else if (faces_[g].cover != cg) {
        throw GeometryError("arrangement: inconsistent cover counts");
      }
    }
  }
}

std::vector<int> Subdivision::euler_per_component() const {
  std::vector<int> v(component_count_, 0), e(component_count_, 0), f(component_count_, 1);
  for (std::size_t i = 0; i < vertices_.size(); ++i) ++v[vertex_component_[i]];
  for (std::size_t i = 0; i < edges_.size(); ++i) ++e[vertex_component_[half_edges_[2 * i].origin]];
  for (std::size_t i = 1; i < faces_.size(); ++i)
    ++f[vertex_component_[half_edges_[faces_[i].cycles.front()].origin]];
  std::vector<int> out(component_count_);
  for (int c = 0; c < component_count_; ++c) out[c] = v[c] - e[c] + f[c];
  return out;
}

namespace {

bool is_intrinsic_hole(const Subdivision& s, const Subdivision::Face& face) {
  if (face.cycles.size() != 1) return false;
  int poly = -1;
  for (int h : s.cycle_half_edges(face.cycles.front())) {
    const auto& owners = s.edges()[s.half_edges()[h].edge].owners;
    bool found = false;
    for (const auto& o : owners) {
      if (o.cycle != 1) continue;
      if (poly == -1) poly = o.polygon;
      if (o.polygon == poly) found = true;
    }
    if (!found) return false;
  }
  return poly != -1;
}

}  // namespace

std::vector<ComplementComponent> complement_components(const Subdivision& s) {
  std::vector<ComplementComponent> out;
  const auto& faces = s.faces();
  const auto& hes = s.half_edges();
  for (std::size_t f = 1; f < faces.size(); ++f) {
    if (faces[f].cover != 0) continue;
    ComplementComponent c;
    c.kind = is_intrinsic_hole(s, faces[f]) ? ComponentKind::IntrinsicHole : ComponentKind::Cavity;
    c.faces = {static_cast<int>(f)};
    c.bounded = true;
    std::unordered_set<int> verts;
    for (int rep : faces[f].cycles)
      for (int h : s.cycle_half_edges(rep)) {
        verts.insert(hes[h].origin);
        for (const auto& o : s.edges()[hes[h].edge].owners)
          if (s.copy_of_polygon(o.polygon) == 0) c.central = true;
      }
    c.boundary_vertices.assign(verts.begin(), verts.end());
    std::sort(c.boundary_vertices.begin(), c.boundary_vertices.end());
    out.push_back(std::move(c));
  }

  const auto& outer = faces[0];
  auto all_vertices_of_outer = [&] {
    std::vector<int> vs;
    for (int rep : outer.cycles)
      for (int h : s.cycle_half_edges(rep)) vs.push_back(hes[h].origin);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  };
  if (!s.period() || outer.cycles.size() != 1) {
    ComplementComponent c;
    c.kind = ComponentKind::Unbounded;
    c.faces = {0};
    c.bounded = false;
    c.touches_both_window_ends = s.period().has_value();
    c.boundary_vertices = all_vertices_of_outer();
    c.central = true;
    out.insert(out.begin(), std::move(c));
    return out;
  }

  // Split the outer boundary of the window union into its upper and lower
  // chains, keeping only vertices away from the window ends.
  const Vec2& period = *s.period();
  std::vector<int> cyc = s.cycle_half_edges(outer.cycles.front());
  std::vector<int> vs;
  for (int h : cyc) vs.push_back(hes[h].origin);
  const auto& pts = s.vertices();
  Vec2 normal{-period.y, period.x};
  auto proj_less = [&](int a, int b) {
    int c = compare(dot(pts[a], period), dot(pts[b], period));
    if (c != 0) return c < 0;
    return compare(dot(pts[a], normal), dot(pts[b], normal)) < 0;
  };
  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (proj_less(vs[i], vs[imin])) imin = i;
    if (proj_less(vs[imax], vs[i])) imax = i;
  }
  // Central zone: the projection range of copies -1..1.
  Scalar zlo, zhi;
  bool zinit = false;
  for (std::size_t f = 0; f < hes.size(); f += 2) {
    for (const auto& o : s.edges()[hes[f].edge].owners) {
      int k = s.copy_of_polygon(o.polygon);
      if (k < -1 || k > 1) continue;
      for (int v : {hes[f].origin, hes[f + 1].origin}) {
        Scalar t = dot(pts[v], period);
        if (!zinit || compare(t, zlo) < 0) zlo = t;
        if (!zinit || compare(t, zhi) > 0) zhi = t;
        zinit = true;
      }
    }
  }
  auto in_zone = [&](int v) {
    Scalar t = dot(pts[v], period);
    return compare(t, zlo) >= 0 && compare(t, zhi) <= 0;
  };
  ComplementComponent upper, lower;
  upper.kind = ComponentKind::Upper;
  lower.kind = ComponentKind::Lower;
  for (auto* c : {&upper, &lower}) {
    c->faces = {0};
    c->bounded = false;
    c->touches_both_window_ends = true;
    c->central = true;
  }
  std::size_t n = vs.size();
  for (std::size_t i = imin;; i = (i + 1) % n) {
    if (in_zone(vs[i])) upper.boundary_vertices.push_back(vs[i]);
    if (i == imax) break;
  }
  for (std::size_t i = imax;; i = (i + 1) % n) {
    if (in_zone(vs[i])) lower.boundary_vertices.push_back(vs[i]);
    if (i == imin) break;
  }
  for (auto* c : {&upper, &lower}) {
    std::sort(c->boundary_vertices.begin(), c->boundary_vertices.end());
    c->boundary_vertices.erase(std::unique(c->boundary_vertices.begin(), c->boundary_vertices.end()),
                               c->boundary_vertices.end());
  }
  out.insert(out.begin(), std::move(lower));
  out.insert(out.begin(), std::move(upper));
  return out;
}

bool min_separation_positive(const Subdivision&, const ComplementComponent& a, const ComplementComponent& b) {
  std::vector<int> common;
  std::set_intersection(a.boundary_vertices.begin(), a.boundary_vertices.end(), b.boundary_vertices.begin(),
                        b.boundary_vertices.end(), std::back_inserter(common));
  return common.empty();
}

}  // namespace wallkit

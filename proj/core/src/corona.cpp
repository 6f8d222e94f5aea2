#include "wallkit/corona.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

namespace wallkit {

int thickness_upper_bound(int h) { return 2 * h + 2; }

namespace {

Region filled(const PlacedUnit& u) { return Region(transformed(u.shape->region.outer, u.pose)); }

bool closed_sets_meet(const Region& a, const Region& b) {
  auto touch = [](const Point& p, const Point& q, const Point& r, const Point& s) {
    int o1 = orient(p, q, r), o2 = orient(p, q, s), o3 = orient(r, s, p), o4 = orient(r, s, q);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return (o1 == 0 && on_segment(r, p, q)) || (o2 == 0 && on_segment(s, p, q)) || (o3 == 0 && on_segment(p, r, s)) ||
           (o4 == 0 && on_segment(q, r, s));
  };
  const auto& pa = a.outer.vertices;
  const auto& pb = b.outer.vertices;
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j)
      if (touch(pa[i], pa[(i + 1) % pa.size()], pb[j], pb[(j + 1) % pb.size()])) return true;
  return locate(a, pb[0]) != Location::Outside || locate(b, pa[0]) != Location::Outside;
}

std::vector<int> face_vertices(const Subdivision& s, const Subdivision::Face& f) {
  std::vector<int> out;
  for (int rep : f.cycles)
    for (int h : s.cycle_half_edges(rep)) out.push_back(s.half_edges()[h].origin);
  return out;
}

std::vector<std::vector<Point>> face_cycles(const Subdivision& s, const Subdivision::Face& f) {
  std::vector<std::vector<Point>> out;
  for (int rep : f.cycles) {
    std::vector<Point> cyc;
    for (int h : s.cycle_half_edges(rep)) cyc.push_back(s.vertices()[s.half_edges()[h].origin]);
    out.push_back(std::move(cyc));
  }
  return out;
}

}  // namespace

std::string check_corona(const CoronaWitness& w) {
  std::vector<PlacedUnit> all{w.center};
  for (const auto& l : w.layers) all.insert(all.end(), l.begin(), l.end());
  std::vector<Region> regions;
  std::vector<BBox> boxes;
  for (const auto& u : all) {
    if (!u.shape) return "unit without shape";
    regions.push_back(u.region());
    boxes.push_back(u.box());
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (boxes[i].overlaps(boxes[j]) && interiors_intersect(regions[i], regions[j]))
        return "units " + std::to_string(i) + " and " + std::to_string(j) + " overlap";

  std::vector<Region> blob{filled(w.center)};
  for (std::size_t k = 0; k < w.layers.size(); ++k) {
    if (w.layers[k].empty()) return "layer " + std::to_string(k + 1) + " is empty";
    std::vector<Region> uni = blob;
    for (const auto& u : w.layers[k]) uni.push_back(filled(u));
    Subdivision s = Subdivision::build(uni);
    const auto& faces = s.faces();
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].cover != 0) continue;
      if (faces[f].bounded) return "layer " + std::to_string(k + 1) + " encloses a cavity";
      for (int v : face_vertices(s, faces[f])) {
        const Point& p = s.vertices()[v];
        for (const auto& b : blob)
          if (locate(b, p) == Location::Boundary)
            return "layer " + std::to_string(k + 1) + " leaves a boundary point of the blob uncovered";
      }
    }
    blob = std::move(uni);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Corona search.
//
// Every point where a blob unit's boundary is not fully surrounded must end
// up fully surrounded by the units around it. Coverage at a point is tracked
// as the angular sectors of the units meeting it; an uncovered sector starts
// where some unit's sector ends, along that unit's edge, so whatever fills it
// shares that edge and is one of that unit's contacts.

namespace {

struct Sector {
  Vec2 from, to;  // counter-clockwise from `from` to `to`
  int unit;
};

struct Gap {
  Point p;
  Vec2 r;
  int owner;
};

struct ContactEdge {
  Point a, b;
  double angle;
};

double angle_of(const Vec2& v) { return std::atan2(v.y.to_double(), v.x.to_double()); }

bool point_less(const Point& a, const Point& b) { return lex_less(a, b); }

struct PoseLess {
  bool operator()(const Isometry& a, const Isometry& b) const { return canonical_less(a, b); }
};

class CoronaSearch {
 public:
  CoronaSearch(const ContactTable& table, int n, std::uint64_t max_nodes, const std::atomic<bool>* stop)
      : table_(table), shape_(table.shape()), n_(n), max_nodes_(max_nodes), stop_(stop) {
    base_ = shape_.region.outer.vertices;
    // Counter-clockwise edges of every contact, in the frame of its partner.
    for (const auto& c : table_.contacts()) {
      std::vector<Point> x;
      for (const auto& v : base_) x.push_back(c.apply(v));
      if (c.reflect) std::reverse(x.begin(), x.end());
      std::vector<ContactEdge> es;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const Point& a = x[i];
        const Point& b = x[(i + 1) % x.size()];
        es.push_back({a, b, angle_of(b - a)});
      }
      edges_.push_back(std::move(es));
    }
    place(Isometry::identity(), 0);
  }

  /// Candidates for the first gap chosen at the root, for splitting work.
  std::vector<Isometry> root_candidates() {
    auto gaps = find_gaps(1);
    auto [gi, cands] = choose(gaps);
    (void)gi;
    return cands;
  }

  /// Searches below the root after placing `first` (or from the root when
  /// `first` is empty).
  bool run(const std::optional<Isometry>& first) {
    if (first) {
      place(*first, 1);
      bool ok = dfs(1);
      if (!ok) unplace();
      return ok;
    }
    return dfs(1);
  }

  const SearchStats& stats() const { return stats_; }
  bool aborted() const { return aborted_; }

  CoronaWitness witness() const {
    CoronaWitness w;
    w.center = {&shape_, units_[0].pose};
    w.layers.resize(n_);
    for (std::size_t i = 1; i < units_.size(); ++i) w.layers[units_[i].layer - 1].push_back({&shape_, units_[i].pose});
    return w;
  }

 private:
  struct Unit {
    Isometry pose;
    std::vector<Point> pts;
    BBox box;
    int layer;
  };

  bool stopped() {
    if (stop_ && stop_->load()) {
      aborted_ = true;
      return true;
    }
    if (max_nodes_ && stats_.nodes >= max_nodes_) {
      aborted_ = true;
      return true;
    }
    return false;
  }

  void add_sector(const Point& p, Sector s) {
    points_[p].push_back(std::move(s));
    undo_.back().push_back(p);
  }

  void place(const Isometry& g, int layer) {
    Unit u;
    u.pose = g;
    for (const auto& v : base_) u.pts.push_back(g.apply(v));
    if (g.reflect) std::reverse(u.pts.begin(), u.pts.end());
    u.box = bbox_of(u.pts);
    u.layer = layer;
    const int id = static_cast<int>(units_.size());
    undo_.emplace_back();
    const std::size_t m = u.pts.size();
    for (std::size_t i = 0; i < m; ++i)
      add_sector(u.pts[i], {u.pts[(i + 1) % m] - u.pts[i], u.pts[(i + m - 1) % m] - u.pts[i], id});
    for (int j = 0; j < id; ++j) {
      const Unit& w = units_[j];
      if (!w.box.overlaps(u.box)) continue;
      edge_points(u, id, w);
      edge_points(w, j, u);
    }
    units_.push_back(std::move(u));
  }

  // Vertices of `other` in the relative interior of an edge of `u` get u's
  // half-plane sector.
  void edge_points(const Unit& u, int uid, const Unit& other) {
    const std::size_t m = u.pts.size();
    for (const auto& q : other.pts)
      for (std::size_t i = 0; i < m; ++i) {
        const Point& a = u.pts[i];
        const Point& b = u.pts[(i + 1) % m];
        if (q == a || q == b || orient(a, b, q) != 0 || !on_segment(q, a, b)) continue;
        add_sector(q, {b - a, a - b, uid});
        break;
      }
  }

  void unplace() {
    for (auto it = undo_.back().rbegin(); it != undo_.back().rend(); ++it) {
      auto e = points_.find(*it);
      e->second.pop_back();
      if (e->second.empty()) points_.erase(e);
    }
    undo_.pop_back();
    units_.pop_back();
  }

  std::vector<Gap> find_gaps(int layer) {
    std::vector<Gap> gaps;
    std::vector<const std::pair<const Point, std::vector<Sector>>*> crit;
    for (const auto& e : points_) {
      bool relevant = forced_.count(e.first) > 0;
      if (!relevant)
        for (const auto& s : e.second)
          if (units_[s.unit].layer < layer) {
            relevant = true;
            break;
          }
      if (relevant) crit.push_back(&e);
    }
    std::sort(crit.begin(), crit.end(), [](auto* a, auto* b) { return point_less(a->first, b->first); });
    for (auto* e : crit) {
      const auto& secs = e->second;
      for (const auto& s : secs) {
        bool matched = false;
        for (const auto& t : secs)
          if (same_direction(t.from, s.to)) {
            matched = true;
            break;
          }
        if (!matched) gaps.push_back({e->first, s.to, s.unit});
      }
    }
    return gaps;
  }

  // Copies that fill the wedge just counter-clockwise of the gap ray: one of
  // their edges runs along the ray from the gap point. They are taken among
  // the contacts of every placed copy close enough to reach the gap point.
  std::vector<Isometry> candidates(const Gap& gap) {
    const double px = gap.p.x.to_double(), py = gap.p.y.to_double();
    const double reach = 3 * table_.radius() + 1e-6;  // anchor to contact, contact to p
    std::vector<int> anchors;
    for (std::size_t id = 0; id < units_.size(); ++id) {
      auto [cx, cy] = table_.centre(units_[id].pose);
      if (std::hypot(cx - px, cy - py) <= reach) anchors.push_back(static_cast<int>(id));
    }

    std::vector<Isometry> out;
    std::set<Isometry, PoseLess> seen;
    const auto& contacts = table_.contacts();
    for (int id : anchors) {
      const Unit& w = units_[id];
      const Isometry winv = invert(w.pose);
      const Point pl = winv.apply(gap.p);
      // A reflecting partner reverses orientation: the world edge along the
      // ray is a local edge traversed backwards.
      const Vec2 rl = w.pose.reflect ? -winv.linear(gap.r) : winv.linear(gap.r);
      const double ra = angle_of(rl);
      for (std::size_t ci = 0; ci < contacts.size(); ++ci) {
        bool hit = false;
        for (const auto& e : edges_[ci]) {
          double d = std::fabs(e.angle - ra);
          if (std::min(d, 2 * M_PI - d) > 1e-6) continue;
          if (!same_direction(e.b - e.a, rl)) continue;
          if (orient(e.a, e.b, pl) != 0) continue;
          const Point& start = w.pose.reflect ? e.b : e.a;
          const Point& end = w.pose.reflect ? e.a : e.b;
          if (dot_sign(pl - start, end - start) < 0 || dot_sign(pl - end, start - end) <= 0) continue;
          hit = true;
          break;
        }
        if (!hit) continue;
        Isometry x = compose(w.pose, contacts[ci]);
        if (!seen.insert(canonical_pose(x, table_.symmetries())).second) continue;
        bool clash = false;
        for (const auto& u : units_)
          if (table_.relation(u.pose, x).conflict) {
            clash = true;
            break;
          }
        if (!clash) out.push_back(x);
      }
    }
    return out;
  }

  // Most constrained gap; one without candidates ends the branch.
  std::pair<int, std::vector<Isometry>> choose(const std::vector<Gap>& gaps) {
    int best = -1;
    std::vector<Isometry> best_c;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      auto c = candidates(gaps[i]);
      if (best < 0 || c.size() < best_c.size()) {
        best = static_cast<int>(i);
        best_c = std::move(c);
        if (best_c.size() <= 1) break;
      }
    }
    return {best, std::move(best_c)};
  }

  struct Cavities {
    bool any = false;
    bool fillable = true;
    std::vector<Point> boundary;
  };

  Cavities cavities() const {
    std::vector<Region> regions;
    for (const auto& u : units_) regions.push_back(Region(Polygon{u.pts}));
    Subdivision s = Subdivision::build(regions);
    Cavities c;
    for (const auto& f : s.faces()) {
      if (!f.bounded || f.cover != 0) continue;
      c.any = true;
      if (compare(f.area, shape_.area) < 0) c.fillable = false;
      for (int v : face_vertices(s, f)) c.boundary.push_back(s.vertices()[v]);
    }
    return c;
  }

  bool dfs(int layer) {
    if (stopped()) return false;
    ++stats_.nodes;
    auto gaps = find_gaps(layer);
    if (gaps.empty()) {
      ++stats_.leaves;
      Cavities cav = cavities();
      if (cav.any) {
        if (!cav.fillable) return false;
        auto saved = forced_;
        bool grew = false;
        for (const auto& p : cav.boundary) grew |= forced_.insert(p).second;
        bool ok = grew && dfs(layer);
        forced_ = std::move(saved);
        return ok;
      }
      if (layer == n_) return true;
      auto saved = std::move(forced_);
      forced_.clear();
      bool ok = dfs(layer + 1);
      forced_ = std::move(saved);
      return ok;
    }
    auto [gi, cands] = choose(gaps);
    (void)gi;
    stats_.max_branching = std::max<std::uint64_t>(stats_.max_branching, cands.size());
    stats_.total_branching += cands.size();
    if (cands.empty()) ++stats_.leaves;
    for (const auto& x : cands) {
      place(x, layer);
      if (dfs(layer)) return true;
      unplace();
      if (aborted_) return false;
    }
    return false;
  }

  struct PointCmp {
    bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
  };

  const ContactTable& table_;
  const RealizedShape& shape_;
  int n_;
  std::uint64_t max_nodes_;
  const std::atomic<bool>* stop_;
  std::vector<Point> base_;
  std::vector<std::vector<ContactEdge>> edges_;

  std::vector<Unit> units_;
  std::unordered_map<Point, std::vector<Sector>, Vec2Hash> points_;
  std::vector<std::vector<Point>> undo_;
  std::set<Point, PointCmp> forced_;
  SearchStats stats_;
  bool aborted_ = false;
};

}  // namespace

SurroundResult surround(const ContactTable& table, int n, const CoronaOptions& opts) {
  SurroundResult res;
  res.layers_requested = n;
  if (n < 1) {
    res.witness = CoronaWitness{{&table.shape(), Isometry::identity()}, {}};
    return res;
  }
  CoronaSearch root(table, n, opts.max_nodes, nullptr);
  auto firsts = root.root_candidates();
  res.stats.nodes = 1;
  res.stats.max_branching = firsts.size();
  res.stats.total_branching = firsts.size();
  if (firsts.empty()) ++res.stats.leaves;

  // Each root candidate is an independent subtree; the lowest-index witness
  // is reported regardless of the worker count.
  const std::size_t m = firsts.size();
  std::vector<std::optional<CoronaWitness>> found(m);
  std::vector<SearchStats> stats(m);
  std::vector<char> aborted(m, 0);
  std::atomic<std::size_t> next{0}, best{m};
  std::atomic<std::uint64_t> budget_used{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= m || i > best.load()) return;
      std::uint64_t remaining = 0;
      if (opts.max_nodes) {
        std::uint64_t used = budget_used.load();
        if (used >= opts.max_nodes) {
          aborted[i] = 1;
          continue;
        }
        remaining = opts.max_nodes - used;
      }
      CoronaSearch cs(table, n, remaining, nullptr);
      bool ok = cs.run(firsts[i]);
      stats[i] = cs.stats();
      budget_used += cs.stats().nodes;
      aborted[i] = cs.aborted();
      if (ok) {
        found[i] = cs.witness();
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const int workers = std::max(1, std::min<int>(opts.jobs, static_cast<int>(m)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (best.load() < m) {
    // Branches before the winner ran to completion whatever the worker count.
    for (std::size_t i = 0; i <= best.load(); ++i) res.stats.merge(stats[i]);
    res.witness = std::move(found[best.load()]);
    std::string why = check_corona(*res.witness);
    if (!why.empty()) throw std::logic_error("corona search produced an invalid witness: " + why);
    return res;
  }
  for (std::size_t i = 0; i < m; ++i) {
    res.stats.merge(stats[i]);
    if (aborted[i]) res.aborted = true;
  }
  res.stats.complete = !res.aborted;
  return res;
}

// ---------------------------------------------------------------------------

CoronaWitness extract_coronas_from_wall(const ThicknessCertificate& tc, int unit) {
  auto chk = check_thickness(tc);
  if (!chk.ok) throw WallError("invalid thickness certificate: " + chk.reason);
  const int t = tc.thickness();
  const int n = (t - 1) / 2;
  if (unit < 0 || unit >= static_cast<int>(tc.config.units.size())) throw WallError("no such unit");
  const int cls = tc.classes[unit];
  if (cls < n + 1 || cls > t - n) throw WallError("unit is not in a middle class");

  const auto& c = tc.config;
  const PlacedUnit& centre = c.units[unit];
  double diam = 0;
  for (const auto& u : c.units) diam = std::max(diam, std::sqrt(u.shape->diameter_squared.to_double()));
  double plen = std::hypot(c.period.x.to_double(), c.period.y.to_double());
  double spread = 0;
  for (const auto& u : c.units) {
    BBox a = u.box(), b = centre.box();
    spread = std::max(spread, std::hypot((a.xmin + a.xmax - b.xmin - b.xmax) / 2, (a.ymin + a.ymax - b.ymin - b.ymax) / 2));
  }
  const int reach = static_cast<int>(std::ceil(((2 * n + 2) * diam + spread) / plen)) + 2;

  std::vector<PlacedUnit> pool;
  std::vector<Region> pool_regions;
  std::vector<BBox> pool_boxes;
  int centre_index = -1;
  for (int k = -reach; k <= reach; ++k)
    for (std::size_t i = 0; i < c.units.size(); ++i) {
      PlacedUnit u = c.units[i];
      u.pose = compose(Isometry::translation(Scalar(k) * c.period), u.pose);
      if (k == 0 && static_cast<int>(i) == unit) centre_index = static_cast<int>(pool.size());
      pool_regions.push_back(filled(u));
      pool_boxes.push_back(u.box());
      pool.push_back(u);
    }

  CoronaWitness w;
  w.center = pool[centre_index];
  std::vector<char> used(pool.size(), 0);
  used[centre_index] = 1;
  std::vector<int> blob{centre_index};
  for (int layer = 1; layer <= n; ++layer) {
    std::vector<int> added;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      for (int b : blob)
        if (pool_boxes[i].overlaps(pool_boxes[b]) && closed_sets_meet(pool_regions[i], pool_regions[b])) {
          added.push_back(static_cast<int>(i));
          break;
        }
    }
    for (int i : added) used[i] = 1;
    // Fill cavities left between the new units with the wall units inside them.
    while (true) {
      std::vector<Region> uni;
      for (int b : blob) uni.push_back(pool_regions[b]);
      for (int a : added) uni.push_back(pool_regions[a]);
      Subdivision s = Subdivision::build(uni);
      bool any = false, progress = false;
      for (const auto& f : s.faces()) {
        if (!f.bounded || f.cover != 0) continue;
        any = true;
        auto cyc = face_cycles(s, f);
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (used[i]) continue;
          Point probe = pool[i].pose.apply(pool[i].shape->interior);
          if (locate(cyc, probe) == Location::Inside) {
            used[i] = 1;
            added.push_back(static_cast<int>(i));
            progress = true;
          }
        }
      }
      if (!any) break;
      if (!progress) throw LemmaViolation("layer " + std::to_string(layer) + " leaves a cavity no wall unit fills");
    }
    std::vector<PlacedUnit> lay;
    for (int a : added) lay.push_back(pool[a]);
    w.layers.push_back(std::move(lay));
    blob.insert(blob.end(), added.begin(), added.end());
  }
  std::string why = check_corona(w);
  if (!why.empty()) throw LemmaViolation("extracted coronas fail verification: " + why);
  return w;
}

// ---------------------------------------------------------------------------

ThicknessInterval thickness_number(const ContactTable& table, const ThicknessBounds& bounds, int jobs) {
  ThicknessInterval out;
  auto& ev = out.evidence;

  for (int n = 1; n <= bounds.corona_cap; ++n) {
    SurroundResult r = surround(table, n, {jobs, bounds.corona_max_nodes});
    if (r.witness) {
      ev.heesch_lower = n;
      ev.corona = std::move(r.witness);
      continue;
    }
    if (r.exhausted()) {
      out.hi = thickness_upper_bound(ev.heesch_lower);
      ev.corona_exhaustion = std::move(r);
    } else {
      ev.notes.push_back("corona search for " + std::to_string(n) + " layers aborted at the node limit");
    }
    break;
  }

  const int tmax = out.hi ? std::min(*out.hi, bounds.max_thickness) : bounds.max_thickness;
  for (int t = 1; t <= tmax; ++t) {
    WallSearchResult r = find_wall(table, t, bounds.wall, jobs);
    if (!r.certificate) {
      ev.next_failure = std::move(r);
      break;
    }
    out.lo = t;
    ev.certificate = std::move(r.certificate);
  }
  out.lo_capped = !out.hi && out.lo == bounds.max_thickness;
  if (out.hi && out.lo > *out.hi)
    throw LemmaViolation("wall of thickness " + std::to_string(out.lo) + " contradicts corona bound " +
                         std::to_string(*out.hi));

  // A wall of odd thickness 2m+1 must yield m coronas.
  if (ev.certificate && out.lo >= 3) {
    const int odd = out.lo % 2 ? out.lo : out.lo - 1;
    const int m = (odd - 1) / 2;
    ThicknessCertificate sub = restrict_classes(*ev.certificate, 1, odd);
    int centre = -1;
    for (std::size_t i = 0; i < sub.classes.size(); ++i)
      if (sub.classes[i] == m + 1) {
        centre = static_cast<int>(i);
        break;
      }
    extract_coronas_from_wall(sub, centre);
    ev.notes.push_back("wall classes 1.." + std::to_string(odd) + " yield " + std::to_string(m) +
                       " verified coronas");
  }
  return out;
}

}  // namespace wallkit

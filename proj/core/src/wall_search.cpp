// Wall search by chain stacking.
//
// Class 1 is a chain of contacts starting at the identity copy and closing on
// a translate of it, which fixes the period P. Every further class starts at a
// contact of the previous class and must close on its own translate by P,
// avoid overlapping anything placed so far, and share no boundary with classes
// two or more below. The stack is finally re-verified as a whole.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "wallkit/wall.hpp"

namespace wallkit {

namespace {

struct KeyLess {
  bool operator()(const std::vector<Isometry>& a, const std::vector<Isometry>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), canonical_less);
  }
};
using KeySet = std::set<std::vector<Isometry>, KeyLess>;

Isometry translated(const Isometry& g, const Vec2& v) { return {g.rot, g.reflect, g.shift + v}; }

class WallSearch {
 public:
  WallSearch(const ContactTable& table, int t, const WallBounds& bounds)
      : table_(table), t_(t), bounds_(bounds), shape_(table.shape()) {
    diam_ = std::sqrt(shape_.diameter_squared.to_double());
    for (const auto& v : shape_.region.outer.vertices) {
      verts_.emplace_back(v.x.to_double(), v.y.to_double());
      mean_ = mean_ + v;
    }
    mean_ = Scalar::rational(1, static_cast<long long>(shape_.region.outer.size())) * mean_;
    auto [ox, oy] = table_.centre(Isometry::identity());
    for (const auto& c : table_.contacts()) {
      auto [x, y] = table_.centre(c);
      max_step_ = std::max(max_step_, std::hypot(x - ox, y - oy));
    }
  }

  struct Layer1 {
    std::vector<Isometry> poses;
    Vec2 period;
  };

  /// Largest first layer: it is the smallest class (WLOG) unless t == 1.
  int max_first() const { return t_ == 1 ? bounds_.max_units : (bounds_.max_units - t_ + 2) / 2; }

  /// Closed first layers with exactly `size` units, one per congruence class.
  std::vector<Layer1> first_layers(int size, SearchStats& stats) {
    std::vector<Layer1> out;
    KeySet seen;
    std::vector<Isometry> chain{Isometry::identity()};
    std::function<void()> dfs = [&] {
      ++stats.nodes;
      std::uint64_t branching = 0;
      for (const auto& c : table_.contacts()) {
        Isometry x = compose(chain.back(), c);
        if (auto q = translate_of_identity(x)) {
          if (static_cast<int>(chain.size()) != size || !canonical_sign(*q)) continue;
          ++branching;
          Layer1 cand{chain, *q};
          if (!closed_layer_ok(cand.poses, cand.period)) continue;
          if (!seen.insert(layer1_key(cand.poses, cand.period)).second) continue;
          out.push_back(std::move(cand));
          continue;
        }
        if (static_cast<int>(chain.size()) >= size) continue;
        bool bad = false;
        for (const auto& u : chain)
          if (table_.relation(u, x).conflict) {
            bad = true;
            break;
          }
        if (bad) continue;
        ++branching;
        chain.push_back(x);
        dfs();
        chain.pop_back();
      }
      record(stats, branching);
    };
    dfs();
    return out;
  }

  /// Completes a stack on top of a first layer; returns the certificate if
  /// one exists within the bounds.
  std::optional<ThicknessCertificate> complete(const Layer1& first, SearchStats& stats,
                                               const std::atomic<bool>* stop = nullptr) {
    period_ = first.period;
    pdot_ = dot(period_, period_);
    px_ = period_.x.to_double();
    py_ = period_.y.to_double();
    double len = std::hypot(px_, py_);
    nx_ = -py_ / len;
    ny_ = px_ / len;
    layers_.assign(1, first.poses);
    tmin_ = 1e300;
    tmax_ = -1e300;
    for (const auto& g : first.poses) extend_width(g, tmin_, tmax_);
    stop_ = stop;
    result_.reset();
    if (!wall_ok(layers_)) return std::nullopt;
    if (t_ == 1) {
      ThicknessCertificate tc;
      tc.config.period = period_;
      for (const auto& g : first.poses) tc.config.units.push_back({&shape_, g});
      tc.classes.assign(first.poses.size(), 1);
      return tc;
    }
    stack(2, stats);
    return result_;
  }

  int t() const { return t_; }

 private:
  static void record(SearchStats& s, std::uint64_t branching) {
    s.max_branching = std::max(s.max_branching, branching);
    s.total_branching += branching;
    if (branching == 0) ++s.leaves;
  }

  static bool canonical_sign(const Vec2& q) {
    int sx = q.x.sign();
    return sx > 0 || (sx == 0 && q.y.sign() > 0);
  }

  // Q with x(shape) == T_Q(shape), Q != 0.
  std::optional<Vec2> translate_of_identity(const Isometry& x) const {
    for (const auto& s : table_.symmetries()) {
      Isometry y = compose(x, invert(s));
      if (y.is_translation()) {
        if (y.shift.is_zero()) return std::nullopt;
        return y.shift;
      }
    }
    return std::nullopt;
  }

  bool same_region(const Isometry& a, const Isometry& b) const {
    const auto& syms = table_.symmetries();
    return canonical_pose(a, syms) == canonical_pose(b, syms);
  }

  void extend_width(const Isometry& g, double& lo, double& hi) const {
    double ang = g.rot * M_PI / 6.0, c = std::cos(ang), s = std::sin(ang);
    double sx = g.shift.x.to_double(), sy = g.shift.y.to_double();
    for (auto [x, y] : verts_) {
      if (g.reflect) y = -y;
      double wx = c * x - s * y + sx, wy = s * x + c * y + sy;
      double tv = wx * nx_ + wy * ny_;
      lo = std::min(lo, tv);
      hi = std::max(hi, tv);
    }
  }

  bool width_ok(double lo, double hi) const { return hi - lo <= bounds_.max_width * diam_ + 1e-9; }

  // Translates T_{kP} e that can come near x.
  template <typename F>
  bool any_translate(const Isometry& e, const Isometry& x, F&& pred) const {
    auto [ex, ey] = table_.centre(e);
    auto [xx, xy] = table_.centre(x);
    double plen2 = px_ * px_ + py_ * py_;
    double d = ((xx - ex) * px_ + (xy - ey) * py_) / plen2;
    double slack = 2 * table_.radius() / std::sqrt(plen2) + 1;
    for (long k = static_cast<long>(std::floor(d - slack)); k <= static_cast<long>(std::ceil(d + slack)); ++k) {
      Isometry ek = translated(e, Scalar(k) * period_);
      if (pred(table_.relation(ek, x))) return true;
    }
    return false;
  }

  bool clashes(const Isometry& x, const std::vector<Isometry>& units) const {
    for (const auto& e : units)
      if (any_translate(e, x, [](const Relation& r) { return r.conflict; })) return true;
    return false;
  }

  bool touches_positively(const Isometry& x, const std::vector<Isometry>& units) const {
    for (const auto& e : units)
      if (any_translate(e, x, [](const Relation& r) { return r.shares; })) return true;
    return false;
  }

  bool closed_layer_ok(const std::vector<Isometry>& poses, const Vec2& period) {
    period_ = period;
    pdot_ = dot(period_, period_);
    px_ = period_.x.to_double();
    py_ = period_.y.to_double();
    double len = std::hypot(px_, py_);
    nx_ = -py_ / len;
    ny_ = px_ / len;
    double lo = 1e300, hi = -1e300;
    for (const auto& g : poses) extend_width(g, lo, hi);
    if (!width_ok(lo, hi)) return false;
    const long kmax = static_cast<long>(std::ceil(2 * table_.radius() / std::hypot(px_, py_))) + 1;
    for (std::size_t i = 0; i < poses.size(); ++i) {
      for (long k = 1; k <= kmax; ++k)
        if (table_.relation(poses[i], translated(poses[i], Scalar(k) * period_)).conflict) return false;
      for (std::size_t j = i + 1; j < poses.size(); ++j)
        if (any_translate(poses[j], poses[i], [](const Relation& r) { return r.conflict; })) return false;
    }
    return true;
  }

  // Pose reduced modulo the period so its reference point projects into [0, 1).
  Isometry reduce(const Isometry& g) const {
    Isometry c = canonical_pose(g, table_.symmetries());
    Scalar tpar = dot(c.apply(mean_), period_) / pdot_;
    BigInt k = tpar.floor();
    return translated(c, Scalar(-k, 0, 1) * period_);
  }

  std::vector<Isometry> layer_key(const std::vector<Isometry>& poses) const {
    std::vector<Isometry> key;
    for (const auto& g : poses) key.push_back(reduce(g));
    std::sort(key.begin(), key.end(), canonical_less);
    return key;
  }

  // Key invariant under re-anchoring the layer at any of its units.
  std::vector<Isometry> layer1_key(const std::vector<Isometry>& poses, const Vec2& period) {
    std::optional<std::vector<Isometry>> best;
    const Vec2 saved = period_;
    for (const auto& anchor : poses)
      for (const auto& s : table_.symmetries()) {
        Isometry h = invert(compose(anchor, s));
        Vec2 p = h.linear(period);
        if (!canonical_sign(p)) p = -p;
        period_ = p;
        pdot_ = dot(p, p);
        std::vector<Isometry> moved;
        for (const auto& g : poses) moved.push_back(compose(h, g));
        auto key = layer_key(moved);
        key.insert(key.begin(), Isometry::translation(p));
        if (!best || KeyLess{}(key, *best)) best = std::move(key);
      }
    period_ = saved;
    pdot_ = dot(saved, saved);
    return *best;
  }

  // Chains are connected by construction and overlaps are excluded while
  // placing, so only the complement needs checking here.
  bool wall_ok(const std::vector<std::vector<Isometry>>& layers) {
    std::vector<Isometry> all;
    for (const auto& l : layers) all.insert(all.end(), l.begin(), l.end());
    auto key = layer_key(all);
    key.insert(key.begin(), Isometry::translation(period_));
    auto it = wall_cache_.find(key);
    if (it != wall_cache_.end()) return it->second;
    std::vector<Region> regions;
    for (const auto& g : all) regions.push_back(transformed(shape_.region, g));
    WallReport rep = complement_report(regions, period_);
    bool ok = rep.complement_count == 2 && rep.cavities == 0 && rep.separated;
    wall_cache_.emplace(std::move(key), ok);
    return ok;
  }

  int used() const {
    int n = 0;
    for (const auto& l : layers_) n += static_cast<int>(l.size());
    return n;
  }

  // All units of layers below `limit` (exclusive), as a flat list.
  std::vector<Isometry> units_below(int limit) const {
    std::vector<Isometry> out;
    for (int l = 0; l < limit && l < static_cast<int>(layers_.size()); ++l)
      out.insert(out.end(), layers_[l].begin(), layers_[l].end());
    return out;
  }

  void stack(int level, SearchStats& stats) {
    if (result_ || (stop_ && stop_->load())) return;
    const int s1 = static_cast<int>(layers_.front().size());
    const int budget = bounds_.max_units - used();
    // The last class uses up the budget exactly: totals are searched in
    // increasing order, so smaller ones have been ruled out already.
    const int max_size = level == t_ ? budget : budget - (t_ - level - 1) - s1;
    const int min_size = level == t_ ? std::max(s1, budget) : 1;
    if (max_size < min_size) return;

    const auto all = units_below(level - 1);
    const auto far = units_below(level - 2);
    KeySet starts_seen, layers_seen;
    ++stats.nodes;
    std::uint64_t branching = 0;
    for (const auto& w : layers_.back()) {
      for (const auto& c : table_.contacts()) {
        Isometry s = compose(w, c);
        if (!starts_seen.insert({reduce(s)}).second) continue;
        if (clashes(s, all) || touches_positively(s, far)) continue;
        double lo = tmin_, hi = tmax_;
        extend_width(s, lo, hi);
        if (!width_ok(lo, hi)) continue;
        ++branching;
        std::vector<Isometry> chain{s};
        chain_dfs(level, chain, lo, hi, min_size, max_size, all, far, layers_seen, stats);
        if (result_ || (stop_ && stop_->load())) {
          record(stats, branching);
          return;
        }
      }
    }
    record(stats, branching);
  }

  void chain_dfs(int level, std::vector<Isometry>& chain, double lo, double hi, int min_size, int max_size,
                 const std::vector<Isometry>& all, const std::vector<Isometry>& far, KeySet& layers_seen,
                 SearchStats& stats) {
    if (result_ || (stop_ && stop_->load())) return;
    ++stats.nodes;
    const Isometry target = translated(chain.front(), period_);
    auto [tx, ty] = table_.centre(target);
    std::uint64_t branching = 0;
    const int j = static_cast<int>(chain.size());
    for (const auto& c : table_.contacts()) {
      Isometry y = compose(chain.back(), c);
      if (same_region(y, target)) {
        if (j < min_size) continue;
        ++branching;
        close_layer(level, chain, lo, hi, layers_seen, stats);
        if (result_) break;
        continue;
      }
      if (j >= max_size) continue;
      auto [yx, yy] = table_.centre(y);
      if (std::hypot(tx - yx, ty - yy) > (max_size - j) * max_step_ + 1e-9) continue;
      if (clashes(y, all) || clashes(y, chain) || touches_positively(y, far)) continue;
      double lo2 = lo, hi2 = hi;
      extend_width(y, lo2, hi2);
      if (!width_ok(lo2, hi2)) continue;
      ++branching;
      chain.push_back(y);
      chain_dfs(level, chain, lo2, hi2, min_size, max_size, all, far, layers_seen, stats);
      chain.pop_back();
      if (result_ || (stop_ && stop_->load())) break;
    }
    record(stats, branching);
  }

  void close_layer(int level, const std::vector<Isometry>& chain, double lo, double hi, KeySet& layers_seen,
                   SearchStats& stats) {
    if (!layers_seen.insert(layer_key(chain)).second) return;
    layers_.push_back(chain);
    const double save_lo = tmin_, save_hi = tmax_;
    tmin_ = lo;
    tmax_ = hi;
    if (wall_ok({chain})) {
      if (level == t_) {
        if (wall_ok(layers_)) {
          ThicknessCertificate tc;
          tc.config.period = period_;
          for (std::size_t l = 0; l < layers_.size(); ++l)
            for (const auto& g : layers_[l]) {
              tc.config.units.push_back({&shape_, g});
              tc.classes.push_back(static_cast<int>(l) + 1);
            }
          if (verify_thickness(tc)) result_ = std::move(tc);
        }
      } else {
        stack(level + 1, stats);
      }
    }
    tmin_ = save_lo;
    tmax_ = save_hi;
    layers_.pop_back();
  }

  const ContactTable& table_;
  int t_;
  WallBounds bounds_;
  const RealizedShape& shape_;
  double diam_ = 0, max_step_ = 0;
  std::vector<std::pair<double, double>> verts_;
  Point mean_;

  Vec2 period_;
  Scalar pdot_;
  double px_ = 0, py_ = 0, nx_ = 0, ny_ = 1;
  double tmin_ = 0, tmax_ = 0;
  std::vector<std::vector<Isometry>> layers_;
  std::optional<ThicknessCertificate> result_;
  const std::atomic<bool>* stop_ = nullptr;
  std::map<std::vector<Isometry>, bool, KeyLess> wall_cache_;
};

}  // namespace

WallSearchResult find_wall(const ContactTable& table, int t, const WallBounds& bounds, int jobs) {
  WallSearchResult res;
  res.target = t;
  res.bounds = bounds;
  if (t < 1 || bounds.max_units < t) {
    res.stats.complete = true;
    return res;
  }
  // Walls are searched by exact total units per period, smallest first, and
  // within a total by first-layer size; within a size the lowest-index success
  // wins so the outcome does not depend on the worker count.
  WallSearch root(table, t, bounds);
  std::vector<std::vector<WallSearch::Layer1>> firsts(1);
  for (int total = t; total <= bounds.max_units; ++total) {
    const WallBounds exact{total, bounds.max_width};
    const WallSearch sized(table, t, exact);
    for (int size = 1; size <= sized.max_first(); ++size) {
      if (size >= static_cast<int>(firsts.size())) firsts.push_back(root.first_layers(size, res.stats));
      const auto& layers = firsts[size];
      if (t == 1 && size != total) continue;
      const std::size_t n = layers.size();
      std::vector<std::optional<ThicknessCertificate>> found(n);
      std::vector<SearchStats> stats(n);
      std::atomic<std::size_t> next{0};
      std::atomic<std::size_t> best{n};
      auto worker = [&] {
        WallSearch ws(table, t, exact);
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= n || i > best.load()) return;
          if (auto c = ws.complete(layers[i], stats[i])) {
            found[i] = std::move(c);
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
          }
        }
      };
      const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
      if (workers == 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
      }
      if (best.load() < n) {
        for (std::size_t i = 0; i <= best.load(); ++i) res.stats.merge(stats[i]);
        res.certificate = std::move(found[best.load()]);
        return res;
      }
      for (const auto& st : stats) res.stats.merge(st);
    }
  }
  res.stats.complete = true;
  return res;
}

}  // namespace wallkit

#include "wallkit/wall.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace wallkit {

int ThicknessCertificate::thickness() const {
  return classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end());
}

void SearchStats::merge(const SearchStats& o) {
  nodes += o.nodes;
  leaves += o.leaves;
  max_branching = std::max(max_branching, o.max_branching);
  total_branching += o.total_branching;
}

namespace {

double norm(const Vec2& v) { return std::hypot(v.x.to_double(), v.y.to_double()); }

double box_diagonal(const BBox& b) { return std::hypot(b.xmax - b.xmin, b.ymax - b.ymin); }

// Largest |k| for which unit i can reach unit j + k * period.
int reach(const StripConfig& c) {
  double d = 0;
  for (const auto& u : c.units) d = std::max(d, box_diagonal(u.box()));
  double p = norm(c.period);
  // Box centres can differ by up to the box extents as well.
  double span = 0;
  for (const auto& u : c.units)
    for (const auto& w : c.units) {
      BBox a = u.box(), b = w.box();
      span = std::max(span, std::hypot((a.xmin + a.xmax - b.xmin - b.xmax) / 2, (a.ymin + a.ymax - b.ymin - b.ymax) / 2));
    }
  return static_cast<int>(std::ceil((2 * d + span) / p)) + 1;
}

Vec2 times(const Vec2& v, int k) { return Scalar(k) * v; }

// Positive-length contact between unit i and translate k of unit j.
struct Adjacency {
  int i, j, k;
};

std::vector<Adjacency> adjacencies(const StripConfig& c, int r) {
  std::vector<Adjacency> out;
  const int n = static_cast<int>(c.units.size());
  std::vector<Region> regions;
  std::vector<BBox> boxes;
  for (const auto& u : c.units) {
    regions.push_back(u.region());
    boxes.push_back(u.box());
  }
  double px = c.period.x.to_double(), py = c.period.y.to_double();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = -r; k <= r; ++k) {
        if (i == j && k == 0) continue;
        if (!boxes[i].overlaps(boxes[j].translated(k * px, k * py))) continue;
        Region rj = transformed(regions[j], Isometry::translation(times(c.period, k)));
        if (!shared_boundary_unchecked(regions[i], rj).empty()) out.push_back({i, j, k});
      }
  return out;
}

// The lift of the quotient graph is connected iff the quotient is connected
// and its cycle translations generate the integers.
bool lifted_connected(int n, const std::vector<Adjacency>& adj) {
  if (n == 0) return false;
  std::vector<std::vector<std::pair<int, int>>> g(n);
  for (const auto& a : adj) {
    g[a.i].emplace_back(a.j, a.k);
    g[a.j].emplace_back(a.i, -a.k);
  }
  std::vector<std::optional<long>> pot(n);
  pot[0] = 0;
  std::vector<int> stack{0};
  long gcd_all = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, k] : g[v]) {
      long p = *pot[v] + k;
      if (!pot[w]) {
        pot[w] = p;
        stack.push_back(w);
      } else {
        gcd_all = std::gcd(gcd_all, std::labs(p - *pot[w]));
      }
    }
  }
  for (const auto& p : pot)
    if (!p) return false;
  return gcd_all == 1;
}

}  // namespace

void check_strip(const StripConfig& c) {
  if (c.period.is_zero()) throw WallError("period is zero");
  if (c.units.empty()) throw WallError("strip has no units");
  for (const auto& u : c.units)
    if (!u.shape) throw WallError("unit without shape");
  const int r = reach(c);
  const int n = static_cast<int>(c.units.size());
  std::vector<Region> regions;
  std::vector<BBox> boxes;
  for (const auto& u : c.units) {
    regions.push_back(u.region());
    boxes.push_back(u.box());
  }
  double px = c.period.x.to_double(), py = c.period.y.to_double();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = (i == j ? 1 : -r); k <= r; ++k) {
        if (!boxes[i].overlaps(boxes[j].translated(k * px, k * py))) continue;
        Region rj = transformed(regions[j], Isometry::translation(times(c.period, k)));
        if (interiors_intersect(regions[i], rj)) {
          std::ostringstream os;
          os << "units " << i << " and " << j;
          if (k != 0) os << " (translate " << k << ")";
          os << " overlap";
          throw WallError(os.str());
        }
      }
}

WallReport complement_report(const std::vector<Region>& regions, const Vec2& period) {
  WallReport rep;
  Subdivision s = Subdivision::build_periodic(regions, period);
  auto comps = complement_components(s);
  const ComplementComponent* upper = nullptr;
  const ComplementComponent* lower = nullptr;
  for (const auto& comp : comps) {
    switch (comp.kind) {
      case ComponentKind::Upper: upper = &comp; ++rep.complement_count; break;
      case ComponentKind::Lower: lower = &comp; ++rep.complement_count; break;
      case ComponentKind::Unbounded: ++rep.complement_count; break;
      case ComponentKind::Cavity:
        if (comp.central) {
          ++rep.cavities;
          ++rep.complement_count;
        }
        break;
      case ComponentKind::IntrinsicHole: break;
    }
  }
  rep.separated = upper && lower && min_separation_positive(s, *upper, *lower);
  return rep;
}

WallCertificate verify_wall(const StripConfig& c) {
  check_strip(c);
  std::vector<Region> regions;
  for (const auto& u : c.units) regions.push_back(u.region());
  WallCertificate cert{c, complement_report(regions, c.period)};
  cert.report.connected = lifted_connected(static_cast<int>(c.units.size()), adjacencies(c, reach(c)));
  return cert;
}

ThicknessCertificate restrict_classes(const ThicknessCertificate& tc, int lo, int hi) {
  ThicknessCertificate out;
  out.config.period = tc.config.period;
  for (std::size_t i = 0; i < tc.classes.size(); ++i)
    if (tc.classes[i] >= lo && tc.classes[i] <= hi) {
      out.config.units.push_back(tc.config.units[i]);
      out.classes.push_back(tc.classes[i] - lo + 1);
    }
  return out;
}

namespace {

StripConfig subset(const StripConfig& c, const std::vector<int>& idx) {
  StripConfig s;
  s.period = c.period;
  for (int i : idx) s.units.push_back(c.units[i]);
  return s;
}

}  // namespace

ThicknessCheck check_thickness(const ThicknessCertificate& tc) {
  auto fail = [](std::string why) { return ThicknessCheck{false, std::move(why)}; };
  const auto& c = tc.config;
  if (tc.classes.size() != c.units.size()) return fail("class label count differs from unit count");
  const int t = tc.thickness();
  if (t < 1) return fail("no classes");
  std::vector<std::vector<int>> members(t + 1);
  for (std::size_t i = 0; i < tc.classes.size(); ++i) {
    int l = tc.classes[i];
    if (l < 1) return fail("class labels must be positive");
    members[l].push_back(static_cast<int>(i));
  }
  for (int l = 1; l <= t; ++l)
    if (members[l].empty()) return fail("class " + std::to_string(l) + " is empty");

  WallCertificate whole;
  try {
    whole = verify_wall(c);
  } catch (const WallError& e) {
    return fail(e.what());
  }
  if (!whole.report.valid()) return fail("union is not a wall");
  for (int l = 1; l <= t; ++l)
    if (!verify_wall(subset(c, members[l])).report.valid())
      return fail("class " + std::to_string(l) + " is not a wall");

  std::vector<std::vector<bool>> share(t + 1, std::vector<bool>(t + 1, false));
  for (const auto& a : adjacencies(c, reach(c))) {
    int la = tc.classes[a.i], lb = tc.classes[a.j];
    share[la][lb] = share[lb][la] = true;
  }
  for (int a = 1; a <= t; ++a)
    for (int b = a + 1; b <= t; ++b) {
      if (b == a + 1 && !share[a][b])
        return fail("classes " + std::to_string(a) + " and " + std::to_string(b) + " share no boundary");
      if (b > a + 1 && share[a][b])
        return fail("classes " + std::to_string(a) + " and " + std::to_string(b) + " share boundary");
    }
  return {true, {}};
}

int max_decomposition(const WallCertificate& w, int cap, std::vector<int>* best) {
  if (!w.report.valid()) return 0;
  const auto& c = w.config;
  const int n = static_cast<int>(c.units.size());
  std::vector<std::vector<bool>> share(n, std::vector<bool>(n, false));
  for (const auto& a : adjacencies(c, reach(c))) share[a.i][a.j] = share[a.j][a.i] = true;

  std::map<unsigned, bool> wall_cache;
  auto is_wall = [&](unsigned mask) {
    auto it = wall_cache.find(mask);
    if (it != wall_cache.end()) return it->second;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    bool ok = verify_wall(subset(c, idx)).report.valid();
    wall_cache.emplace(mask, ok);
    return ok;
  };

  int best_t = 1;
  if (best) best->assign(n, 1);
  // Restricted growth strings enumerate set partitions.
  std::vector<int> a(n, 0), mx(n, 0);
  auto evaluate = [&](int t) {
    if (t <= best_t || t > cap) return;
    std::vector<unsigned> masks(t, 0);
    for (int i = 0; i < n; ++i) masks[a[i]] |= 1u << i;
    std::vector<std::vector<bool>> adj(t, std::vector<bool>(t, false));
    std::vector<int> deg(t, 0);
    int edges = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (share[i][j] && a[i] != a[j] && !adj[a[i]][a[j]]) {
          adj[a[i]][a[j]] = adj[a[j]][a[i]] = true;
          ++deg[a[i]];
          ++deg[a[j]];
          ++edges;
        }
    if (edges != t - 1) return;
    int start = -1;
    for (int b = 0; b < t; ++b) {
      if (deg[b] > 2) return;
      if (deg[b] <= 1 && start < 0) start = b;
    }
    // Walk the path; a cycle plus isolated block would not cover everything.
    std::vector<int> order{start};
    std::vector<bool> seen(t, false);
    seen[start] = true;
    while (static_cast<int>(order.size()) < t) {
      int cur = order.back(), nxt = -1;
      for (int b = 0; b < t; ++b)
        if (adj[cur][b] && !seen[b]) nxt = b;
      if (nxt < 0) return;
      seen[nxt] = true;
      order.push_back(nxt);
    }
    for (int b = 0; b < t; ++b)
      if (!is_wall(masks[b])) return;
    best_t = t;
    if (best) {
      std::vector<int> rank(t);
      for (int p = 0; p < t; ++p) rank[order[p]] = p + 1;
      for (int i = 0; i < n; ++i) (*best)[i] = rank[a[i]];
    }
  };
  while (true) {
    int t = (n == 0 ? 0 : *std::max_element(a.begin(), a.end()) + 1);
    evaluate(t);
    int i = n - 1;
    while (i > 0 && a[i] == mx[i] + 1) --i;
    if (i <= 0) break;
    ++a[i];
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      mx[j] = std::max(mx[j - 1], a[j - 1]);
    }
  }
  return best_t;
}

}  // namespace wallkit

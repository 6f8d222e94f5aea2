#include "wallkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wallkit {

namespace {

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
                                "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

struct Item {
  Region region;
  std::string fill;
  double opacity;
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

void cycle(std::ostringstream& os, const std::vector<Point>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? " L" : "M") << num(pts[i].x.to_double()) << "," << num(pts[i].y.to_double());
  os << " Z";
}

std::string document(const std::vector<Item>& items, double scale) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& it : items)
    for (const auto& p : it.region.outer.vertices) {
      xmin = std::min(xmin, p.x.to_double());
      xmax = std::max(xmax, p.x.to_double());
      ymin = std::min(ymin, p.y.to_double());
      ymax = std::max(ymax, p.y.to_double());
    }
  if (items.empty()) xmin = xmax = ymin = ymax = 0;
  const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1.0});
  const double w = xmax - xmin + 2 * pad, h = ymax - ymin + 2 * pad;
  const double stroke = 0.004 * std::max(w, h);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(std::ceil(w * scale))
     << "\" height=\"" << num(std::ceil(h * scale)) << "\" viewBox=\"" << num(xmin - pad) << " " << num(-ymax - pad)
     << " " << num(w) << " " << num(h) << "\">\n"
     << "<g transform=\"scale(1,-1)\" stroke=\"#222\" stroke-width=\"" << num(stroke)
     << "\" stroke-linejoin=\"round\" fill-rule=\"evenodd\">\n";
  for (const auto& it : items) {
    os << "<path fill=\"" << it.fill << "\"";
    if (it.opacity < 1) os << " fill-opacity=\"" << num(it.opacity) << "\"";
    os << " d=\"";
    cycle(os, it.region.outer.vertices);
    if (it.region.hole) {
      os << " ";
      cycle(os, it.region.hole->vertices);
    }
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace

std::string render_strip(const ThicknessCertificate& tc, const SvgOptions& opts) {
  std::vector<Item> items;
  const auto& c = tc.config;
  for (int k = 0; k < std::max(1, opts.periods); ++k)
    for (std::size_t i = 0; i < c.units.size(); ++i) {
      int cls = i < tc.classes.size() ? tc.classes[i] : 1;
      Isometry g = compose(Isometry::translation(Scalar(k) * c.period), c.units[i].pose);
      items.push_back({transformed(c.units[i].shape->region, g), kPalette[(cls - 1) % 10], k == 0 ? 1.0 : 0.6});
    }
  return document(items, opts.scale);
}

std::string render_corona(const CoronaWitness& w, const SvgOptions& opts) {
  std::vector<Item> items{{w.center.region(), "#e15759", 1.0}};
  for (std::size_t l = 0; l < w.layers.size(); ++l)
    for (const auto& u : w.layers[l]) items.push_back({u.region(), kPalette[l % 2 ? 2 : 0], 1.0 - 0.2 * (l % 3)});
  return document(items, opts.scale);
}

}  // namespace wallkit

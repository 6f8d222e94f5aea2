#include "wallkit/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#ifndef WALLKIT_VERSION
#define WALLKIT_VERSION "0.0.0"
#endif

namespace wallkit {

using Json = nlohmann::ordered_json;

std::string version_string() { return std::string("wallkit ") + WALLKIT_VERSION; }

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Json big(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

BigInt parse_big(const Json& j, const char* what) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
      throw FormatError(std::string(what) + ": bad integer \"" + s + "\"");
    return BigInt(s);
  }
  throw FormatError(std::string(what) + ": expected an integer");
}

Json scalar(const Scalar& s) { return Json::array({big(s.a()), big(s.b()), big(s.d())}); }

Scalar parse_scalar(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw FormatError(std::string(what) + ": expected [a, b, d]");
  BigInt d = parse_big(j[2], what);
  if (d == 0) throw FormatError(std::string(what) + ": zero denominator");
  return Scalar(parse_big(j[0], what), parse_big(j[1], what), d);
}

Json point(const Point& p) { return Json::array({scalar(p.x), scalar(p.y)}); }

Point parse_point(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw FormatError(std::string(what) + ": expected [x, y]");
  return {parse_scalar(j[0], what), parse_scalar(j[1], what)};
}

Json points(const std::vector<Point>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(point(p));
  return a;
}

std::vector<Point> parse_points(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + ": expected a point list");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(parse_point(p, what));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

// Indented like dump(2), but arrays without objects stay on one line so
// coordinates read as [[a, b, d], [a, b, d]].
void pretty(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  auto flat = [](const Json& a) {
    for (const auto& e : a)
      if (e.is_object()) return false;
    return true;
  };
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += inner + Json(it.key()).dump() + ": ";
      pretty(it.value(), indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      pretty(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    std::string d = j.dump();
    // Spaces after commas, outside strings.
    bool in_str = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
      char c = d[i];
      out += c;
      if (c == '"' && (i == 0 || d[i - 1] != '\\')) in_str = !in_str;
      if (c == ',' && !in_str) out += ' ';
    }
  }
}

std::string text_of(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("JSON syntax: ") + e.what());
  }
}

Json shape_json(const DecoratedShape& d) {
  Json j;
  j["name"] = d.name;
  j["base"] = points(d.base.vertices);
  if (d.hole) j["hole"] = points(d.hole->vertices);
  Json prof = Json::object();
  for (const auto& [id, p] : d.profiles) {
    Json e;
    e["footprint"] = Json::array({scalar(p.s0), scalar(p.s1)});
    e["apex"] = points(p.apex);
    prof[id] = e;
  }
  j["profiles"] = prof;
  auto decs = d.decorations;
  std::sort(decs.begin(), decs.end(), [](const Decoration& a, const Decoration& b) { return a.edge < b.edge; });
  Json da = Json::array();
  for (const auto& dec : decs)
    da.push_back({{"edge", dec.edge}, {"profile", dec.profile}, {"side", dec.side == Side::Out ? "out" : "in"}});
  j["decorations"] = da;
  return j;
}

DecoratedShape shape_from(const Json& j) {
  DecoratedShape d;
  try {
    d.name = field(j, "name").get<std::string>();
    d.base = Polygon{parse_points(field(j, "base"), "base")};
    if (j.contains("hole") && !j.at("hole").is_null()) d.hole = Polygon{parse_points(j.at("hole"), "hole")};
    if (j.contains("profiles")) {
      const Json& ps = j.at("profiles");
      if (!ps.is_object()) throw FormatError("profiles: expected an object");
      for (auto it = ps.begin(); it != ps.end(); ++it) {
        EdgeProfile p;
        p.id = it.key();
        const Json& fp = field(it.value(), "footprint");
        if (!fp.is_array() || fp.size() != 2) throw FormatError("profile " + p.id + ": footprint needs two scalars");
        p.s0 = parse_scalar(fp[0], "footprint");
        p.s1 = parse_scalar(fp[1], "footprint");
        p.apex = parse_points(field(it.value(), "apex"), "apex");
        d.profiles[p.id] = std::move(p);
      }
    }
    if (j.contains("decorations")) {
      for (const auto& e : j.at("decorations")) {
        Decoration dec;
        dec.edge = field(e, "edge").get<int>();
        dec.profile = field(e, "profile").get<std::string>();
        std::string side = e.value("side", "out");
        if (side != "out" && side != "in") throw FormatError("decoration side must be \"out\" or \"in\"");
        dec.side = side == "out" ? Side::Out : Side::In;
        d.decorations.push_back(std::move(dec));
      }
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("shape: ") + e.what());
  }
  return d;
}

Json pose(const Isometry& g) {
  return {{"rot", g.rot}, {"reflect", g.reflect}, {"shift", point(g.shift)}};
}

Isometry parse_pose(const Json& j) {
  Isometry g;
  try {
    g.rot = field(j, "rot").get<int>();
    g.reflect = field(j, "reflect").get<bool>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("unit pose: ") + e.what());
  }
  if (g.rot < 0 || g.rot >= 12) throw FormatError("unit pose: rot must be in 0..11");
  g.shift = parse_point(field(j, "shift"), "shift");
  return g;
}

Json header(const char* kind, const DecoratedShape& shape) {
  Json j;
  j["kind"] = kind;
  j["tool"] = version_string();
  std::string sj = shape_to_json(shape);
  j["shape_digest"] = digest(sj);
  j["shape"] = shape_json(shape);
  return j;
}

LoadedShape shape_of_file(const Json& j, const char* kind) {
  if (field(j, "kind") != kind) throw FormatError(std::string("expected a ") + kind + " file");
  DecoratedShape d = shape_from(field(j, "shape"));
  if (j.contains("shape_digest") && j.at("shape_digest") != digest(shape_to_json(d)))
    throw FormatError("shape_digest does not match the embedded shape");
  return load_shape(d);
}

Json symmetry(const SymmetryOptions& s) {
  return {{"reflections", s.allow_reflections}, {"rotations", s.rotation_subgroup}};
}

Json stats(const SearchStats& s) {
  return {{"nodes", s.nodes},
          {"leaves", s.leaves},
          {"max_branching", s.max_branching},
          {"total_branching", s.total_branching},
          {"complete", s.complete}};
}

Json wall_bounds(const WallBounds& b) { return {{"max_units", b.max_units}, {"max_width", b.max_width}}; }

}  // namespace

DecoratedShape parse_shape(const std::string& text) { return shape_from(parse_text(text)); }

std::string shape_to_json(const DecoratedShape& d) { return text_of(shape_json(d)); }

LoadedShape load_shape(const DecoratedShape& d) {
  LoadedShape l;
  l.source = d;
  l.shape = std::make_shared<const RealizedShape>(realize(d));
  return l;
}

std::string certificate_to_json(const DecoratedShape& shape, const ThicknessCertificate& tc,
                                const std::optional<WallBounds>& bounds) {
  Json j = header("wall_certificate", shape);
  j["period"] = point(tc.config.period);
  Json units = Json::array();
  for (std::size_t i = 0; i < tc.config.units.size(); ++i) {
    Json u = pose(tc.config.units[i].pose);
    u["class"] = i < tc.classes.size() ? tc.classes[i] : 1;
    units.push_back(u);
  }
  j["units"] = units;
  WallCertificate w = verify_wall(tc.config);
  ThicknessCheck chk = check_thickness(tc);
  j["report"] = {{"connected", w.report.connected},
                 {"complement_count", w.report.complement_count},
                 {"cavities", w.report.cavities},
                 {"separated", w.report.separated},
                 {"wall", w.report.valid()},
                 {"thickness", tc.thickness()},
                 {"thickness_verified", chk.ok}};
  if (bounds) j["bounds"] = wall_bounds(*bounds);
  return text_of(j);
}

CertificateFile parse_certificate(const std::string& text) {
  Json j = parse_text(text);
  CertificateFile f;
  f.shape = shape_of_file(j, "wall_certificate");
  f.certificate.config.period = parse_point(field(j, "period"), "period");
  for (const auto& u : field(j, "units")) {
    f.certificate.config.units.push_back({f.shape.shape.get(), parse_pose(u)});
    f.certificate.classes.push_back(u.value("class", 1));
  }
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    f.bounds = WallBounds{b.value("max_units", 8), b.value("max_width", 6.0)};
  }
  return f;
}

std::string witness_to_json(const DecoratedShape& shape, const CoronaWitness& w) {
  Json j = header("corona_witness", shape);
  j["center"] = pose(w.center.pose);
  Json layers = Json::array();
  for (const auto& l : w.layers) {
    Json a = Json::array();
    for (const auto& u : l) a.push_back(pose(u.pose));
    layers.push_back(a);
  }
  j["layers"] = layers;
  j["verified"] = verify_corona(w);
  return text_of(j);
}

WitnessFile parse_witness(const std::string& text) {
  Json j = parse_text(text);
  WitnessFile f;
  f.shape = shape_of_file(j, "corona_witness");
  const RealizedShape* s = f.shape.shape.get();
  f.witness.center = {s, parse_pose(field(j, "center"))};
  for (const auto& l : field(j, "layers")) {
    std::vector<PlacedUnit> layer;
    for (const auto& u : l) layer.push_back({s, parse_pose(u)});
    f.witness.layers.push_back(std::move(layer));
  }
  return f;
}

std::string wall_exhaustion_to_json(const DecoratedShape& shape, const WallSearchResult& r,
                                    const SymmetryOptions& sym) {
  Json j = header("wall_exhaustion", shape);
  j["target_thickness"] = r.target;
  j["bounds"] = wall_bounds(r.bounds);
  j["symmetry"] = symmetry(sym);
  j["model"] = "classes are closed chains of vertex-anchored contacts";
  j["stats"] = stats(r.stats);
  return text_of(j);
}

std::string corona_exhaustion_to_json(const DecoratedShape& shape, const SurroundResult& r,
                                      const SymmetryOptions& sym) {
  Json j = header("corona_exhaustion", shape);
  j["layers"] = r.layers_requested;
  j["symmetry"] = symmetry(sym);
  j["model"] = "vertex-anchored contacts; no cavities between layers";
  j["aborted"] = r.aborted;
  j["stats"] = stats(r.stats);
  return text_of(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace wallkit

// wallkit command-line tool.
//
// Exit codes: 0 claim established, 1 infeasible within bounds, 2 input
// error, 3 internal inconsistency (a verifier rejected a search result).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "CLI11.hpp"
#include "wallkit/io.hpp"
#include "wallkit/svg.hpp"

using namespace wallkit;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum Exit { kEstablished = 0, kInfeasible = 1, kInputError = 2, kInternal = 3 };

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// WALLKIT_LOG=quiet|info|debug controls stderr chatter only.
int log_level() {
  static const int level = [] {
    const char* v = std::getenv("WALLKIT_LOG");
    std::string s = v ? v : "info";
    if (s == "quiet" || s == "0") return 0;
    if (s == "debug" || s == "2") return 2;
    return 1;
  }();
  return level;
}

void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "wallkit: " << msg << "\n";
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct ShapeArgs {
  std::string ref;
  int arc_segments = 4;
};

// A shape file path, or corpus:NAME[:VARIANT].
DecoratedShape load_shape_ref(const ShapeArgs& a) {
  if (a.ref.rfind("corpus:", 0) == 0) {
    std::string rest = a.ref.substr(7);
    CorpusParams p;
    p.m = a.arc_segments;
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
      p.variant = rest.substr(colon + 1);
      rest = rest.substr(0, colon);
    }
    return corpus(rest, p);
  }
  return parse_shape(read_file(a.ref));
}

struct SearchArgs {
  int max_units = 8;
  double max_width = 6.0;
  bool no_reflections = false;
  int rotations = 12;
  int jobs = 1;
  std::string out;

  SymmetryOptions symmetry() const {
    SymmetryOptions s;
    s.allow_reflections = !no_reflections;
    s.rotation_subgroup = rotations;
    return s;
  }
  WallBounds bounds() const { return {max_units, max_width}; }
  void check() const {
    if (max_units < 1) throw FormatError("--max-units-per-period must be positive");
    if (!(max_width > 0)) throw FormatError("--max-width must be positive");
    if (jobs < 1) throw FormatError("--jobs must be positive");
    if (rotations < 1 || 12 % rotations != 0) throw FormatError("--rotations must divide 12");
  }
};

void add_search_flags(CLI::App* c, SearchArgs& s) {
  c->add_option("--max-units-per-period,-K", s.max_units, "Units per period summed over classes");
  c->add_option("--max-width", s.max_width, "Strip width bound in shape diameters");
  c->add_flag("--no-reflections", s.no_reflections, "Place only direct copies");
  c->add_option("--rotations", s.rotations, "Order of the rotation group used (divides 12)");
  c->add_option("--jobs,-j", s.jobs, "Worker threads (results do not depend on it)");
  c->add_option("--out,-o", s.out, "Directory for manifest, certificates and records");
}

void add_shape_arg(CLI::App* c, ShapeArgs& a) {
  c->add_option("shape", a.ref, "Shape file or corpus:NAME[:VARIANT]")->required();
  c->add_option("--arc-segments,-m", a.arc_segments, "Arc polygonalization for corpus shapes");
}

Json manifest(const std::string& command, const DecoratedShape& shape, const SearchArgs& s, Json bounds,
              Json outcome) {
  Json m;
  m["command"] = command;
  m["shape_digest"] = digest(shape_to_json(shape));
  m["bounds"] = std::move(bounds);
  m["symmetry"] = {{"reflections", !s.no_reflections}, {"rotations", s.rotations}};
  m["tool"] = version_string();
  m["outcome"] = std::move(outcome);
  return m;
}

void emit(const SearchArgs& s, const std::string& name, const std::string& text) {
  if (s.out.empty()) return;
  fs::create_directories(s.out);
  write_file((fs::path(s.out) / name).string(), text);
  log(2, "wrote " + (fs::path(s.out) / name).string());
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    // Worker count and output location do not affect the outcome.
    for (const char* flag : {"--jobs", "-j", "--out", "-o"}) {
      std::string f = flag;
      if (a == f) {
        ++i;
        a.clear();
        break;
      }
      if (a.rfind(f + "=", 0) == 0) {
        a.clear();
        break;
      }
    }
    if (a.empty()) continue;
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

void ensure_certificate(const ThicknessCertificate& tc) {
  auto chk = check_thickness(tc);
  if (!chk.ok) throw InternalError("search produced a certificate the verifier rejects: " + chk.reason);
}

std::string bounds_text(const WallBounds& b) {
  std::ostringstream os;
  os << "K=" << b.max_units << ", width=" << b.max_width << " diameters";
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_shape_validate(const ShapeArgs& a) {
  DecoratedShape d = load_shape_ref(a);
  validate(d);
  RealizedShape r = realize(d);
  std::cout << shape_to_json(d);
  log(1, d.name + ": valid, " + std::to_string(r.region.outer.size()) + " vertices, area " +
             std::to_string(r.area.to_double()));
  return kEstablished;
}

int cmd_shape_corpus(const std::string& dir, int m) {
  for (const auto& name : corpus_names()) {
    CorpusParams p;
    p.m = m;
    DecoratedShape d = corpus(name, p);
    if (dir.empty()) {
      std::cout << name << "\n";
      continue;
    }
    fs::create_directories(dir);
    write_file((fs::path(dir) / (name + ".json")).string(), shape_to_json(d));
  }
  return kEstablished;
}

int cmd_wall_verify(const std::string& path) {
  CertificateFile f = parse_certificate(read_file(path));
  WallCertificate w = verify_wall(f.certificate.config);
  auto chk = check_thickness(f.certificate);
  const auto& r = w.report;
  std::cout << "connected: " << (r.connected ? "yes" : "no") << "\n"
            << "complement components: " << r.complement_count << "\n"
            << "cavities: " << r.cavities << "\n"
            << "positive separation: " << (r.separated ? "yes" : "no") << "\n"
            << "wall: " << (r.valid() ? "valid" : "invalid") << "\n";
  if (chk.ok) {
    std::cout << "thickness certificate: valid, " << f.certificate.thickness() << " classes\n";
    return kEstablished;
  }
  std::cout << "thickness certificate: invalid (" << chk.reason << ")\n";
  return kInputError;
}

int cmd_wall_find(const ShapeArgs& a, int t, const SearchArgs& s, const std::string& cmdline) {
  s.check();
  DecoratedShape d = load_shape_ref(a);
  RealizedShape shape = realize(d);
  ContactTable table(shape, s.symmetry());
  log(1, std::to_string(table.contacts().size()) + " contacts");
  Timer timer;
  WallSearchResult r = find_wall(table, t, s.bounds(), s.jobs);
  log(1, "search took " + std::to_string(timer.seconds()) + " s, " + std::to_string(r.stats.nodes) + " nodes");
  Json bounds = {{"target_thickness", t}, {"max_units", s.max_units}, {"max_width", s.max_width}};
  if (r.certificate) {
    ensure_certificate(*r.certificate);
    std::cout << "wall of thickness " << r.certificate->thickness() << " found with "
              << r.certificate->config.units.size() << " units per period\n";
    emit(s, "certificate.json", certificate_to_json(d, *r.certificate, s.bounds()));
    emit(s, "manifest.json",
         manifest(cmdline, d, s, bounds, {{"found", true}, {"thickness", r.certificate->thickness()}}).dump(2) + "\n");
    return kEstablished;
  }
  std::cout << "no wall of thickness " << t << " within bounds " << bounds_text(s.bounds()) << " ("
            << r.stats.nodes << " nodes explored)\n";
  emit(s, "exhaustion.json", wall_exhaustion_to_json(d, r, s.symmetry()));
  emit(s, "manifest.json", manifest(cmdline, d, s, bounds, {{"found", false}, {"nodes", r.stats.nodes}}).dump(2) + "\n");
  return kInfeasible;
}

int cmd_corona(const ShapeArgs& a, int n, std::uint64_t max_nodes, const SearchArgs& s, const std::string& cmdline) {
  s.check();
  DecoratedShape d = load_shape_ref(a);
  RealizedShape shape = realize(d);
  ContactTable table(shape, s.symmetry());
  Timer timer;
  SurroundResult r = surround(table, n, {s.jobs, max_nodes});
  log(1, "search took " + std::to_string(timer.seconds()) + " s");
  Json bounds = {{"layers", n}, {"max_nodes", max_nodes}};
  if (r.witness) {
    std::cout << n << " corona" << (n == 1 ? "" : "s") << " found:";
    for (const auto& l : r.witness->layers) std::cout << " " << l.size();
    std::cout << " units per layer\n";
    emit(s, "witness.json", witness_to_json(d, *r.witness));
    emit(s, "manifest.json", manifest(cmdline, d, s, bounds, {{"found", true}}).dump(2) + "\n");
    return kEstablished;
  }
  if (r.aborted) {
    std::cout << "corona search for " << n << " layers aborted after " << max_nodes << " nodes\n";
  } else {
    std::cout << "no " << n << "-layer corona exists with vertex-anchored placements (" << r.stats.nodes
              << " nodes explored)\n";
    emit(s, "exhaustion.json", corona_exhaustion_to_json(d, r, s.symmetry()));
  }
  emit(s, "manifest.json",
       manifest(cmdline, d, s, bounds, {{"found", false}, {"exhausted", r.exhausted()}}).dump(2) + "\n");
  return kInfeasible;
}

int cmd_thickness(const ShapeArgs& a, const ThicknessBounds& tb, const SearchArgs& s, const std::string& cmdline) {
  s.check();
  if (tb.max_thickness < 1) throw FormatError("--max-thickness must be positive");
  if (tb.corona_cap < 0) throw FormatError("--corona-cap must not be negative");
  DecoratedShape d = load_shape_ref(a);
  RealizedShape shape = realize(d);
  ContactTable table(shape, s.symmetry());
  Timer timer;
  ThicknessInterval iv = thickness_number(table, tb, s.jobs);
  log(1, "thickness run took " + std::to_string(timer.seconds()) + " s");
  const auto& ev = iv.evidence;

  if (ev.certificate) ensure_certificate(*ev.certificate);
  if (ev.corona && !verify_corona(*ev.corona)) throw InternalError("corona witness fails verification");

  std::ostringstream os;
  if (iv.proven()) {
    os << "thickness number = " << iv.lo << " (proved: wall certificate + corona exhaustion)\n";
  } else if (iv.lo_capped) {
    os << "thickness number >= " << iv.lo << " (cap reached); shape may tile\n";
  } else {
    os << "thickness number >= " << iv.lo << (iv.lo ? " (wall certificate)" : "") << "\n";
    if (ev.next_failure)
      os << "thickness " << ev.next_failure->target << ": impossible within bounds "
         << bounds_text(ev.next_failure->bounds) << "\n";
    if (iv.hi) os << "thickness number <= " << *iv.hi << " (corona h=" << ev.heesch_lower << ")\n";
  }
  os << "heesch number: " << ev.heesch_lower;
  if (ev.corona_exhaustion) os << " (" << ev.heesch_lower + 1 << " layers exhausted)";
  else os << " or more (corona cap " << tb.corona_cap << ")";
  os << "\n";
  for (const auto& note : ev.notes) os << "note: " << note << "\n";
  std::cout << os.str();

  if (ev.certificate) emit(s, "certificate.json", certificate_to_json(d, *ev.certificate, tb.wall));
  if (ev.next_failure) emit(s, "wall_exhaustion.json", wall_exhaustion_to_json(d, *ev.next_failure, s.symmetry()));
  if (ev.corona) emit(s, "corona_witness.json", witness_to_json(d, *ev.corona));
  if (ev.corona_exhaustion)
    emit(s, "corona_exhaustion.json", corona_exhaustion_to_json(d, *ev.corona_exhaustion, s.symmetry()));
  Json outcome = {{"lo", iv.lo}, {"hi", iv.hi ? Json(*iv.hi) : Json(nullptr)}, {"proven", iv.proven()},
                  {"heesch_lower", ev.heesch_lower}};
  Json bounds = {{"max_thickness", tb.max_thickness}, {"max_units", s.max_units}, {"max_width", s.max_width},
                 {"corona_cap", tb.corona_cap}, {"corona_max_nodes", tb.corona_max_nodes}};
  emit(s, "manifest.json", manifest(cmdline, d, s, bounds, outcome).dump(2) + "\n");
  return iv.lo >= 1 ? kEstablished : kInfeasible;
}

int cmd_render(const std::string& path, const std::string& out, int periods) {
  if (periods < 1) throw FormatError("--periods must be positive");
  std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("JSON syntax: ") + e.what());
  }
  std::string kind = j.value("kind", "");
  std::string svg;
  SvgOptions opts;
  opts.periods = periods;
  if (kind == "wall_certificate") {
    CertificateFile f = parse_certificate(text);
    auto chk = check_thickness(f.certificate);
    if (!chk.ok) throw FormatError("invalid certificate: " + chk.reason);
    svg = render_strip(f.certificate, opts);
  } else if (kind == "corona_witness") {
    WitnessFile f = parse_witness(text);
    std::string why = check_corona(f.witness);
    if (!why.empty()) throw FormatError("invalid witness: " + why);
    svg = render_corona(f.witness, opts);
  } else {
    throw FormatError("render needs a wall certificate or corona witness file");
  }
  if (out.empty() || out == "-") std::cout << svg;
  else write_file(out, svg);
  return kEstablished;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walls, wall thickness and coronas of planar shapes"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  ShapeArgs shape_args;
  SearchArgs search;
  int target = 1, layers = 1, periods = 3, m = 4;
  std::uint64_t max_nodes = 0;
  std::string path, out, corpus_dir;
  ThicknessBounds tb;

  auto* shape_cmd = app.add_subcommand("shape", "Shape files");
  shape_cmd->require_subcommand(1);
  auto* validate_cmd = shape_cmd->add_subcommand("validate", "Validate a shape and print its canonical form");
  add_shape_arg(validate_cmd, shape_args);
  auto* corpus_cmd = shape_cmd->add_subcommand("corpus", "List the built-in shapes or write them as files");
  corpus_cmd->add_option("--out-dir", corpus_dir, "Write NAME.json files here");
  corpus_cmd->add_option("--arc-segments,-m", m, "Arc polygonalization");

  auto* wall_cmd = app.add_subcommand("wall", "Wall certificates");
  wall_cmd->require_subcommand(1);
  auto* verify_cmd = wall_cmd->add_subcommand("verify", "Re-verify a certificate file");
  verify_cmd->add_option("certificate", path)->required();
  auto* find_cmd = wall_cmd->add_subcommand("find", "Search for a wall of a given thickness");
  add_shape_arg(find_cmd, shape_args);
  find_cmd->add_option("-t,--thickness", target, "Target thickness")->required();
  add_search_flags(find_cmd, search);

  auto* corona_cmd = app.add_subcommand("corona", "Search for coronas around one copy");
  add_shape_arg(corona_cmd, shape_args);
  corona_cmd->add_option("-n,--layers", layers, "Number of layers")->required();
  corona_cmd->add_option("--max-nodes", max_nodes, "Abort after this many nodes (0 = no limit)");
  add_search_flags(corona_cmd, search);

  auto* thick_cmd = app.add_subcommand("thickness", "Bound the thickness number of a shape");
  add_shape_arg(thick_cmd, shape_args);
  thick_cmd->add_option("--max-thickness", tb.max_thickness, "Largest thickness searched");
  thick_cmd->add_option("--corona-cap", tb.corona_cap, "Largest corona count searched");
  thick_cmd->add_option("--corona-max-nodes", tb.corona_max_nodes, "Node limit per corona search");
  add_search_flags(thick_cmd, search);

  auto* render_cmd = app.add_subcommand("render", "Draw a certificate or witness as SVG");
  render_cmd->add_option("file", path, "Certificate or witness file")->required();
  render_cmd->add_option("--out,-o", out, "SVG file (default stdout)");
  render_cmd->add_option("--periods,-k", periods, "Periods drawn for strips");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  const std::string cmdline = command_line(argc, argv);
  try {
    if (validate_cmd->parsed()) return cmd_shape_validate(shape_args);
    if (corpus_cmd->parsed()) return cmd_shape_corpus(corpus_dir, m);
    if (verify_cmd->parsed()) return cmd_wall_verify(path);
    if (find_cmd->parsed()) return cmd_wall_find(shape_args, target, search, cmdline);
    if (corona_cmd->parsed()) return cmd_corona(shape_args, layers, max_nodes, search, cmdline);
    if (thick_cmd->parsed()) {
      tb.wall = search.bounds();
      return cmd_thickness(shape_args, tb, search, cmdline);
    }
    if (render_cmd->parsed()) return cmd_render(path, out, periods);
  } catch (const InternalError& e) {
    std::cerr << "wallkit: internal inconsistency: " << e.what() << "\n";
    return kInternal;
  } catch (const LemmaViolation& e) {
    std::cerr << "wallkit: internal inconsistency: " << e.what() << "\n";
    return kInternal;
  } catch (const std::domain_error& e) {
    std::cerr << "wallkit: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "wallkit: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "wallkit: internal inconsistency: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "wallkit: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

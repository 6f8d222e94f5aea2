// Acceptance run: one PASS/FAIL line per criterion.
//   wallkit_acceptance [--jobs N] [--only 1,3,9]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"
#include "wallkit/io.hpp"

using namespace wktest;
using Clock = std::chrono::steady_clock;

namespace {

int g_jobs = 1;
int g_internal_errors = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Loaded {
  DecoratedShape source;
  std::unique_ptr<RealizedShape> shape;
  std::unique_ptr<ContactTable> table;
};

Loaded& shape(const std::string& name) {
  static std::map<std::string, Loaded> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    Loaded l;
    l.source = corpus(name);
    l.shape = std::make_unique<RealizedShape>(realize(l.source));
    l.table = std::make_unique<ContactTable>(*l.shape, SymmetryOptions{});
    it = cache.emplace(name, std::move(l)).first;
  }
  return it->second;
}

// Odd-thickness certificates gathered by criteria 1-6 for the round trip.
std::vector<std::pair<std::string, ThicknessCertificate>> g_odd;

void keep_odd(const std::string& name, const ThicknessCertificate& tc) {
  const int t = tc.thickness();
  for (int odd = 1; odd <= t; odd += 2) g_odd.emplace_back(name, restrict_classes(tc, 1, odd));
}

// A certificate must survive a JSON round trip and verify from the parsed form.
bool reverifies(const std::string& name, const ThicknessCertificate& tc) {
  CertificateFile f = parse_certificate(certificate_to_json(shape(name).source, tc, std::nullopt));
  return verify_thickness(f.certificate) && f.certificate.classes == tc.classes;
}

std::string fmt_interval(const ThicknessInterval& iv) {
  std::ostringstream s;
  s << "[" << iv.lo << (iv.lo_capped ? "+" : "") << ", " << (iv.hi ? std::to_string(*iv.hi) : "?") << "]";
  return s.str();
}

ThicknessBounds tbounds(int k, int max_t, int cap) {
  ThicknessBounds b;
  b.wall = {k, 6.0};
  b.max_thickness = max_t;
  b.corona_cap = cap;
  return b;
}

Outcome hexagon() {
  auto& s = shape("deformed_hexagon");
  auto iv = thickness_number(*s.table, tbounds(8, 8, 3), g_jobs);
  const auto& ev = iv.evidence;
  bool ok = iv.lo == 4 && iv.hi && *iv.hi == 4 && ev.certificate && verify_thickness(*ev.certificate) &&
            ev.heesch_lower == 1 && ev.corona && verify_corona(*ev.corona) && ev.corona_exhaustion &&
            ev.corona_exhaustion->layers_requested == 2 && reverifies("deformed_hexagon", *ev.certificate);
  if (ev.certificate) keep_odd("deformed_hexagon", *ev.certificate);
  return {ok, "interval " + fmt_interval(iv)};
}

Outcome wall_pair(const std::string& name, int found_t, int k) {
  auto& s = shape(name);
  auto yes = find_wall(*s.table, found_t, {k, 6.0}, g_jobs);
  if (!yes.certificate) return {false, "no wall of thickness " + std::to_string(found_t)};
  keep_odd(name, *yes.certificate);
  auto no = find_wall(*s.table, found_t + 1, {k, 6.0}, g_jobs);
  bool ok = verify_thickness(*yes.certificate) && yes.certificate->thickness() >= found_t && !no.certificate &&
            no.stats.complete && reverifies(name, *yes.certificate);
  std::string detail = "t=" + std::to_string(found_t) + " certificate; t=" + std::to_string(found_t + 1) +
                       (no.certificate ? " FOUND" : " infeasible within K=" + std::to_string(k)) + " (" +
                       std::to_string(no.stats.nodes) + " nodes)";
  return {ok, detail};
}

Outcome pentagon() {
  auto& s = shape("heesch_pentagon");
  auto c1 = surround(*s.table, 1, {g_jobs, 0});
  auto c2 = surround(*s.table, 2, {g_jobs, 0});
  bool coronas = c1.witness && verify_corona(*c1.witness) && c2.exhausted();
  Outcome o = wall_pair("heesch_pentagon", 2, 8);
  o.pass = o.pass && coronas;
  o.detail += std::string("; corona-1 ") + (c1.witness ? "witness" : "none") + ", corona-2 " +
              (c2.exhausted() ? "exhausted" : c2.witness ? "witness" : "aborted");
  return o;
}

Outcome friedman() {
  Outcome o = wall_pair("friedman_region", 1, 4);
  auto c = surround(*shape("friedman_region").table, 1, {g_jobs, 0});
  bool witness = c.witness && verify_corona(*c.witness);
  o.pass = o.pass && witness;
  o.detail += witness ? "; corona-1 witness" : "; no corona-1 witness";
  return o;
}

Outcome mann() {
  auto& s = shape("mann_region");
  auto three = find_wall(*s.table, 3, {8, 6.0}, g_jobs);
  if (!three.certificate) return {false, "no wall of thickness 3 within K=8"};
  keep_odd("mann_region", *three.certificate);
  auto four = find_wall(*s.table, 4, {8, 6.0}, g_jobs);
  bool ok = verify_thickness(*three.certificate) && reverifies("mann_region", *three.certificate) &&
            (four.certificate ? verify_thickness(*four.certificate) : four.stats.complete);
  std::string detail = "t=3 certificate; t=4 " +
                       std::string(four.certificate ? "certificate" : "infeasible") + " within K=8, width 6 (" +
                       std::to_string(four.stats.nodes) + " nodes)";
  return {ok, detail};
}

Outcome lemma() {
  int done = 0, failed = 0;
  auto check = [&](const ThicknessCertificate& tc) {
    const int t = tc.thickness(), m = (t - 1) / 2;
    for (std::size_t i = 0; i < tc.classes.size(); ++i)
      if (tc.classes[i] == m + 1) {
        auto w = extract_coronas_from_wall(tc, static_cast<int>(i));
        if (static_cast<int>(w.layers.size()) != m || !verify_corona(w)) ++failed;
        ++done;
        return;
      }
    ++failed;
  };
  for (const auto& [name, tc] : g_odd) check(tc);
  const int from_corpus = done;
  RealizedShape sq = unit_square(), hex = unit_hexagon();
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) check(random_tiling_wall(rng, sq, hex, true));
  return {failed == 0 && done == from_corpus + 200,
          std::to_string(from_corpus) + " corpus + 200 random walls, " + std::to_string(failed) + " failures"};
}

Outcome corpus_walls() {
  std::string missing;
  for (const auto& name : corpus_names()) {
    auto r = find_wall(*shape(name).table, 1, {8, 6.0}, g_jobs);
    if (!r.certificate || !verify_thickness(*r.certificate)) missing += " " + name;
  }
  return {missing.empty(), missing.empty() ? std::to_string(corpus_names().size()) + " shapes" : "failed:" + missing};
}

bool close(const Dec& x, const Dec& y) {
  Dec scale = boost::multiprecision::max(Dec(1), boost::multiprecision::abs(y));
  return boost::multiprecision::abs(x - y) <= Dec("1e-40") * scale;
}

int dec_sign(const Dec& x) { return x > Dec("1e-45") ? 1 : (x < Dec("-1e-45") ? -1 : 0); }

Outcome soundness() {
  std::mt19937_64 rng(99);
  int scalar_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    int mag = i % 4 == 0 ? 1000000000 : 60;
    Scalar x = random_scalar(rng, mag), y = random_scalar(rng, mag);
    Dec dx = to_dec(x), dy = to_dec(y);
    bool ok = close(to_dec(x + y), dx + dy) && close(to_dec(x * y), dx * dy) &&
              (y.is_zero() || close(to_dec(x / y), dx / dy)) && compare(x, y) == dec_sign(dx - dy);
    if (!ok) ++scalar_bad;
  }

  int arr_bad = 0;
  for (int i = 0; i < 1000; ++i)
    if (!arrangement_invariants(random_arrangement(rng)).empty()) ++arr_bad;

  // Same results with one and four workers.
  int diverged = 0;
  const std::vector<std::tuple<std::string, int, int>> walls = {
      {"square_semicircle", 2, 6}, {"heesch_pentagon", 2, 8}, {"chopped_disk", 1, 6}, {"square_semicircle", 3, 4}};
  for (const auto& [name, t, k] : walls) {
    auto a = find_wall(*shape(name).table, t, {k, 6.0}, 1);
    auto b = find_wall(*shape(name).table, t, {k, 6.0}, 4);
    std::string ja = a.certificate ? certificate_to_json(shape(name).source, *a.certificate, std::nullopt)
                                   : wall_exhaustion_to_json(shape(name).source, a, {});
    std::string jb = b.certificate ? certificate_to_json(shape(name).source, *b.certificate, std::nullopt)
                                   : wall_exhaustion_to_json(shape(name).source, b, {});
    if (ja != jb) ++diverged;
  }
  for (int n = 1; n <= 2; ++n) {
    auto a = surround(*shape("deformed_hexagon").table, n, {1, 0});
    auto b = surround(*shape("deformed_hexagon").table, n, {4, 0});
    const auto& src = shape("deformed_hexagon").source;
    std::string ja = a.witness ? witness_to_json(src, *a.witness) : corona_exhaustion_to_json(src, a, {});
    std::string jb = b.witness ? witness_to_json(src, *b.witness) : corona_exhaustion_to_json(src, b, {});
    if (ja != jb) ++diverged;
  }

  bool ok = scalar_bad == 0 && arr_bad == 0 && diverged == 0 && g_internal_errors == 0;
  return {ok, "internal errors " + std::to_string(g_internal_errors) + ", scalar mismatches " +
                  std::to_string(scalar_bad) + "/10000, arrangement failures " + std::to_string(arr_bad) +
                  "/1000, jobs 1 vs 4 differences " + std::to_string(diverged) + "/6"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc) {
      g_jobs = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      std::stringstream s(argv[++i]);
      for (std::string part; std::getline(s, part, ',');) only.insert(std::atoi(part.c_str()));
    } else {
      std::fprintf(stderr, "usage: %s [--jobs N] [--only 1,2,...]\n", argv[0]);
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "deformed hexagon thickness number", 3600, hexagon},
      {2, "Heesch pentagon", 1800, pentagon},
      {3, "square with semicircles", 900, [] { return wall_pair("square_semicircle", 2, 6); }},
      {4, "chopped disk", 600, [] { return wall_pair("chopped_disk", 1, 6); }},
      {5, "Friedman region", 1800, friedman},
      {6, "Mann region", 3600, mann},
      {7, "odd walls yield coronas", 0, lemma},
      {8, "every corpus shape forms a wall", 300, corpus_walls},
      {9, "soundness", 0, soundness},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const LemmaViolation& e) {
      ++g_internal_errors;
      o = {false, std::string("internal inconsistency: ") + e.what()};
    } catch (const std::logic_error& e) {
      ++g_internal_errors;
      o = {false, std::string("internal inconsistency: ") + e.what()};
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = c.budget_s == 0 || secs <= c.budget_s;
    if (!in_time) o.detail += "; over the time budget";
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s: %s (%.1fs)\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

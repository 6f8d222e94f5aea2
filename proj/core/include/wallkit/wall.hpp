#pragma once

// Periodic walls: verification of wall and thickness certificates, maximal
// decomposition, and a bounded search for walls of a given thickness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wallkit/arrangement.hpp"
#include "wallkit/contact.hpp"

namespace wallkit {

class WallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fundamental-domain units of a periodic strip; the strip is the union of
/// all translates of the units by integer multiples of `period`.
struct StripConfig {
  std::vector<PlacedUnit> units;
  Vec2 period;
};

struct WallReport {
  bool connected = false;
  int complement_count = 0;
  int cavities = 0;
  bool separated = false;

  bool valid() const { return connected && complement_count == 2 && cavities == 0 && separated; }
  friend bool operator==(const WallReport&, const WallReport&) = default;
};

struct WallCertificate {
  StripConfig config;
  WallReport report;
};

struct ThicknessCertificate {
  StripConfig config;
  /// Class label (1..t) per fundamental unit.
  std::vector<int> classes;

  int thickness() const;
};

/// Checks the strip invariants and computes the wall report. Throws WallError
/// when units overlap (including across the period) or the period is zero.
WallCertificate verify_wall(const StripConfig& c);

/// The complement part of the report (connected is left false) for regions
/// already known to be interior-disjoint across the period.
WallReport complement_report(const std::vector<Region>& regions, const Vec2& period);

/// Throws WallError describing the first overlap, if any.
void check_strip(const StripConfig& c);

struct ThicknessCheck {
  bool ok = false;
  std::string reason;  // empty when ok
};
ThicknessCheck check_thickness(const ThicknessCertificate& tc);
inline bool verify_thickness(const ThicknessCertificate& tc) { return check_thickness(tc).ok; }

/// Largest t <= cap such that some period-invariant ordered partition of the
/// units into t classes is a valid thickness certificate; 0 if the wall is
/// not valid. When `best` is given it receives the labels found.
int max_decomposition(const WallCertificate& w, int cap, std::vector<int>* best = nullptr);

/// Subconfiguration with the units whose label is in [lo, hi], relabelled
/// from 1.
ThicknessCertificate restrict_classes(const ThicknessCertificate& tc, int lo, int hi);

struct WallBounds {
  /// Units per period, summed over all classes.
  int max_units = 8;
  /// Transverse extent of the strip, in shape diameters.
  double max_width = 6.0;
};

struct SearchOptions {
  SymmetryOptions symmetry;
  int jobs = 1;
};

/// Evidence that a bounded search explored its whole branching set.
struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t max_branching = 0;
  std::uint64_t total_branching = 0;
  bool complete = false;

  void merge(const SearchStats& o);
};

struct WallSearchResult {
  int target = 0;
  WallBounds bounds;
  std::optional<ThicknessCertificate> certificate;
  SearchStats stats;
};

/// Searches for a wall of thickness >= t whose classes are periodic chains of
/// vertex-anchored contacts, within the bounds. A failure only means that no
/// such wall exists within the bounds and placement model.
WallSearchResult find_wall(const ContactTable& table, int t, const WallBounds& bounds, int jobs = 1);

}  // namespace wallkit

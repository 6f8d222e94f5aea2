#pragma once

// Coronas (layers of copies surrounding a copy), their search and independent
// verification, extraction from thick walls, and the thickness-number
// interval that combines wall certificates with corona exhaustion.

#include <optional>
#include <string>
#include <vector>

#include "wallkit/wall.hpp"

namespace wallkit {

struct CoronaWitness {
  PlacedUnit center;
  std::vector<std::vector<PlacedUnit>> layers;
};

/// Checks the witness invariants without using any search data: interiors
/// pairwise disjoint, each layer leaves no uncovered point on the boundary of
/// the blob it surrounds, and no union has a cavity. Returns an empty string
/// when valid, otherwise the first problem found.
std::string check_corona(const CoronaWitness& w);
inline bool verify_corona(const CoronaWitness& w) { return check_corona(w).empty(); }

struct CoronaOptions {
  int jobs = 1;
  /// Abort after this many search nodes (0 = unlimited). An aborted search
  /// is neither a witness nor an exhaustion.
  std::uint64_t max_nodes = 0;
};

struct SurroundResult {
  int layers_requested = 0;
  std::optional<CoronaWitness> witness;
  SearchStats stats;
  bool aborted = false;

  bool exhausted() const { return !witness && !aborted && stats.complete; }
};

/// Searches for n coronas around a copy at the identity, placing copies only
/// at vertex-anchored contacts.
SurroundResult surround(const ContactTable& table, int n, const CoronaOptions& opts = {});

/// Upper bound on the thickness number given Heesch number h: a wall of
/// thickness 2n+1 yields n coronas, so thickness <= 2h+2.
int thickness_upper_bound(int h);

class LemmaViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds floor((t-1)/2) coronas around fundamental unit `unit` (which must lie
/// in the middle class) from translates of the wall's units, and verifies
/// them. Throws LemmaViolation when that fails for a valid certificate and
/// WallError when the certificate itself is invalid.
CoronaWitness extract_coronas_from_wall(const ThicknessCertificate& tc, int unit);

struct ThicknessBounds {
  WallBounds wall;
  int max_thickness = 8;
  int corona_cap = 3;
  std::uint64_t corona_max_nodes = 0;
};

struct ThicknessEvidence {
  /// Best wall found (thickness lo), if any.
  std::optional<ThicknessCertificate> certificate;
  /// Failed wall search at thickness lo+1, if run.
  std::optional<WallSearchResult> next_failure;
  /// Largest corona count with a witness, and that witness.
  int heesch_lower = 0;
  std::optional<CoronaWitness> corona;
  /// Exhausted corona search at heesch_lower+1, if any.
  std::optional<SurroundResult> corona_exhaustion;
  std::vector<std::string> notes;
};

struct ThicknessInterval {
  int lo = 0;
  bool lo_capped = false;  // lo reached max_thickness
  std::optional<int> hi;   // none: no upper bound established
  ThicknessEvidence evidence;

  bool proven() const { return hi && *hi == lo; }
};

ThicknessInterval thickness_number(const ContactTable& table, const ThicknessBounds& bounds, int jobs = 1);

}  // namespace wallkit

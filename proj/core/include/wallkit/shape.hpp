#pragma once

// Decorated shapes: a base polygon whose edges may carry a bump (outward
// profile) or a dent (the same profile mirrored inward), realized into exact
// simple polygons. Also hosts the built-in corpus of example shapes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wallkit/geom.hpp"

namespace wallkit {

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A polyline over the unit edge (0,0)-(1,0), outward = +y.
struct EdgeProfile {
  std::string id;
  Scalar s0, s1;
  /// Includes the endpoints (s0, 0) and (s1, 0).
  std::vector<Point> apex;

  /// Area between the polyline and the edge.
  Scalar area() const;
  friend bool operator==(const EdgeProfile&, const EdgeProfile&) = default;
};

/// Isosceles triangle over [3/8, 5/8] with height 1/8.
EdgeProfile default_profile();
/// Isosceles triangle over [s0, s1] with the given height.
EdgeProfile triangle_profile(std::string id, const Scalar& s0, const Scalar& s1, const Scalar& height);

enum class Side { Out, In };

struct Decoration {
  int edge = 0;
  std::string profile;
  Side side = Side::Out;
  friend bool operator==(const Decoration&, const Decoration&) = default;
};

struct DecoratedShape {
  std::string name;
  Polygon base;
  std::optional<Polygon> hole;
  std::map<std::string, EdgeProfile> profiles;
  std::vector<Decoration> decorations;
  friend bool operator==(const DecoratedShape&, const DecoratedShape&) = default;
};

/// A shape ready for placement, with cached derived data.
struct RealizedShape {
  std::string name;
  Region region;
  std::optional<DecoratedShape> provenance;

  Scalar area;
  Scalar diameter_squared;
  Point interior;  // some point strictly inside the region
  BBox box;
};

/// Checks profile and decoration invariants; throws ShapeError naming the
/// offending edge.
void validate(const DecoratedShape& d);

/// Replaces every decorated edge by its profile polyline (mirrored inward for
/// dents). Throws ShapeError naming the edge whose decoration breaks
/// simplicity.
RealizedShape realize(const DecoratedShape& d);

/// Wraps a bare region (no decorations).
RealizedShape realize(const Region& r, std::string name);

/// Applies g to the base polygon and hole; decorations follow their edges.
DecoratedShape transformed(const DecoratedShape& d, const Isometry& g);

struct CorpusParams {
  /// Arc polygonalization segment count (even, >= 4).
  int m = 4;
  /// Shape-specific variant selector; empty means the shipped default.
  std::string variant;
};

const std::vector<std::string>& corpus_names();
DecoratedShape corpus(const std::string& name, const CorpusParams& params = {});

/// Unit-cell polyomino boundary (cells given by lower-left integer corner).
Polygon polyomino_outline(const std::vector<std::pair<int, int>>& cells);

/// Points on the unit circle at angles from `from_deg` to `to_deg` (both
/// multiples of 30) in m steps, exact in Q(sqrt 3). Steps that are not
/// multiples of 30 degrees use a rational half-angle tangent, so spacing is
/// only approximately uniform; the result is symmetric about the mid angle.
std::vector<Point> circle_arc(int from_deg, int to_deg, int m);

}  // namespace wallkit

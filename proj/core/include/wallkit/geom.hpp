#pragma once

// Exact polygon predicates over Q(sqrt 3) coordinates.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallkit/exact.hpp"

namespace wallkit {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Segment {
  Point a, b;
  Scalar length_squared() const { return dot(b - a, b - a); }
  double length() const;
};

/// Axis-aligned box in doubles, padded so that it conservatively contains the
/// exact geometry. Only used to skip exact tests.
struct BBox {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  bool overlaps(const BBox& o) const {
    return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
  }
  BBox translated(double dx, double dy) const { return {xmin + dx, ymin + dy, xmax + dx, ymax + dy}; }
  void expand(const BBox& o);
};
BBox bbox_of(const std::vector<Point>& pts);

/// Simple polygon, counter-clockwise, no repeated vertices and no three
/// consecutive collinear vertices.
struct Polygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }
  const Point& next(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
  const Point& prev(std::size_t i) const { return vertices[(i + vertices.size() - 1) % vertices.size()]; }
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// A polygon with at most one hole strictly inside it. The interior is the
/// outer interior minus the closed hole.
struct Region {
  Polygon outer;
  std::optional<Polygon> hole;

  Region() = default;
  Region(Polygon p) : outer(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  Region(Polygon p, std::optional<Polygon> h) : outer(std::move(p)), hole(std::move(h)) {}

  /// Boundary cycles oriented with the interior on the left: the outer
  /// polygon as is, the hole reversed.
  std::vector<std::vector<Point>> cycles() const;
  friend bool operator==(const Region&, const Region&) = default;
};

Scalar signed_area(const std::vector<Point>& pts);
Scalar area(const Polygon& p);
Scalar area(const Region& r);

/// Removes repeated and collinear vertices, orients counter-clockwise and
/// rotates so the lexicographically smallest vertex comes first.
Polygon canonical_polygon(std::vector<Point> pts);

/// Returns an empty string when p satisfies the Polygon invariants, otherwise
/// a description of the first violation found.
std::string polygon_defect(const Polygon& p);
void validate_polygon(const Polygon& p);
void validate_region(const Region& r);

Polygon transformed(const Polygon& p, const Isometry& g);
Region transformed(const Region& r, const Isometry& g);

enum class Location { Inside, Boundary, Outside };

bool on_segment(const Point& p, const Point& a, const Point& b);
Location locate(const std::vector<std::vector<Point>>& cycles, const Point& p);
Location locate(const Region& r, const Point& p);

/// True iff the open interiors share a point. Touching along edges or at
/// vertices does not count.
bool interiors_intersect(const Region& p, const Region& q);

/// Maximal positive-length segments on both boundaries, oriented along p.
/// Throws GeometryError when the interiors overlap.
std::vector<Segment> shared_boundary(const Region& p, const Region& q);

/// Same as shared_boundary but skips the overlap precondition check; the
/// caller guarantees disjoint interiors.
std::vector<Segment> shared_boundary_unchecked(const Region& p, const Region& q);

/// Some interior point of a simple polygon (centroid of an ear).
Point interior_point(const Polygon& p);
Point interior_point(const Region& r);

namespace detail {
/// Points of the closed segment cd at which segment ab must be split:
/// crossing points, touching endpoints and collinear overlap ends.
void segment_split_points(const Point& a, const Point& b, const Point& c, const Point& d, std::vector<Point>& out);
}  // namespace detail

/// Largest squared distance between two vertices.
Scalar diameter_squared(const Polygon& p);

}  // namespace wallkit

#pragma once

// Placement of shape copies: vertex-anchored contact enumeration, conflict
// tests and a cached relation table used by the searches.

#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "wallkit/shape.hpp"

namespace wallkit {

/// Which isometries copies may use.
struct SymmetryOptions {
  bool allow_reflections = true;
  /// Order of the rotation group (divisor of 12): rotations by 360/n degrees.
  int rotation_subgroup = 12;

  /// All linear parts (shift zero), in canonical order.
  std::vector<Isometry> linear_parts() const;
  bool permits(const Isometry& g) const;
};

struct PlacedUnit {
  const RealizedShape* shape = nullptr;
  Isometry pose;

  Region region() const { return transformed(shape->region, pose); }
  BBox box() const;
};

struct Contact {
  PlacedUnit unit_a, unit_b;
  std::vector<Segment> segments;
};

/// All poses g of `shape` (restricted by opts) such that g(shape) shares a
/// positive-length anti-parallel edge overlap with `fixed`, some vertex of one
/// coincides with a vertex of the other, and the interiors are disjoint.
/// Poses giving the same placed region are reported once, keeping the
/// canonically smallest; output is in canonical order.
std::vector<Isometry> enumerate_contacts(const PlacedUnit& fixed, const RealizedShape& shape,
                                         const SymmetryOptions& opts = {});

/// True iff u's interior meets the interior of some unit in `placed`.
bool conflicts(const PlacedUnit& u, const std::vector<PlacedUnit>& placed);

/// Isometries s with s(shape) == shape, restricted by opts.
std::vector<Isometry> symmetries(const RealizedShape& shape, const SymmetryOptions& opts = {});

/// Canonical representative of the placed region g(shape): the smallest g o s
/// over the symmetries s.
Isometry canonical_pose(const Isometry& g, const std::vector<Isometry>& syms);

/// How two copies of one shape relate.
struct Relation {
  bool conflict = false;  // interiors overlap
  bool touch = false;     // closed sets meet
  bool shares = false;    // positive-length common boundary
};

/// Per-shape contact set and a thread-safe cache of pairwise relations keyed
/// by relative pose.
class ContactTable {
 public:
  ContactTable(const RealizedShape& shape, const SymmetryOptions& opts);

  const RealizedShape& shape() const { return *shape_; }
  const SymmetryOptions& options() const { return opts_; }
  /// Contact poses relative to a unit at the identity.
  const std::vector<Isometry>& contacts() const { return contacts_; }
  const std::vector<Isometry>& symmetries() const { return syms_; }

  /// Relation between the copies at poses g and h.
  Relation relation(const Isometry& g, const Isometry& h) const;
  /// Relation between the identity copy and the copy at rel.
  Relation relative(const Isometry& rel) const;

  /// Double-precision centre of the shape's bounding circle and its radius.
  double radius() const { return radius_; }
  std::pair<double, double> centre(const Isometry& g) const;

  std::size_t cache_size() const;

 private:
  const RealizedShape* shape_;
  SymmetryOptions opts_;
  std::vector<Isometry> contacts_;
  std::vector<Isometry> syms_;
  double cx_ = 0, cy_ = 0, radius_ = 0;

  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Isometry, Relation, IsometryHash> cache_;
};

}  // namespace wallkit

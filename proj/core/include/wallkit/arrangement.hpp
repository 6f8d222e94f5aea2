#pragma once

// Planar arrangement of polygon boundaries with per-face cover counts, and
// the complement analysis used to decide whether a union of copies divides
// the plane cleanly.

#include <optional>
#include <vector>

#include "wallkit/geom.hpp"

namespace wallkit {

/// Which input a boundary edge came from. `cycle` 0 is the outer polygon,
/// 1 the hole.
struct EdgeOwner {
  int polygon;
  int cycle;
  /// +1 if the owner's interior lies to the left of the half-edge low->high
  /// (see Subdivision::HalfEdge), -1 if to the right.
  int side;
};

class Subdivision {
 public:
  struct HalfEdge {
    int origin = -1;
    int twin = -1;
    int next = -1;
    int face = -1;
    int edge = -1;  // undirected edge index
  };
  struct Face {
    std::vector<int> cycles;  // one representative half-edge per boundary cycle
    int cover = 0;
    Scalar area;   // exact; meaningless for the unbounded face
    bool bounded = true;
  };
  struct Edge {
    std::vector<EdgeOwner> owners;
  };

  /// Plain arrangement of the boundaries of `regions`.
  static Subdivision build(const std::vector<Region>& regions);
  /// Periodic arrangement: `fundamental` is replicated by k * period for
  /// k in [-window, window]. window = 0 picks a window wide enough for the
  /// geometry.
  static Subdivision build_periodic(const std::vector<Region>& fundamental, const Vec2& period, int window = 0);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int unbounded_face() const { return 0; }
  /// Number of connected components of the edge graph.
  int component_count() const { return component_count_; }
  int component_of_vertex(int v) const { return vertex_component_[v]; }
  /// For each connected component: V - E + (bounded cycles of it) + 1.
  std::vector<int> euler_per_component() const;

  const std::optional<Vec2>& period() const { return period_; }
  int window() const { return window_; }
  /// Copy index (translate multiple) of an input polygon; 0 when not periodic.
  int copy_of_polygon(int polygon) const { return polygon_copy_.empty() ? 0 : polygon_copy_[polygon]; }
  /// Index into the fundamental input of an expanded polygon.
  int source_of_polygon(int polygon) const { return polygon_source_.empty() ? polygon : polygon_source_[polygon]; }
  int polygon_count() const { return polygon_count_; }

  /// Vertices of one boundary cycle starting at half-edge h.
  std::vector<int> cycle_half_edges(int h) const;

 private:
  void construct(const std::vector<Region>& regions);

  std::vector<Point> vertices_;
  std::vector<HalfEdge> half_edges_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<int> vertex_component_;
  int component_count_ = 0;
  int polygon_count_ = 0;
  std::optional<Vec2> period_;
  int window_ = 0;
  std::vector<int> polygon_copy_;
  std::vector<int> polygon_source_;
};

enum class ComponentKind {
  Upper,          // unbounded, on the left-normal side of the period
  Lower,          // unbounded, on the other side
  Unbounded,      // the single unbounded complement of a non-periodic or broken union
  Cavity,         // bounded region enclosed by copies
  IntrinsicHole,  // the hole of one copy's own region
};

struct ComplementComponent {
  ComponentKind kind;
  std::vector<int> faces;
  bool bounded = false;
  bool touches_both_window_ends = false;
  /// Boundary vertices relevant to separation: for Upper/Lower only those in
  /// the central part of the window.
  std::vector<int> boundary_vertices;
  /// For cavities: whether the face touches the copy-0 polygons (one
  /// representative per period).
  bool central = false;
};

std::vector<ComplementComponent> complement_components(const Subdivision& s);

/// True iff the closures of the two components are disjoint: no arrangement
/// vertex lies on the boundary of both.
bool min_separation_positive(const Subdivision& s, const ComplementComponent& a, const ComplementComponent& b);

}  // namespace wallkit

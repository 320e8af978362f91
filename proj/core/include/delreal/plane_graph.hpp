#pragma once

// Combinatorial plane triangulations given by a rotation system.
//
// Vertices are labeled 1..n. rotation[v] lists the neighbors of v in
// counterclockwise order (rotation[0] is unused). Faces are traced with the
// face on the left of each dart, so bounded faces come out counterclockwise
// and the outer face comes out clockwise, which is the convention the
// outer face is stored in.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace delreal {

using Vertex = int;
using Cycle = std::vector<Vertex>;
using Rotation = std::vector<std::vector<Vertex>>;

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected edge with u < v.
Edge make_edge(Vertex a, Vertex b);

struct Point2d {
  double x = 0.0;
  double y = 0.0;
};

/// Rotates the cycle so its smallest label comes first; orientation is kept.
Cycle normalize_cycle(Cycle cycle);
/// Same vertex sequence up to cyclic rotation.
bool same_cyclic_order(const Cycle& a, const Cycle& b);
/// Same vertex sequence up to cyclic rotation and reversal.
bool same_cycle_any_orientation(const Cycle& a, const Cycle& b);

/// All face cycles of the combinatorial map (each dart used exactly once).
/// Throws kAsymmetricEdge, kInvalidArgument (bad labels) or kNotConnected.
std::vector<Cycle> faces_from_rotation(const Rotation& rotation);

class PlaneTriangulation {
 public:
  /// Checks labels and dart symmetry (throws kInvalidArgument /
  /// kAsymmetricEdge) but not the triangulation rules; run
  /// validate_triangulation() for those. A rotation given in the mirrored
  /// orientation relative to the clockwise outer face is reflected here.
  PlaneTriangulation(int n, Rotation rotation, Cycle outer_face);

  int n() const { return n_; }
  const Rotation& rotation() const { return rotation_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return rotation_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  const Cycle& outer_face() const { return outer_face_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Every traced face, normalized, in tracing order (the outer face included).
  const std::vector<Cycle>& faces() const { return faces_; }
  std::vector<Cycle> inner_faces() const;
  bool has_edge(Vertex a, Vertex b) const;
  bool on_outer_face(Vertex v) const;
  bool outer_face_is_traced() const { return outer_face_traced_; }
  bool connected() const { return connected_; }
  /// True when the constructor reflected the input rotation.
  bool reflected_on_input() const { return reflected_; }
  /// FNV-1a over n, rotation and outer face.
  std::uint64_t digest() const;

  friend bool operator==(const PlaneTriangulation& a, const PlaneTriangulation& b) {
    return a.n_ == b.n_ && a.rotation_ == b.rotation_ && a.outer_face_ == b.outer_face_;
  }

 private:
  int n_;
  Rotation rotation_;
  Cycle outer_face_;
  std::vector<Edge> edges_;
  std::vector<Cycle> faces_;
  bool outer_face_traced_ = false;
  bool connected_ = false;
  bool reflected_ = false;
};

struct Violation {
  std::string rule;
  std::string message;
  std::vector<Vertex> vertices;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(const std::string& rule) const;
};

ValidationReport validate_triangulation(const PlaneTriangulation& g);

/// Faces that may serve as the outer face of a realization: just the given
/// outer face when it has four or more vertices, every face otherwise.
std::vector<Cycle> candidate_outer_faces(const PlaneTriangulation& g);

/// Same rotation system with `face` as the outer face. `face` may be given
/// in either orientation. Throws kFaceNotFound.
PlaneTriangulation reembed_with_outer_face(const PlaneTriangulation& g, const Cycle& face);

/// Barycentric (Tutte) placement: the outer face on a clockwise regular
/// polygon of the given radius, every other vertex at the mean of its
/// neighbors. Index v-1 holds vertex v. Throws kSingularSystem when the
/// linear system is singular or an interior vertex fails to land strictly
/// inside the polygon.
std::vector<Point2d> tutte_embedding(const PlaneTriangulation& g, double polygon_radius);

}  // namespace delreal

#pragma once

// Brute-force exact Delaunay triangulation. Deliberately independent of the
// constraint machinery so it can serve as ground truth for certification.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "delreal/exact.hpp"
#include "delreal/plane_graph.hpp"

namespace delreal {

struct PositionIssue {
  std::string kind;  // DUPLICATE_POINT, ALL_COLLINEAR, BOUNDARY_COLLINEAR, COCIRCULAR_QUAD
  std::vector<std::size_t> indices;
};

struct GeneralPositionReport {
  bool ok = true;
  std::vector<PositionIssue> issues;

  bool has(const std::string& kind) const;
};

/// Exact checks for duplicates, all-collinear input, points in the relative
/// interior of a hull edge, and four cocircular points. Stops collecting
/// cocircular quadruples after `max_reported` of them.
GeneralPositionReport general_position_check(std::span<const RatPoint> points, std::size_t max_reported = 16);

struct IndexEdge {
  std::size_t a;
  std::size_t b;
  friend auto operator<=>(const IndexEdge&, const IndexEdge&) = default;
};

struct DelaunayResult {
  std::vector<IndexEdge> edges;                   // a < b, sorted
  std::vector<std::array<std::size_t, 3>> faces;  // sorted triples, sorted list
  std::vector<std::size_t> hull;                  // clockwise
  bool general_position = true;
};

/// Faces are exactly the triples whose circumcircle strictly excludes every
/// other point. Throws kNotGeneralPosition.
DelaunayResult delaunay(std::span<const RatPoint> points);

/// Rotation system by exact angular sort; outer face is the hull, labels are
/// index + 1.
PlaneTriangulation as_plane_triangulation(const DelaunayResult& result, std::span<const RatPoint> points);

}  // namespace delreal

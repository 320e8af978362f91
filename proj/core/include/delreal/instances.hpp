#pragma once

// Instances with known ground truth, robustness radii of exact solutions,
// and seeded perturbation harnesses.

#include <cstdint>
#include <span>
#include <vector>

#include "delreal/exact.hpp"
#include "delreal/interval.hpp"
#include "delreal/plane_graph.hpp"

namespace delreal {

struct Instance {
  std::vector<IntPoint> points;
  PlaneTriangulation graph;
};

/// Integer points uniform in [0, bound]^2, resampled until in general
/// position; the graph is their Delaunay triangulation. Throws
/// kBoundTooSmall after 1000 rejected samples, kInvalidArgument for n < 4.
Instance random_instance(int n, std::uint64_t seed, std::int64_t bound);

/// Vertex 1 joined to every other vertex, outer cycle 1, 2, ..., n clockwise.
PlaneTriangulation fan_triangulation(int n);

struct RadiusBounds {
  /// Enclosures of the minimum point distance, the minimum gap between a
  /// witness circle and a point off its edge, and the minimum distance from
  /// an outer edge's line to another point.
  Interval d_n;
  Interval d_c;
  Interval d_a;
  /// Certified lower bound of min(d_n, d_c, d_a) / 3.
  Rat r;
  /// Radius handed to perturbation tests; equal to r.
  Rat r_star;
};

/// Points and per-edge centers (sorted edge order) must satisfy the CONST
/// system of g exactly; throws kUnsatisfiedInput otherwise.
RadiusBounds radius_bounds(const PlaneTriangulation& g, std::span<const RatPoint> points,
                           std::span<const RatPoint> centers, int precision_bits = 128);

/// Each trial moves every point by a seeded offset of norm <= r, checked
/// exactly.
std::vector<std::vector<RatPoint>> perturb_within_radius(std::span<const RatPoint> points, const Rat& r,
                                                         std::uint64_t seed, int trials);

/// Each trial moves every coordinate by a seeded rational in
/// [-half_width, half_width]. The first four trials use the box corners.
std::vector<std::vector<RatPoint>> perturb_within_halfbox(std::span<const RatPoint> points, std::uint64_t seed,
                                                          int trials, const Rat& half_width = Rat(1, 2));

}  // namespace delreal

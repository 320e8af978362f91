#pragma once

// End-to-end realization: for each candidate outer face, search for points
// with the CONST system, lift them to a CONSTSQU solution by scaling and
// explicit witness discs, round to exact rationals, check exactly, scale to
// integers and certify against the brute-force Delaunay oracle.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "delreal/constraints.hpp"
#include "delreal/exact.hpp"
#include "delreal/plane_graph.hpp"
#include "delreal/solver.hpp"

namespace delreal {

struct RealizeConfig {
  SolverConfig solver;
  ConstraintOptions constraints;
  /// Accept a realization whose hull is the outer face traversed
  /// counterclockwise.
  bool allow_reflection = true;
  /// Wall-clock cap for the whole call in seconds; 0 means none.
  double time_budget = 60.0;
  /// Starting points for the given outer face (index v-1 holds vertex v).
  std::optional<std::vector<Point2d>> warm_start;
  /// Scaling attempts when lifting points to a CONSTSQU assignment.
  int max_lift_doublings = 80;
};

enum class RealizeStatus { kRealized, kUnknown, kInvalidInput };
std::string_view to_string(RealizeStatus status) noexcept;

struct RealizationCertificate {
  std::vector<IntPoint> points;
  /// Clockwise hull cycle of `points`, labels 1..n.
  Cycle outer_face;
  /// One exact center per edge, in sorted edge order.
  std::vector<RatPoint> witness_centers;
  std::vector<std::string> transcript;
};

struct AttemptLog {
  Cycle face;
  int restart = 0;
  SolveStatus solve_status = SolveStatus::kExhausted;
  double min_margin = 0.0;
  long iterations = 0;
  /// CERTIFIED, NOT_REALIZING, LIFT_FAILED, CERTIFY_FAILED or SKIPPED_BUDGET.
  std::string outcome;
};

struct RealizationResult {
  RealizeStatus status = RealizeStatus::kUnknown;
  std::optional<RealizationCertificate> certificate;
  /// The exactly satisfying CONSTSQU assignment behind the certificate.
  std::optional<ExactAssignment> constsqu_solution;
  /// Outer face used by the certificate's constraint systems.
  Cycle realized_face;
  ValidationReport validation;
  std::vector<AttemptLog> attempts;
};

RealizationResult realize(const PlaneTriangulation& g, const RealizeConfig& config = {});

/// Multiplies every coordinate by the least common multiple of all
/// denominators.
std::vector<IntPoint> scale_to_integers(std::span<const RatPoint> points);

struct CertifyReport {
  bool ok = false;
  /// NOT_GENERAL_POSITION, EDGE_MISMATCH, HULL_MISMATCH or WITNESS_FAIL.
  std::string failed_step;
  std::string detail;
  std::vector<Edge> missing;
  std::vector<Edge> extra;
  Cycle hull;
  bool reflected = false;
  std::vector<RatPoint> witness_centers;
  std::vector<std::string> transcript;
};

/// Checks, in order: general position, exact Delaunay edge set against
/// E(g) under identity labels, hull cycle against g's outer face, and one
/// witness disc per edge. Throws kInvalidArgument on a point-count mismatch.
CertifyReport certify(const PlaneTriangulation& g, std::span<const RatPoint> points, bool allow_reflection = true);

/// Exact witness centers for a point set whose Delaunay triangulation has
/// the given faces: the midpoint of the two incident circumcenters for
/// interior edges, the circumcenter pushed outward along the bisector for
/// hull edges. Indexed like g.edges().
std::vector<RatPoint> witness_centers(const PlaneTriangulation& g, std::span<const RatPoint> points,
                                      std::span<const std::array<std::size_t, 3>> faces);

/// Assignment of a CONST system from points and per-edge centers (sorted
/// edge order).
ExactAssignment const_assignment(const ConstraintSystem& system, const PlaneTriangulation& g,
                                 std::span<const RatPoint> points, std::span<const RatPoint> centers);

/// Lifts points that already realize g (with g's outer face) to an exactly
/// satisfying CONSTSQU assignment, with points in general position, by
/// uniform scaling. std::nullopt when no scale up to 2^max_doublings works.
std::optional<ExactAssignment> lift_to_constsqu(const PlaneTriangulation& g, const ConstraintSystem& constsqu,
                                                std::span<const Point2d> points, const RealizeConfig& config);

}  // namespace delreal

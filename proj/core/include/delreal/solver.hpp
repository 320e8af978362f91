#pragma once

// Penalty-method search for floating assignments of a constraint system,
// followed by bounded-denominator rounding to exact candidates. The search is
// a heuristic; exact evaluation decides what is accepted.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "delreal/constraints.hpp"
#include "delreal/plane_graph.hpp"

namespace delreal {

struct SolverConfig {
  /// Strict-inequality slack target; 0 selects the flavor default.
  double margin = 0.0;
  /// Descent iterations per restart.
  int max_iterations = 20000;
  int restarts = 8;
  std::uint64_t seed = 1;
  /// Line search: first trial step, sufficient-decrease constant, shrink factor.
  double initial_step = 1e-4;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;
  /// The loss is minimized against margin * overshoot so that iterates cross
  /// the acceptance threshold instead of creeping up to it.
  double overshoot = 2.0;
  int stagnation_window = 200;
  double stagnation_tolerance = 1e-12;
  /// Restart jitter relative to the minimum pairwise point distance.
  double jitter = 0.25;
  /// Wall-clock cap in seconds for solve(); 0 means none.
  double time_budget = 0.0;
  std::vector<std::int64_t> denominators{1, 10, 100, 1000, 10000, 1000000};
};

/// Throws kInvalidArgument.
void validate(const SolverConfig& config);

enum class SolveStatus { kSatisfiedFloat, kExhausted };
std::string_view to_string(SolveStatus status) noexcept;

struct SolveOutcome {
  SolveStatus status = SolveStatus::kExhausted;
  FloatAssignment best;
  /// Smallest strict slack of `best` (negative when violated).
  double final_min_margin = 0.0;
  double final_loss = 0.0;
  long iterations = 0;
  int restart_index = 0;
};

struct FloatCheck {
  bool satisfied = true;
  double min_strict_slack = 0.0;
  double min_nonstrict_slack = 0.0;
  double max_equality_residual = 0.0;
};

/// Flat term arrays for fast floating evaluation.
class CompiledSystem {
 public:
  explicit CompiledSystem(const ConstraintSystem& system);

  std::size_t variable_count() const { return variable_count_; }
  std::size_t constraint_count() const { return relation_.size(); }
  /// Loss value; the gradient is written when `gradient` is non-empty.
  double penalty(std::span<const double> x, double margin, std::span<double> gradient) const;
  /// SATISFIED_FLOAT test: strict slack >= margin, non-strict slack >= 0 and
  /// |equality| <= 1e-9 * max(1, max |x|^2).
  FloatCheck check(std::span<const double> x, double margin) const;
  double value(std::size_t constraint, std::span<const double> x) const;

 private:
  struct FlatTerm {
    std::int32_t a;
    std::int32_t b;
    double coefficient;
  };
  std::size_t variable_count_ = 0;
  std::vector<FlatTerm> terms_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Relation> relation_;
};

struct PenaltyResult {
  double loss = 0.0;
  std::map<VarId, double> gradient;
};

/// Sum of squared equality residuals plus squared hinge violations of
/// strict inequalities against `margin` (non-strict ones against 0).
/// Throws kMissingVariable.
PenaltyResult penalty(const ConstraintSystem& system, const FloatAssignment& a, double margin);

/// 1e-3 times the bounding-box area of the points for CONST systems, 1 for
/// CONSTSQU systems.
double default_margin(const ConstraintSystem& system, const FloatAssignment& a);

/// Points in the given positions; centers at the circumcenter of the
/// lexicographically smallest inner face on the edge, radii (if present) at
/// that circumradius plus 2.
FloatAssignment assignment_from_points(const PlaneTriangulation& g, const ConstraintSystem& system,
                                       std::span<const Point2d> points);

/// Tutte placement scaled to minimum pairwise distance 10, then
/// assignment_from_points(). Restart indices above 0 jitter the points; the
/// jitter is derived from config.seed + restart_index. A singular Tutte
/// system falls back to random interior points inside the outer polygon.
FloatAssignment initialize(const PlaneTriangulation& g, const ConstraintSystem& system, const SolverConfig& config,
                           int restart_index = 0);

/// One descent run from `start`: stops when the float check passes, on
/// stagnation, or after config.max_iterations.
SolveOutcome descend(const ConstraintSystem& system, const FloatAssignment& start, const SolverConfig& config,
                     int restart_index = 0);

/// descend() over initialize(restart) for restart = 0..config.restarts,
/// returning the first float-satisfied run or the lowest-loss one.
SolveOutcome solve(const ConstraintSystem& system, const PlaneTriangulation& g, const SolverConfig& config);

/// One exact assignment per configured denominator bound, in order.
std::vector<ExactAssignment> round_candidates(const FloatAssignment& a, const SolverConfig& config);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_uniform(std::uint64_t bits);

}  // namespace delreal

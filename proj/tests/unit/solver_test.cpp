#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "delreal/delaunay.hpp"
#include "delreal/error.hpp"
#include "delreal/instances.hpp"
#include "delreal/realizer.hpp"
#include "delreal/solver.hpp"
#include "fixtures.hpp"

namespace delreal {
namespace {

ConstraintSystem single(Relation rel) {
  Poly2 p;
  p.add(1, 0);
  p.canonicalize();
  return ConstraintSystem(Flavor::kConst, 0, {px(1)}, {{p, rel, {TagKind::kConTurn, {1, 1, 1}}}});
}

FloatAssignment at(double v) {
  FloatAssignment a;
  a.values[px(1)] = v;
  return a;
}

/// Central differences of the loss, one variable at a time.
double central_difference(const ConstraintSystem& s, FloatAssignment a, const VarId& id, double margin, double h) {
  const double v = a.values.at(id);
  a.values[id] = v + h;
  const double up = penalty(s, a, margin).loss;
  a.values[id] = v - h;
  const double down = penalty(s, a, margin).loss;
  return (up - down) / (2 * h);
}

TEST(Penalty, HingeAlgebra) {
  const PenaltyResult r = penalty(single(Relation::kGt), at(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(r.loss, 4.0);
  EXPECT_DOUBLE_EQ(r.gradient.at(px(1)), -4.0);
  EXPECT_DOUBLE_EQ(penalty(single(Relation::kGt), at(1.5), 1.0).loss, 0.0);
  EXPECT_DOUBLE_EQ(penalty(single(Relation::kLt), at(-0.5), 1.0).loss, 0.25);
  // Non-strict relations ignore the margin.
  EXPECT_DOUBLE_EQ(penalty(single(Relation::kGe), at(0.0), 1.0).loss, 0.0);
  EXPECT_DOUBLE_EQ(penalty(single(Relation::kLe), at(2.0), 1.0).loss, 4.0);
  const PenaltyResult eq = penalty(single(Relation::kEq), at(3.0), 1.0);
  EXPECT_DOUBLE_EQ(eq.loss, 9.0);
  EXPECT_DOUBLE_EQ(eq.gradient.at(px(1)), 6.0);
}

TEST(Penalty, MissingVariable) {
  try {
    penalty(build_const(testing::k4()), FloatAssignment{}, 1.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingVariable);
  }
}

TEST(Penalty, ZeroAtExactRealizationWithSlack) {
  // Scaled to integers small enough that every float evaluation is exact.
  std::vector<RatPoint> pts{make_point(0, 0), make_point(30, 0), make_point(0, 30), make_point(10, 10)};
  const PlaneTriangulation g = as_plane_triangulation(delaunay(pts), pts);
  auto centers = witness_centers(g, pts, delaunay(pts).faces);
  const Int d = common_denominator(centers);
  for (RatPoint& p : pts) p = {p.x * d, p.y * d};
  for (RatPoint& c : centers) c = {c.x * d, c.y * d};
  const ConstraintSystem s = build_const(g);
  const ExactAssignment exact = const_assignment(s, g, pts, centers);
  const EvaluationReport rep = evaluate(s, exact);
  ASSERT_TRUE(rep.satisfied);
  FloatAssignment f;
  for (const auto& [id, v] : exact.values) {
    ASSERT_EQ(v.get_den(), 1);
    ASSERT_LT(abs(v), Rat(1 << 20));
    f.values[id] = to_double(v);
  }
  const double margin = to_double(*rep.min_strict_margin);
  const PenaltyResult r = penalty(s, f, margin);
  EXPECT_EQ(r.loss, 0.0);
  for (const auto& [id, g] : r.gradient) EXPECT_EQ(g, 0.0) << var_name(id);
  EXPECT_GT(penalty(s, f, 2 * margin).loss, 0.0);
}

TEST(Penalty, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(41);
  int probes = 0;
  for (int t = 0; probes < 40; ++t) {
    const Instance inst = random_instance(4 + t % 4, 60 + static_cast<std::uint64_t>(t), 100);
    const ConstraintSystem s = t % 2 == 0 ? build_const(inst.graph) : build_constsqu(inst.graph);
    FloatAssignment a;
    for (const VarId& id : s.variables()) a.values[id] = 20.0 * unit_uniform(rng()) - 10.0;
    const double margin = 0.5 + unit_uniform(rng());
    const PenaltyResult r = penalty(s, a, margin);
    if (r.loss == 0.0) continue;
    ++probes;
    double gmax = 0.0;
    for (const auto& [id, g] : r.gradient) gmax = std::max(gmax, std::abs(g));
    for (const VarId& id : s.variables()) {
      const double fd = central_difference(s, a, id, margin, 1e-5);
      EXPECT_LE(std::abs(fd - r.gradient.at(id)), 1e-6 * std::max(gmax, 1.0)) << var_name(id);
    }
  }
}

TEST(Penalty, LossZeroIffFloatSatisfiedWithMargin) {
  std::mt19937_64 rng(42);
  const ConstraintSystem s = build_const(testing::quad_with_diagonal());
  const CompiledSystem compiled(s);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(s.variables().size());
    for (double& v : x) v = 10.0 * unit_uniform(rng()) - 5.0;
    const double margin = unit_uniform(rng());
    const double loss = compiled.penalty(x, margin, {});
    const FloatCheck fc = compiled.check(x, margin);
    bool strict_ok = true;
    for (std::size_t c = 0; c < compiled.constraint_count(); ++c) {
      const Relation rel = s.constraints()[c].relation;
      const double v = compiled.value(c, x);
      if (rel == Relation::kGt && v < margin) strict_ok = false;
      if (rel == Relation::kLt && -v < margin) strict_ok = false;
      if (rel == Relation::kEq && v != 0.0) strict_ok = false;
    }
    EXPECT_EQ(loss == 0.0, strict_ok);
    if (loss == 0.0) EXPECT_TRUE(fc.satisfied);
  }
}

TEST(Initialize, K4TriangleAndCentroid) {
  const PlaneTriangulation g = testing::k4();
  const ConstraintSystem s = build_const(g);
  const FloatAssignment a = initialize(g, s, SolverConfig{});
  auto p = [&](int v) { return Point2d{a.values.at(px(v)), a.values.at(py(v))}; };
  EXPECT_NEAR(p(4).x, (p(1).x + p(2).x + p(3).x) / 3, 1e-9);
  EXPECT_NEAR(p(4).y, (p(1).y + p(2).y + p(3).y) / 3, 1e-9);
  double dmin = 1e300;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) dmin = std::min(dmin, std::hypot(p(i).x - p(j).x, p(i).y - p(j).y));
  EXPECT_NEAR(dmin, 10.0, 1e-9);
  // Lexicographically smallest inner face through each edge.
  for (const Edge& e : g.edges()) {
    Cycle best;
    for (const Cycle& f : g.inner_faces()) {
      if (std::count(f.begin(), f.end(), e.u) && std::count(f.begin(), f.end(), e.v)) {
        Cycle sorted = f;
        std::sort(sorted.begin(), sorted.end());
        if (best.empty() || sorted < best) best = sorted;
      }
    }
    const Point2d c{a.values.at(cx(e.u, e.v)), a.values.at(cy(e.u, e.v))};
    for (Vertex v : best) {
      EXPECT_NEAR(std::hypot(c.x - p(v).x, c.y - p(v).y), std::hypot(c.x - p(best[0]).x, c.y - p(best[0]).y), 1e-9);
    }
  }
}

TEST(Initialize, FanRadiiAndDeterminism) {
  const PlaneTriangulation g = fan_triangulation(5);
  const ConstraintSystem s = build_constsqu(g);
  SolverConfig cfg;
  cfg.seed = 99;
  const FloatAssignment a = initialize(g, s, cfg, 2);
  const FloatAssignment b = initialize(g, s, cfg, 2);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(initialize(g, s, cfg, 0).values, a.values);
  const FloatAssignment c = initialize(g, s, cfg, 0);
  for (const Edge& e : g.edges()) {
    const Point2d center{c.values.at(cx(e.u, e.v)), c.values.at(cy(e.u, e.v))};
    const double d = std::hypot(center.x - c.values.at(px(e.u)), center.y - c.values.at(py(e.u)));
    EXPECT_NEAR(c.values.at(radius(e.u, e.v)), d + 2.0, 1e-9);
  }
}

TEST(Solve, WarmStartSatisfiedInZeroIterations) {
  const auto pts = testing::k4_points();
  const PlaneTriangulation g = as_plane_triangulation(delaunay(pts), pts);
  const ConstraintSystem s = build_const(g);
  const auto centers = witness_centers(g, pts, delaunay(pts).faces);
  FloatAssignment start;
  for (const auto& [id, v] : const_assignment(s, g, pts, centers).values) start.values[id] = to_double(v);
  SolverConfig cfg;
  cfg.margin = 1e-3;
  const SolveOutcome out = descend(s, start, cfg);
  EXPECT_EQ(out.status, SolveStatus::kSatisfiedFloat);
  EXPECT_EQ(out.iterations, 0);
}

TEST(Solve, ZeroIterationBudgetExhausts) {
  const Instance inst = random_instance(9, 5, 1000);
  const ConstraintSystem s = build_const(inst.graph);
  SolverConfig cfg;
  cfg.max_iterations = 0;
  cfg.restarts = 0;
  FloatAssignment bad = initialize(inst.graph, s, cfg);
  for (auto& [id, v] : bad.values) v = 0.0;
  const SolveOutcome out = descend(s, bad, cfg);
  EXPECT_EQ(out.status, SolveStatus::kExhausted);
  EXPECT_EQ(out.iterations, 0);
}

TEST(Solve, ColdStartSucceedsAndIsDeterministic) {
  for (int t = 0; t < 4; ++t) {
    const Instance inst = random_instance(6 + 2 * t, 200 + static_cast<std::uint64_t>(t), 1000);
    const ConstraintSystem s = build_const(inst.graph);
    SolverConfig cfg;
    const SolveOutcome a = solve(s, inst.graph, cfg);
    const SolveOutcome b = solve(s, inst.graph, cfg);
    EXPECT_EQ(a.status, SolveStatus::kSatisfiedFloat);
    EXPECT_EQ(a.best.values, b.best.values);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.restart_index, b.restart_index);
    EXPECT_GT(a.final_min_margin, 0.0);
  }
}

TEST(Solve, DescentDoesNotIncreaseLoss) {
  const Instance inst = random_instance(10, 8, 1000);
  const ConstraintSystem s = build_const(inst.graph);
  SolverConfig cfg;
  const FloatAssignment start = initialize(inst.graph, s, cfg, 3);
  const double margin = default_margin(s, start);
  cfg.margin = margin;
  for (int budget : {1, 5, 25, 125}) {
    cfg.max_iterations = budget;
    const SolveOutcome out = descend(s, start, cfg);
    EXPECT_LE(penalty(s, out.best, margin * cfg.overshoot).loss, penalty(s, start, margin * cfg.overshoot).loss);
  }
}

TEST(RoundCandidates, StreamPerDenominator) {
  FloatAssignment a;
  a.values[px(1)] = 0.3333333333;
  a.values[py(1)] = 0.25;
  SolverConfig cfg;
  cfg.denominators = {10, 1000};
  const auto out = round_candidates(a, cfg);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].values.at(px(1)), make_rat(1, 3));
  EXPECT_EQ(out[1].values.at(px(1)), make_rat(1, 3));
  cfg.denominators = {4, 8, 16};
  const auto exact = round_candidates(a, cfg);
  EXPECT_EQ(exact.size(), 3u);
  EXPECT_EQ(exact[0].values.at(py(1)), make_rat(1, 4));
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.denominators = {10, 5};
  EXPECT_THROW(validate(cfg), Error);
  cfg = {};
  cfg.margin = -1;
  EXPECT_THROW(validate(cfg), Error);
  cfg = {};
  cfg.backtrack = 1.0;
  EXPECT_THROW(validate(cfg), Error);
}

TEST(UnitUniform, Range) {
  EXPECT_EQ(unit_uniform(0), 0.0);
  EXPECT_LT(unit_uniform(~0ULL), 1.0);
}

}  // namespace
}  // namespace delreal

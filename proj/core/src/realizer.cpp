#include "delreal/realizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "delreal/delaunay.hpp"
#include "delreal/error.hpp"

namespace delreal {

std::string_view to_string(RealizeStatus status) noexcept {
  switch (status) {
    case RealizeStatus::kRealized: return "REALIZED";
    case RealizeStatus::kUnknown: return "UNKNOWN";
    case RealizeStatus::kInvalidInput: return "INVALID_INPUT";
  }
  return "?";
}

std::vector<IntPoint> scale_to_integers(std::span<const RatPoint> points) {
  const Int beta = common_denominator(points);
  std::vector<IntPoint> out;
  out.reserve(points.size());
  for (const RatPoint& p : points) {
    const Rat x = p.x * beta, y = p.y * beta;
    out.push_back({x.get_num(), y.get_num()});
  }
  return out;
}

namespace {

std::string cycle_text(const Cycle& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

std::vector<std::array<std::size_t, 3>> incident_faces(std::span<const std::array<std::size_t, 3>> faces,
                                                       std::size_t a, std::size_t b) {
  std::vector<std::array<std::size_t, 3>> out;
  for (const auto& f : faces) {
    const bool has_a = f[0] == a || f[1] == a || f[2] == a;
    const bool has_b = f[0] == b || f[1] == b || f[2] == b;
    if (has_a && has_b) out.push_back(f);
  }
  return out;
}

std::size_t third(const std::array<std::size_t, 3>& f, std::size_t a, std::size_t b) {
  for (std::size_t v : f) {
    if (v != a && v != b) return v;
  }
  return f[0];
}

}  // namespace

std::vector<RatPoint> witness_centers(const PlaneTriangulation& g, std::span<const RatPoint> points,
                                      std::span<const std::array<std::size_t, 3>> faces) {
  std::vector<RatPoint> out;
  out.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<std::size_t>(e.u - 1), b = static_cast<std::size_t>(e.v - 1);
    const RatPoint& pa = points[a];
    const RatPoint& pb = points[b];
    const auto inc = incident_faces(faces, a, b);
    if (inc.size() >= 2) {
      const RatPoint c1 = circumcenter(points[inc[0][0]], points[inc[0][1]], points[inc[0][2]]);
      const RatPoint c2 = circumcenter(points[inc[1][0]], points[inc[1][1]], points[inc[1][2]]);
      out.push_back({(c1.x + c2.x) / 2, (c1.y + c2.y) / 2});
    } else if (inc.size() == 1) {
      const RatPoint c = circumcenter(points[inc[0][0]], points[inc[0][1]], points[inc[0][2]]);
      const RatPoint& pk = points[third(inc[0], a, b)];
      Rat nx = -(pb.y - pa.y), ny = pb.x - pa.x;
      if (nx * (pk.x - pa.x) + ny * (pk.y - pa.y) > 0) {
        nx = -nx;
        ny = -ny;
      }
      out.push_back({c.x + nx, c.y + ny});
    } else {
      out.push_back({(pa.x + pb.x) / 2, (pa.y + pb.y) / 2});
    }
  }
  return out;
}

CertifyReport certify(const PlaneTriangulation& g, std::span<const RatPoint> points, bool allow_reflection) {
  if (points.size() != static_cast<std::size_t>(g.n())) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(g.n()) + " points, got " +
                                                 std::to_string(points.size()));
  }
  CertifyReport report;
  const auto fail = [&](std::string step, std::string detail) {
    report.ok = false;
    report.failed_step = std::move(step);
    report.detail = std::move(detail);
    return report;
  };

  const GeneralPositionReport gp = general_position_check(points);
  if (!gp.ok) {
    std::string detail;
    for (const PositionIssue& issue : gp.issues) {
      detail += (detail.empty() ? "" : "; ") + issue.kind;
      for (std::size_t i : issue.indices) detail += " " + std::to_string(i + 1);
    }
    return fail("NOT_GENERAL_POSITION", detail);
  }
  report.transcript.push_back("GENERAL_POSITION ok: " + std::to_string(points.size()) + " points");

  const DelaunayResult dt = delaunay(points);
  report.transcript.push_back("DELAUNAY ok: " + std::to_string(dt.edges.size()) + " edges, " +
                              std::to_string(dt.faces.size()) + " bounded faces");

  std::vector<Edge> dt_edges;
  for (const IndexEdge& e : dt.edges) dt_edges.push_back(make_edge(static_cast<Vertex>(e.a + 1), static_cast<Vertex>(e.b + 1)));
  std::sort(dt_edges.begin(), dt_edges.end());
  std::set_difference(g.edges().begin(), g.edges().end(), dt_edges.begin(), dt_edges.end(),
                      std::back_inserter(report.missing));
  std::set_difference(dt_edges.begin(), dt_edges.end(), g.edges().begin(), g.edges().end(),
                      std::back_inserter(report.extra));
  if (!report.missing.empty() || !report.extra.empty()) {
    std::string detail = "missing";
    for (const Edge& e : report.missing) detail += " " + std::to_string(e.u) + "-" + std::to_string(e.v);
    detail += "; extra";
    for (const Edge& e : report.extra) detail += " " + std::to_string(e.u) + "-" + std::to_string(e.v);
    return fail("EDGE_MISMATCH", detail);
  }
  report.transcript.push_back("EDGE_SET ok: " + std::to_string(dt_edges.size()) + " edges match");

  for (std::size_t i : dt.hull) report.hull.push_back(static_cast<Vertex>(i + 1));
  if (same_cyclic_order(report.hull, g.outer_face())) {
    report.transcript.push_back("HULL ok: " + cycle_text(normalize_cycle(report.hull)) + " clockwise");
  } else if (allow_reflection && same_cycle_any_orientation(report.hull, g.outer_face())) {
    report.reflected = true;
    report.transcript.push_back("HULL ok: " + cycle_text(normalize_cycle(report.hull)) + " reflected");
  } else {
    return fail("HULL_MISMATCH", "hull " + cycle_text(normalize_cycle(report.hull)) + " vs outer face " +
                                     cycle_text(normalize_cycle(g.outer_face())));
  }

  report.witness_centers = witness_centers(g, points, dt.faces);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    const RatPoint& c = report.witness_centers[e];
    const Rat r2 = dist_sq(c, points[static_cast<std::size_t>(edge.u - 1)]);
    bool ok = dist_sq(c, points[static_cast<std::size_t>(edge.v - 1)]) == r2;
    for (std::size_t k = 0; ok && k < points.size(); ++k) {
      if (static_cast<Vertex>(k + 1) == edge.u || static_cast<Vertex>(k + 1) == edge.v) continue;
      ok = dist_sq(c, points[k]) > r2;
    }
    if (!ok) return fail("WITNESS_FAIL", "edge " + std::to_string(edge.u) + "-" + std::to_string(edge.v));
  }
  report.transcript.push_back("WITNESS ok: " + std::to_string(g.edges().size()) + " discs");
  report.ok = true;
  return report;
}

ExactAssignment const_assignment(const ConstraintSystem& system, const PlaneTriangulation& g,
                                 std::span<const RatPoint> points, std::span<const RatPoint> centers) {
  if (centers.size() != g.edges().size() || points.size() != static_cast<std::size_t>(g.n())) {
    throw Error(ErrorCode::kInvalidArgument, "point or center count does not match the graph");
  }
  ExactAssignment a;
  a.flavor = system.flavor();
  for (const VarId& id : system.variables()) {
    switch (id.kind) {
      case VarKind::kPX: a.values.emplace(id, points[static_cast<std::size_t>(id.i - 1)].x); break;
      case VarKind::kPY: a.values.emplace(id, points[static_cast<std::size_t>(id.i - 1)].y); break;
      case VarKind::kCX:
      case VarKind::kCY: {
        const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), make_edge(id.i, id.j));
        const RatPoint& c = centers[static_cast<std::size_t>(it - g.edges().begin())];
        a.values.emplace(id, id.kind == VarKind::kCX ? c.x : c.y);
        break;
      }
      case VarKind::kR: throw Error(ErrorCode::kInvalidArgument, "radius variables need a CONSTSQU lift");
    }
  }
  return a;
}

namespace {

struct FloatDisc {
  Point2d center;
  double radius;
  double gap;  // distance from the circle to the nearest other point
};

Point2d float_circumcenter(Point2d a, Point2d b, Point2d c) {
  const double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return {a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

std::vector<FloatDisc> float_witnesses(const PlaneTriangulation& g, std::span<const Point2d> p) {
  std::vector<std::array<std::size_t, 3>> faces;
  for (const Cycle& f : g.inner_faces()) {
    std::array<std::size_t, 3> t{static_cast<std::size_t>(f[0] - 1), static_cast<std::size_t>(f[1] - 1),
                                 static_cast<std::size_t>(f[2] - 1)};
    std::sort(t.begin(), t.end());
    faces.push_back(t);
  }
  std::vector<FloatDisc> out;
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<std::size_t>(e.u - 1), b = static_cast<std::size_t>(e.v - 1);
    const auto inc = incident_faces(faces, a, b);
    Point2d c{(p[a].x + p[b].x) / 2, (p[a].y + p[b].y) / 2};
    const auto cc = [&](const std::array<std::size_t, 3>& f) { return float_circumcenter(p[f[0]], p[f[1]], p[f[2]]); };
    if (inc.size() >= 2) {
      const Point2d c1 = cc(inc[0]), c2 = cc(inc[1]);
      c = {(c1.x + c2.x) / 2, (c1.y + c2.y) / 2};
    } else if (inc.size() == 1) {
      const Point2d c1 = cc(inc[0]);
      const Point2d pk = p[third(inc[0], a, b)];
      double nx = -(p[b].y - p[a].y), ny = p[b].x - p[a].x;
      if (nx * (pk.x - p[a].x) + ny * (pk.y - p[a].y) > 0) {
        nx = -nx;
        ny = -ny;
      }
      c = {c1.x + nx, c1.y + ny};
    }
    const double radius = std::max(std::hypot(p[a].x - c.x, p[a].y - c.y), std::hypot(p[b].x - c.x, p[b].y - c.y));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k == a || k == b) continue;
      gap = std::min(gap, std::hypot(p[k].x - c.x, p[k].y - c.y) - radius);
    }
    out.push_back({c, radius, gap});
  }
  return out;
}

/// Exact test that the points realize g with g's outer face as hull, in
/// either orientation. Returns 1 (clockwise), -1 (mirrored) or 0.
int realizes(const PlaneTriangulation& g, std::span<const Point2d> pts) {
  std::vector<RatPoint> exact;
  exact.reserve(pts.size());
  for (const Point2d& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return 0;
    exact.push_back({Rat(p.x), Rat(p.y)});
  }
  const CertifyReport report = certify(g, exact, true);
  if (!report.ok) return 0;
  return report.reflected ? -1 : 1;
}

std::vector<Point2d> points_of(const PlaneTriangulation& g, const FloatAssignment& a) {
  std::vector<Point2d> pts(static_cast<std::size_t>(g.n()));
  for (Vertex v = 1; v <= g.n(); ++v) {
    pts[static_cast<std::size_t>(v - 1)] = {a.values.at(px(v)), a.values.at(py(v))};
  }
  return pts;
}

std::vector<RatPoint> exact_points_of(const PlaneTriangulation& g, const ExactAssignment& a) {
  std::vector<RatPoint> pts;
  for (Vertex v = 1; v <= g.n(); ++v) pts.push_back({a.values.at(px(v)), a.values.at(py(v))});
  return pts;
}

}  // namespace

std::optional<ExactAssignment> lift_to_constsqu(const PlaneTriangulation& g, const ConstraintSystem& constsqu,
                                                std::span<const Point2d> points, const RealizeConfig& config) {
  std::vector<Point2d> base(points.begin(), points.end());
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      dmin = std::min(dmin, std::hypot(base[i].x - base[j].x, base[i].y - base[j].y));
    }
  }
  if (!(dmin > 0.0) || !std::isfinite(dmin)) return std::nullopt;
  for (Point2d& p : base) p = {p.x * 10.0 / dmin, p.y * 10.0 / dmin};
  const std::vector<FloatDisc> discs = float_witnesses(g, base);
  const CompiledSystem compiled(constsqu);

  const std::int32_t r_index = constsqu.index_of(radius(g.edges()[0].u, g.edges()[0].v));
  if (r_index < 0) throw Error(ErrorCode::kInvalidArgument, "lift needs a CONSTSQU system");

  for (int k = 0; k <= config.max_lift_doublings; ++k) {
    const double alpha = std::ldexp(1.0, k);
    std::vector<double> x(constsqu.variables().size());
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
      const VarId& id = constsqu.variables()[idx];
      if (id.kind == VarKind::kPX || id.kind == VarKind::kPY) {
        const Point2d& p = base[static_cast<std::size_t>(id.i - 1)];
        x[idx] = alpha * (id.kind == VarKind::kPX ? p.x : p.y);
        continue;
      }
      const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), make_edge(id.i, id.j));
      const FloatDisc& d = discs[static_cast<std::size_t>(it - g.edges().begin())];
      if (id.kind == VarKind::kCX) x[idx] = alpha * d.center.x;
      if (id.kind == VarKind::kCY) x[idx] = alpha * d.center.y;
      if (id.kind == VarKind::kR) x[idx] = alpha * (d.radius + d.gap / 2);
    }
    if (!compiled.check(x, 1.0).satisfied) continue;
    const FloatAssignment fa = make_assignment(constsqu, std::span<const double>(x));
    for (const ExactAssignment& candidate : round_candidates(fa, config.solver)) {
      if (!evaluate(constsqu, candidate, false).satisfied) continue;
      // The robust system tolerates four cocircular points around a
      // non-empty circle; the oracle does not, so gate on it here.
      if (general_position_check(exact_points_of(g, candidate), 1).ok) return candidate;
    }
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

RealizationResult small_instance(const PlaneTriangulation& g) {
  RealizationResult result;
  const int n = g.n();
  const auto expected_edges = static_cast<std::size_t>(n * (n - 1) / 2);
  if (n < 1 || g.edges().size() != expected_edges || (n == 3 && g.outer_face().size() != 3)) {
    result.status = RealizeStatus::kInvalidInput;
    result.validation.ok = false;
    result.validation.violations.push_back({"TOO_SMALL", "graph on fewer than four vertices is not complete", {}});
    return result;
  }
  std::vector<IntPoint> pts(static_cast<std::size_t>(n), IntPoint{0, 0});
  if (n == 2) pts[1] = {1, 0};
  if (n == 3) {
    // (0,0) -> (0,1) -> (1,0) turns right, so the outer cycle stays clockwise.
    const Cycle& f = g.outer_face();
    pts[static_cast<std::size_t>(f[1] - 1)] = {0, 1};
    pts[static_cast<std::size_t>(f[2] - 1)] = {1, 0};
  }
  const std::vector<RatPoint> rp = to_rat_points(pts);
  std::vector<std::array<std::size_t, 3>> faces;
  if (n == 3) faces.push_back({0, 1, 2});
  RealizationCertificate cert;
  cert.points = pts;
  cert.outer_face = n == 3 ? normalize_cycle(g.outer_face()) : Cycle{};
  for (int v = 1; v <= n && n < 3; ++v) cert.outer_face.push_back(v);
  cert.witness_centers = witness_centers(g, rp, faces);
  cert.transcript.push_back("SMALL_INSTANCE ok: direct construction for n=" + std::to_string(n));
  result.status = RealizeStatus::kRealized;
  result.certificate = std::move(cert);
  result.realized_face = g.outer_face();
  return result;
}

}  // namespace

RealizationResult realize(const PlaneTriangulation& g, const RealizeConfig& config) {
  validate(config.solver);
  if (g.n() <= 3) return small_instance(g);

  RealizationResult result;
  result.validation = validate_triangulation(g);
  if (!result.validation.ok) {
    result.status = RealizeStatus::kInvalidInput;
    return result;
  }

  const auto start = Clock::now();
  const auto out_of_time = [&] {
    return config.time_budget > 0.0 &&
           std::chrono::duration<double>(Clock::now() - start).count() >= config.time_budget;
  };

  struct FaceState {
    PlaneTriangulation graph;
    ConstraintSystem constant;
    std::optional<ConstraintSystem> robust;
  };
  std::vector<FaceState> faces;
  for (const Cycle& f : candidate_outer_faces(g)) {
    PlaneTriangulation gf = reembed_with_outer_face(g, f);
    ConstraintSystem sys = build_const(gf, config.constraints);
    faces.push_back({std::move(gf), std::move(sys), std::nullopt});
  }

  for (int restart = 0; restart <= config.solver.restarts; ++restart) {
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      if (out_of_time()) {
        result.status = RealizeStatus::kUnknown;
        return result;
      }
      FaceState& face = faces[fi];
      const bool warm = restart == 0 && config.warm_start && fi == 0;
      const FloatAssignment init =
          warm ? assignment_from_points(face.graph, face.constant, *config.warm_start)
               : initialize(face.graph, face.constant, config.solver, restart);
      SolverConfig run = config.solver;
      if (config.time_budget > 0.0) {
        run.time_budget =
            std::max(1e-3, config.time_budget - std::chrono::duration<double>(Clock::now() - start).count());
      }
      const SolveOutcome outcome = descend(face.constant, init, run, restart);

      AttemptLog log{face.graph.outer_face(), restart, outcome.status, outcome.final_min_margin, outcome.iterations,
                     ""};
      std::vector<Point2d> pts = points_of(face.graph, outcome.best);
      const int orientation = realizes(face.graph, pts);
      if (orientation == 0) {
        log.outcome = "NOT_REALIZING";
        result.attempts.push_back(std::move(log));
        continue;
      }
      if (orientation < 0) {
        for (Point2d& p : pts) p.x = -p.x;
      }
      if (!face.robust) face.robust = build_constsqu(face.graph, config.constraints);
      const std::optional<ExactAssignment> lifted = lift_to_constsqu(face.graph, *face.robust, pts, config);
      if (!lifted) {
        log.outcome = "LIFT_FAILED";
        result.attempts.push_back(std::move(log));
        continue;
      }
      const std::vector<IntPoint> ints = scale_to_integers(exact_points_of(face.graph, *lifted));
      const CertifyReport report = certify(face.graph, to_rat_points(ints), config.allow_reflection);
      if (!report.ok) {
        log.outcome = "CERTIFY_FAILED";
        result.attempts.push_back(std::move(log));
        continue;
      }
      log.outcome = "CERTIFIED";
      result.attempts.push_back(std::move(log));
      RealizationCertificate cert;
      cert.points = ints;
      cert.outer_face = normalize_cycle(report.hull);
      cert.witness_centers = report.witness_centers;
      cert.transcript = report.transcript;
      result.status = RealizeStatus::kRealized;
      result.certificate = std::move(cert);
      result.constsqu_solution = *lifted;
      result.realized_face = face.graph.outer_face();
      return result;
    }
  }
  result.status = RealizeStatus::kUnknown;
  return result;
}

}  // namespace delreal

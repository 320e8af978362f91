#include "delreal/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "delreal/error.hpp"

namespace delreal {

void validate(const SolverConfig& config) {
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (config.margin < 0.0 || !std::isfinite(config.margin)) bad("margin must be finite and non-negative");
  if (config.max_iterations < 0) bad("max_iterations must be non-negative");
  if (config.restarts < 0) bad("restarts must be non-negative");
  if (!(config.initial_step > 0.0)) bad("initial_step must be positive");
  if (!(config.backtrack > 0.0 && config.backtrack < 1.0)) bad("backtrack must lie in (0, 1)");
  if (!(config.overshoot >= 1.0)) bad("overshoot must be at least 1");
  if (config.stagnation_window < 1) bad("stagnation_window must be positive");
  if (config.denominators.empty()) bad("at least one rounding denominator is required");
  for (std::size_t i = 0; i < config.denominators.size(); ++i) {
    if (config.denominators[i] < 1) bad("denominators must be positive");
    if (i > 0 && config.denominators[i] <= config.denominators[i - 1]) bad("denominators must be ascending");
  }
}

std::string_view to_string(SolveStatus status) noexcept {
  return status == SolveStatus::kSatisfiedFloat ? "SATISFIED_FLOAT" : "EXHAUSTED";
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

CompiledSystem::CompiledSystem(const ConstraintSystem& system) : variable_count_(system.variables().size()) {
  offsets_.reserve(system.constraints().size() + 1);
  relation_.reserve(system.constraints().size());
  offsets_.push_back(0);
  for (const Constraint& c : system.constraints()) {
    for (const Term& t : c.poly.terms()) {
      terms_.push_back({t.monomial.a, t.monomial.b, static_cast<double>(t.coefficient)});
    }
    offsets_.push_back(static_cast<std::uint32_t>(terms_.size()));
    relation_.push_back(c.relation);
  }
}

double CompiledSystem::value(std::size_t constraint, std::span<const double> x) const {
  double v = 0.0;
  for (std::uint32_t t = offsets_[constraint]; t < offsets_[constraint + 1]; ++t) {
    const FlatTerm& term = terms_[t];
    const double xa = term.a >= 0 ? x[static_cast<std::size_t>(term.a)] : 1.0;
    const double xb = term.b >= 0 ? x[static_cast<std::size_t>(term.b)] : 1.0;
    v += term.coefficient * xa * xb;
  }
  return v;
}

namespace {

/// Orients a constraint value so that positive means satisfied.
double signed_slack(Relation relation, double v) {
  return relation == Relation::kLt || relation == Relation::kLe ? -v : v;
}

}  // namespace

double CompiledSystem::penalty(std::span<const double> x, double margin, std::span<double> gradient) const {
  const bool want_gradient = !gradient.empty();
  if (want_gradient) std::fill(gradient.begin(), gradient.end(), 0.0);
  double loss = 0.0;
  for (std::size_t c = 0; c < relation_.size(); ++c) {
    const double v = value(c, x);
    // d loss / d v
    double weight;
    if (relation_[c] == Relation::kEq) {
      loss += v * v;
      weight = 2.0 * v;
    } else {
      const double target = is_strict(relation_[c]) ? margin : 0.0;
      const double h = target - signed_slack(relation_[c], v);
      if (h <= 0.0) continue;
      loss += h * h;
      weight = relation_[c] == Relation::kLt || relation_[c] == Relation::kLe ? 2.0 * h : -2.0 * h;
    }
    if (!want_gradient || weight == 0.0) continue;
    for (std::uint32_t t = offsets_[c]; t < offsets_[c + 1]; ++t) {
      const FlatTerm& term = terms_[t];
      const double w = weight * term.coefficient;
      if (term.a >= 0) {
        gradient[static_cast<std::size_t>(term.a)] += w * x[static_cast<std::size_t>(term.b)];
        gradient[static_cast<std::size_t>(term.b)] += w * x[static_cast<std::size_t>(term.a)];
      } else if (term.b >= 0) {
        gradient[static_cast<std::size_t>(term.b)] += w;
      }
    }
  }
  return loss;
}

FloatCheck CompiledSystem::check(std::span<const double> x, double margin) const {
  FloatCheck result;
  result.min_strict_slack = std::numeric_limits<double>::infinity();
  result.min_nonstrict_slack = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, v * v);
  const double eq_tolerance = 1e-9 * scale;
  for (std::size_t c = 0; c < relation_.size(); ++c) {
    const double v = value(c, x);
    if (!std::isfinite(v)) {
      result.satisfied = false;
      result.min_strict_slack = -std::numeric_limits<double>::infinity();
      continue;
    }
    if (relation_[c] == Relation::kEq) {
      result.max_equality_residual = std::max(result.max_equality_residual, std::abs(v));
      if (std::abs(v) > eq_tolerance) result.satisfied = false;
    } else if (is_strict(relation_[c])) {
      const double s = signed_slack(relation_[c], v);
      result.min_strict_slack = std::min(result.min_strict_slack, s);
      if (!(s >= margin)) result.satisfied = false;
    } else {
      const double s = signed_slack(relation_[c], v);
      result.min_nonstrict_slack = std::min(result.min_nonstrict_slack, s);
      if (!(s >= 0.0)) result.satisfied = false;
    }
  }
  return result;
}

PenaltyResult penalty(const ConstraintSystem& system, const FloatAssignment& a, double margin) {
  const std::vector<double> x = dense_values(system, a);
  const CompiledSystem compiled(system);
  std::vector<double> grad(x.size());
  PenaltyResult result;
  result.loss = compiled.penalty(x, margin, grad);
  for (std::size_t i = 0; i < x.size(); ++i) result.gradient.emplace(system.variables()[i], grad[i]);
  return result;
}

double default_margin(const ConstraintSystem& system, const FloatAssignment& a) {
  if (system.flavor() == Flavor::kConstSqu) return 1.0;
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const auto& [id, v] : a.values) {
    if (id.kind == VarKind::kPX) {
      min_x = std::min(min_x, v);
      max_x = std::max(max_x, v);
    } else if (id.kind == VarKind::kPY) {
      min_y = std::min(min_y, v);
      max_y = std::max(max_y, v);
    }
  }
  const double area = (max_x - min_x) * (max_y - min_y);
  return area > 0.0 && std::isfinite(area) ? 1e-3 * area : 1e-3;
}

namespace {

struct Circle {
  Point2d center;
  double radius;
};

Circle float_circumcircle(Point2d a, Point2d b, Point2d c) {
  const double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (d == 0.0 || !std::isfinite(d)) {
    const Point2d mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    return {mid, std::hypot(a.x - mid.x, a.y - mid.y)};
  }
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const Point2d center{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  return {center, std::hypot(a.x - center.x, a.y - center.y)};
}

double min_pairwise_distance(std::span<const Point2d> pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    }
  }
  return best;
}

std::vector<Point2d> random_interior_fallback(const PlaneTriangulation& g, std::mt19937_64& rng) {
  const Cycle& outer = g.outer_face();
  const auto m = static_cast<int>(outer.size());
  std::vector<Point2d> pos(static_cast<std::size_t>(g.n()));
  for (int k = 0; k < m; ++k) {
    const double angle = std::numbers::pi / 2 - 2 * std::numbers::pi * k / m;
    pos[static_cast<std::size_t>(outer[static_cast<std::size_t>(k)] - 1)] = {std::cos(angle), std::sin(angle)};
  }
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (g.on_outer_face(v)) continue;
    // A convex combination with positive weights lies strictly inside.
    double total = 0.0;
    Point2d p{0.0, 0.0};
    for (Vertex u : outer) {
      const double w = 0.05 + unit_uniform(rng());
      total += w;
      p.x += w * pos[static_cast<std::size_t>(u - 1)].x;
      p.y += w * pos[static_cast<std::size_t>(u - 1)].y;
    }
    pos[static_cast<std::size_t>(v - 1)] = {p.x / total, p.y / total};
  }
  return pos;
}

/// Each DIS_EQ center, written as midpoint + s * rot90(P_j - P_i), so the
/// equality holds identically and the search runs over the points and s.
struct Bisector {
  std::size_t xi, yi, xj, yj, cx, cy;
};

class Reduced {
 public:
  explicit Reduced(const ConstraintSystem& system) {
    const std::size_t dim = system.variables().size();
    std::vector<char> is_center(dim, 0);
    for (const Constraint& c : system.constraints()) {
      if (c.tag.kind != TagKind::kDisEq) continue;
      const Vertex i = c.tag.args[0], j = c.tag.args[1];
      const auto at = [&](const VarId& id) {
        const std::int32_t k = system.index_of(id);
        if (k < 0) throw Error(ErrorCode::kMissingVariable, var_name(id));
        return static_cast<std::size_t>(k);
      };
      const Bisector b{at(px(i)), at(py(i)), at(px(j)), at(py(j)), at(cx(i, j)), at(cy(i, j))};
      if (is_center[b.cx] || is_center[b.cy]) continue;
      is_center[b.cx] = is_center[b.cy] = 1;
      bisectors_.push_back(b);
    }
    slot_.assign(dim, 0);
    for (std::size_t k = 0; k < dim; ++k) {
      if (is_center[k]) continue;
      slot_[k] = free_.size();
      free_.push_back(k);
    }
    dim_ = free_.size() + bisectors_.size();
  }

  std::size_t dim() const { return dim_; }

  void expand(std::span<const double> z, std::span<double> x) const {
    for (std::size_t k = 0; k < free_.size(); ++k) x[free_[k]] = z[k];
    for (std::size_t e = 0; e < bisectors_.size(); ++e) {
      const Bisector& b = bisectors_[e];
      const double s = z[free_.size() + e];
      x[b.cx] = (x[b.xi] + x[b.xj]) / 2 - s * (x[b.yj] - x[b.yi]);
      x[b.cy] = (x[b.yi] + x[b.yj]) / 2 + s * (x[b.xj] - x[b.xi]);
    }
  }

  /// Orthogonal projection of each center onto its bisector.
  std::vector<double> contract(std::span<const double> x) const {
    std::vector<double> z(dim_);
    for (std::size_t k = 0; k < free_.size(); ++k) z[k] = x[free_[k]];
    for (std::size_t e = 0; e < bisectors_.size(); ++e) {
      const Bisector& b = bisectors_[e];
      const double nx = -(x[b.yj] - x[b.yi]), ny = x[b.xj] - x[b.xi];
      const double n2 = nx * nx + ny * ny;
      const double mx = (x[b.xi] + x[b.xj]) / 2, my = (x[b.yi] + x[b.yj]) / 2;
      z[free_.size() + e] = n2 > 0.0 ? ((x[b.cx] - mx) * nx + (x[b.cy] - my) * ny) / n2 : 0.0;
    }
    return z;
  }

  /// Chain rule from the full gradient to the reduced one.
  void pull_back(std::span<const double> x, std::span<const double> z, std::span<const double> gx,
                 std::span<double> gz) const {
    for (std::size_t k = 0; k < free_.size(); ++k) gz[k] = gx[free_[k]];
    for (std::size_t e = 0; e < bisectors_.size(); ++e) {
      const Bisector& b = bisectors_[e];
      const double s = z[free_.size() + e];
      const double gcx = gx[b.cx], gcy = gx[b.cy];
      gz[slot_[b.xi]] += gcx / 2 - gcy * s;
      gz[slot_[b.yi]] += gcx * s + gcy / 2;
      gz[slot_[b.xj]] += gcx / 2 + gcy * s;
      gz[slot_[b.yj]] += -gcx * s + gcy / 2;
      gz[free_.size() + e] = -gcx * (x[b.yj] - x[b.yi]) + gcy * (x[b.xj] - x[b.xi]);
    }
  }

 private:
  std::vector<Bisector> bisectors_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> slot_;
  std::size_t dim_ = 0;
};

using Clock = std::chrono::steady_clock;

}  // namespace

FloatAssignment assignment_from_points(const PlaneTriangulation& g, const ConstraintSystem& system,
                                       std::span<const Point2d> points) {
  if (points.size() != static_cast<std::size_t>(g.n())) {
    throw Error(ErrorCode::kInvalidArgument, "point count does not match the graph");
  }
  const std::vector<Cycle> inner = g.inner_faces();
  std::map<Edge, Circle> circle;
  for (const Edge& e : g.edges()) {
    std::array<Vertex, 3> best{};
    bool found = false;
    for (const Cycle& f : inner) {
      if (std::find(f.begin(), f.end(), e.u) == f.end() || std::find(f.begin(), f.end(), e.v) == f.end()) continue;
      std::array<Vertex, 3> t{};
      std::copy_n(f.begin(), std::min<std::size_t>(3, f.size()), t.begin());
      std::sort(t.begin(), t.end());
      if (!found || t < best) best = t;
      found = true;
    }
    const auto p = [&](Vertex v) { return points[static_cast<std::size_t>(v - 1)]; };
    circle[e] = found ? float_circumcircle(p(best[0]), p(best[1]), p(best[2]))
                      : float_circumcircle(p(e.u), p(e.v), p(e.u));
  }
  FloatAssignment a;
  a.flavor = system.flavor();
  for (const VarId& id : system.variables()) {
    double v = 0.0;
    switch (id.kind) {
      case VarKind::kPX: v = points[static_cast<std::size_t>(id.i - 1)].x; break;
      case VarKind::kPY: v = points[static_cast<std::size_t>(id.i - 1)].y; break;
      case VarKind::kCX: v = circle.at(make_edge(id.i, id.j)).center.x; break;
      case VarKind::kCY: v = circle.at(make_edge(id.i, id.j)).center.y; break;
      case VarKind::kR: v = circle.at(make_edge(id.i, id.j)).radius + 2.0; break;
    }
    a.values.emplace(id, v);
  }
  return a;
}

FloatAssignment initialize(const PlaneTriangulation& g, const ConstraintSystem& system, const SolverConfig& config,
                           int restart_index) {
  std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(restart_index));
  std::vector<Point2d> pts;
  try {
    pts = tutte_embedding(g, 1.0);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularSystem) throw;
    pts = random_interior_fallback(g, rng);
  }
  const double dmin = min_pairwise_distance(pts);
  const double scale = dmin > 0.0 && std::isfinite(dmin) ? 10.0 / dmin : 10.0;
  for (Point2d& p : pts) {
    p.x *= scale;
    p.y *= scale;
  }
  if (restart_index > 0) {
    const double amplitude = config.jitter * 10.0 * (0.5 + unit_uniform(rng()));
    for (Point2d& p : pts) {
      p.x += amplitude * (2.0 * unit_uniform(rng()) - 1.0);
      p.y += amplitude * (2.0 * unit_uniform(rng()) - 1.0);
    }
  }
  return assignment_from_points(g, system, pts);
}

SolveOutcome descend(const ConstraintSystem& system, const FloatAssignment& start, const SolverConfig& config,
                     int restart_index) {
  validate(config);
  const CompiledSystem compiled(system);
  const double margin = config.margin > 0.0 ? config.margin : default_margin(system, start);
  const double target = margin * config.overshoot;
  const auto deadline = config.time_budget > 0.0
                            ? Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                 std::chrono::duration<double>(config.time_budget))
                            : Clock::time_point::max();

  const Reduced reduced(system);
  std::vector<double> x = dense_values(system, start);
  std::vector<double> z = reduced.contract(x);
  reduced.expand(z, x);
  const std::size_t dim = z.size();
  std::vector<double> grad(dim), trial(dim), trial_grad(dim);
  std::vector<double> full_grad(x.size()), trial_x(x.size());

  SolveOutcome out;
  out.restart_index = restart_index;
  const auto finish = [&](SolveStatus status, long iterations) {
    const FloatCheck fc = compiled.check(x, margin);
    out.status = status;
    out.best = make_assignment(system, std::span<const double>(x));
    out.final_min_margin = fc.min_strict_slack;
    out.final_loss = compiled.penalty(x, target, {});
    out.iterations = iterations;
    return out;
  };
  const auto loss_at = [&](std::span<const double> zz, std::span<double> xx, std::span<double> gz) {
    reduced.expand(zz, xx);
    const double l = compiled.penalty(xx, target, full_grad);
    reduced.pull_back(xx, zz, full_grad, gz);
    return l;
  };

  if (compiled.check(x, margin).satisfied) return finish(SolveStatus::kSatisfiedFloat, 0);

  double loss = loss_at(z, x, grad);
  double step = config.initial_step;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(config.max_iterations) + 1);
  history.push_back(loss);
  for (long it = 1; it <= config.max_iterations; ++it) {
    if ((it & 63) == 0 && Clock::now() > deadline) return finish(SolveStatus::kExhausted, it - 1);
    double gnorm2 = 0.0;
    for (double v : grad) gnorm2 += v * v;
    if (!(gnorm2 > 0.0) || !std::isfinite(gnorm2)) return finish(SolveStatus::kExhausted, it - 1);

    bool accepted = false;
    double trial_loss = 0.0;
    for (int bt = 0; bt <= config.max_backtracks; ++bt) {
      for (std::size_t k = 0; k < dim; ++k) trial[k] = z[k] - step * grad[k];
      trial_loss = loss_at(trial, trial_x, trial_grad);
      if (std::isfinite(trial_loss) && trial_loss <= loss - config.armijo * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= config.backtrack;
    }
    if (!accepted) return finish(SolveStatus::kExhausted, it - 1);

    // Barzilai-Borwein step for the next iteration.
    double ss = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double s = trial[k] - z[k];
      const double y = trial_grad[k] - grad[k];
      ss += s * s;
      sy += s * y;
    }
    step = sy > 0.0 ? ss / sy : step * 2.0;
    step = std::clamp(step, 1e-30, 1e30);

    z.swap(trial);
    x.swap(trial_x);
    grad.swap(trial_grad);
    loss = trial_loss;
    history.push_back(loss);

    if (compiled.check(x, margin).satisfied) return finish(SolveStatus::kSatisfiedFloat, it);
    const auto window = static_cast<std::size_t>(config.stagnation_window);
    if (history.size() > window) {
      const double before = history[history.size() - 1 - window];
      if (before - loss < config.stagnation_tolerance * std::max(before, 1e-300)) {
        return finish(SolveStatus::kExhausted, it);
      }
    }
  }
  return finish(SolveStatus::kExhausted, config.max_iterations);
}

SolveOutcome solve(const ConstraintSystem& system, const PlaneTriangulation& g, const SolverConfig& config) {
  validate(config);
  const auto start = Clock::now();
  SolveOutcome best;
  bool have = false;
  long total = 0;
  for (int r = 0; r <= config.restarts; ++r) {
    SolverConfig run = config;
    if (config.time_budget > 0.0) {
      const double used = std::chrono::duration<double>(Clock::now() - start).count();
      if (used >= config.time_budget) break;
      run.time_budget = config.time_budget - used;
    }
    SolveOutcome out = descend(system, initialize(g, system, config, r), run, r);
    total += out.iterations;
    if (out.status == SolveStatus::kSatisfiedFloat) {
      out.iterations = total;
      return out;
    }
    if (!have || out.final_loss < best.final_loss) {
      best = std::move(out);
      have = true;
    }
  }
  if (!have) best.best = initialize(g, system, config, 0);
  best.iterations = total;
  return best;
}

std::vector<ExactAssignment> round_candidates(const FloatAssignment& a, const SolverConfig& config) {
  std::vector<ExactAssignment> out;
  out.reserve(config.denominators.size());
  for (std::int64_t d : config.denominators) {
    ExactAssignment e;
    e.flavor = a.flavor;
    for (const auto& [id, v] : a.values) e.values.emplace(id, rationalize(v, d));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace delreal

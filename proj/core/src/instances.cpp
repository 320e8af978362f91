#include "delreal/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "delreal/constraints.hpp"
#include "delreal/delaunay.hpp"
#include "delreal/error.hpp"
#include "delreal/realizer.hpp"
#include "delreal/solver.hpp"

namespace delreal {

Instance random_instance(int n, std::uint64_t seed, std::int64_t bound) {
  if (n < 4) throw Error(ErrorCode::kInvalidArgument, "random instances need n >= 4");
  if (bound < 0) throw Error(ErrorCode::kInvalidArgument, "bound must be non-negative");
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(bound) + 1;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<IntPoint> pts;
    for (int i = 0; i < n; ++i) {
      const auto x = static_cast<long>(rng() % span);
      const auto y = static_cast<long>(rng() % span);
      pts.push_back({Int(x), Int(y)});
    }
    const std::vector<RatPoint> rp = to_rat_points(pts);
    if (!general_position_check(rp, 1).ok) continue;
    const DelaunayResult dt = delaunay(rp);
    return {std::move(pts), as_plane_triangulation(dt, rp)};
  }
  throw Error(ErrorCode::kBoundTooSmall, "no general-position sample of " + std::to_string(n) + " points in [0," +
                                             std::to_string(bound) + "]^2 after 1000 tries");
}

PlaneTriangulation fan_triangulation(int n) {
  if (n < 4) throw Error(ErrorCode::kInvalidArgument, "fans need n >= 4");
  std::vector<double> angle(static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= n; ++k) {
    angle[static_cast<std::size_t>(k)] = std::numbers::pi / 2 - 2 * std::numbers::pi * (k - 1) / n;
  }
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n + 1));
  const auto link = [&](Vertex a, Vertex b) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  };
  for (Vertex k = 2; k <= n; ++k) link(1, k);
  for (Vertex k = 2; k < n; ++k) link(k, k + 1);
  Rotation rotation(static_cast<std::size_t>(n + 1));
  for (Vertex v = 1; v <= n; ++v) {
    const double ax = std::cos(angle[static_cast<std::size_t>(v)]), ay = std::sin(angle[static_cast<std::size_t>(v)]);
    auto nbrs = adj[static_cast<std::size_t>(v)];
    const auto direction = [&](Vertex u) {
      return std::atan2(std::sin(angle[static_cast<std::size_t>(u)]) - ay,
                        std::cos(angle[static_cast<std::size_t>(u)]) - ax);
    };
    std::sort(nbrs.begin(), nbrs.end(), [&](Vertex a, Vertex b) { return direction(a) < direction(b); });
    rotation[static_cast<std::size_t>(v)] = std::move(nbrs);
  }
  Cycle outer(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) outer[static_cast<std::size_t>(k)] = k + 1;
  return PlaneTriangulation(n, std::move(rotation), std::move(outer));
}

namespace {

/// Lower endpoint of sqrt(a) - sqrt(b), tightened until positive or the
/// precision cap is reached.
Interval sqrt_difference(const Rat& a, const Rat& b, int precision_bits) {
  Interval d;
  for (int bits = precision_bits; bits <= 8192; bits *= 2) {
    d = Interval::sqrt(a, bits) - Interval::sqrt(b, bits);
    if (d.lo > 0) break;
  }
  return d;
}

}  // namespace

RadiusBounds radius_bounds(const PlaneTriangulation& g, std::span<const RatPoint> points,
                           std::span<const RatPoint> centers, int precision_bits) {
  const ConstraintSystem sys = build_const(g);
  if (!evaluate(sys, const_assignment(sys, g, points, centers), false).satisfied) {
    throw Error(ErrorCode::kUnsatisfiedInput, "points and centers do not satisfy the CONST system exactly");
  }
  const std::size_t n = points.size();

  Rat dn2 = dist_sq(points[0], points[1]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) dn2 = std::min(dn2, dist_sq(points[i], points[j]));
  }

  std::optional<Interval> dc;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    const Rat r2 = dist_sq(centers[e], points[static_cast<std::size_t>(edge.u - 1)]);
    for (std::size_t k = 0; k < n; ++k) {
      if (static_cast<Vertex>(k + 1) == edge.u || static_cast<Vertex>(k + 1) == edge.v) continue;
      const Interval gap = sqrt_difference(dist_sq(centers[e], points[k]), r2, precision_bits);
      dc = dc ? min(*dc, gap) : gap;
    }
  }

  const Cycle& outer = g.outer_face();
  Rat da2;
  bool have_da = false;
  for (std::size_t t = 0; t < outer.size(); ++t) {
    const Vertex a = outer[t], b = outer[(t + 1) % outer.size()];
    const RatPoint& pa = points[static_cast<std::size_t>(a - 1)];
    const RatPoint& pb = points[static_cast<std::size_t>(b - 1)];
    const Rat len2 = dist_sq(pa, pb);
    for (std::size_t k = 0; k < n; ++k) {
      if (static_cast<Vertex>(k + 1) == a || static_cast<Vertex>(k + 1) == b) continue;
      const Rat c = con_poly(pa, points[k], pb);
      const Rat d2 = c * c / len2;
      if (!have_da || d2 < da2) da2 = d2;
      have_da = true;
    }
  }

  RadiusBounds out;
  out.d_n = Interval::sqrt(dn2, precision_bits);
  out.d_c = dc ? *dc : out.d_n;
  out.d_a = have_da ? Interval::sqrt(da2, precision_bits) : out.d_n;
  Rat lo = std::min({out.d_n.lo, out.d_c.lo, out.d_a.lo});
  if (lo < 0) lo = 0;
  out.r = lo / 3;
  out.r_star = out.r;
  return out;
}

std::vector<std::vector<RatPoint>> perturb_within_radius(std::span<const RatPoint> points, const Rat& r,
                                                         std::uint64_t seed, int trials) {
  if (r < 0) throw Error(ErrorCode::kInvalidArgument, "radius must be non-negative");
  std::mt19937_64 rng(seed);
  const Rat r2 = r * r;
  const double rd = to_double(r);
  const auto max_den = static_cast<std::int64_t>(std::clamp(1e12 / std::max(rd, 1e-300), 1.0, 1e15));
  std::vector<std::vector<RatPoint>> out;
  for (int t = 0; t < trials; ++t) {
    std::vector<RatPoint> moved(points.begin(), points.end());
    for (RatPoint& p : moved) {
      const double theta = 2 * std::numbers::pi * unit_uniform(rng());
      const double rho = rd * std::sqrt(unit_uniform(rng()));
      if (r == 0) continue;
      Rat dx = rationalize(rho * std::cos(theta), max_den);
      Rat dy = rationalize(rho * std::sin(theta), max_den);
      while (dx * dx + dy * dy > r2) {
        dx /= 2;
        dy /= 2;
      }
      p.x += dx;
      p.y += dy;
    }
    out.push_back(std::move(moved));
  }
  return out;
}

std::vector<std::vector<RatPoint>> perturb_within_halfbox(std::span<const RatPoint> points, std::uint64_t seed,
                                                          int trials, const Rat& half_width) {
  if (half_width < 0) throw Error(ErrorCode::kInvalidArgument, "half width must be non-negative");
  constexpr std::int64_t kSteps = std::int64_t{1} << 20;
  std::mt19937_64 rng(seed);
  const auto offset = [&](bool corner) {
    if (corner) return (rng() & 1) ? half_width : Rat(-half_width);
    const auto m = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * kSteps + 1)) - kSteps;
    return Rat(half_width * m / kSteps);
  };
  std::vector<std::vector<RatPoint>> out;
  for (int t = 0; t < trials; ++t) {
    std::vector<RatPoint> moved(points.begin(), points.end());
    const bool corner = t < 4;
    for (RatPoint& p : moved) {
      p.x += offset(corner);
      p.y += offset(corner);
    }
    out.push_back(std::move(moved));
  }
  return out;
}

}  // namespace delreal

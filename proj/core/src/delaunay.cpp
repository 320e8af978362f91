#include "delreal/delaunay.hpp"

#include <algorithm>
#include <numeric>

#include "delreal/error.hpp"

namespace delreal {

namespace {

struct ZPoint {
  Int x;
  Int y;
};

// Similarity invariance lets every predicate run on integers.
std::vector<ZPoint> integerize(std::span<const RatPoint> points) {
  const Int scale = common_denominator(points);
  std::vector<ZPoint> out;
  out.reserve(points.size());
  for (const RatPoint& p : points) {
    Rat sx = p.x * scale;
    Rat sy = p.y * scale;
    out.push_back({sx.get_num(), sy.get_num()});
  }
  return out;
}

int orient(const ZPoint& a, const ZPoint& b, const ZPoint& c) {
  const Int det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(det);
}

// Assumes (a, b, c) counterclockwise.
int in_circle_ccw(const ZPoint& a, const ZPoint& b, const ZPoint& c, const ZPoint& q) {
  const Int adx = a.x - q.x, ady = a.y - q.y;
  const Int bdx = b.x - q.x, bdy = b.y - q.y;
  const Int cdx = c.x - q.x, cdy = c.y - q.y;
  const Int alift = adx * adx + ady * ady;
  const Int blift = bdx * bdx + bdy * bdy;
  const Int clift = cdx * cdx + cdy * cdy;
  const Int det = adx * (bdy * clift - blift * cdy) - ady * (bdx * clift - blift * cdx) +
                  alift * (bdx * cdy - bdy * cdx);
  return sgn(det);
}

int in_circle_any(const ZPoint& a, const ZPoint& b, const ZPoint& c, const ZPoint& q) {
  const int o = orient(a, b, c);
  return o > 0 ? in_circle_ccw(a, b, c, q) : in_circle_ccw(a, c, b, q);
}

}  // namespace

bool GeneralPositionReport::has(const std::string& kind) const {
  return std::any_of(issues.begin(), issues.end(), [&](const PositionIssue& i) { return i.kind == kind; });
}

GeneralPositionReport general_position_check(std::span<const RatPoint> points, std::size_t max_reported) {
  GeneralPositionReport report;
  const std::size_t n = points.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  for (std::size_t i = 1; i < n; ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      report.issues.push_back({"DUPLICATE_POINT", {std::min(order[i - 1], order[i]), std::max(order[i - 1], order[i])}});
    }
  }

  try {
    const HullResult hull = convex_hull(points);
    for (std::size_t idx : hull.boundary_collinear) report.issues.push_back({"BOUNDARY_COLLINEAR", {idx}});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAllCollinear) throw;
    report.issues.push_back({"ALL_COLLINEAR", {}});
  }

  const auto ip = integerize(points);
  std::size_t cocircular = 0;
  for (std::size_t i = 0; i < n && cocircular < max_reported; ++i) {
    for (std::size_t j = i + 1; j < n && cocircular < max_reported; ++j) {
      for (std::size_t k = j + 1; k < n && cocircular < max_reported; ++k) {
        const bool ijk = orient(ip[i], ip[j], ip[k]) != 0;
        for (std::size_t m = k + 1; m < n && cocircular < max_reported; ++m) {
          // Pick any non-collinear triple of the quadruple to test the fourth point.
          int sign = 1;
          if (ijk) {
            sign = in_circle_any(ip[i], ip[j], ip[k], ip[m]);
          } else if (orient(ip[i], ip[j], ip[m]) != 0) {
            sign = in_circle_any(ip[i], ip[j], ip[m], ip[k]);
          } else if (orient(ip[i], ip[k], ip[m]) != 0) {
            sign = in_circle_any(ip[i], ip[k], ip[m], ip[j]);
          } else if (orient(ip[j], ip[k], ip[m]) != 0) {
            sign = in_circle_any(ip[j], ip[k], ip[m], ip[i]);
          }
          if (sign == 0) {
            report.issues.push_back({"COCIRCULAR_QUAD", {i, j, k, m}});
            ++cocircular;
          }
        }
      }
    }
  }
  report.ok = report.issues.empty();
  return report;
}

DelaunayResult delaunay(std::span<const RatPoint> points) {
  const GeneralPositionReport gp = general_position_check(points, 1);
  if (!gp.ok) {
    std::string what;
    for (const auto& issue : gp.issues) what += (what.empty() ? "" : ", ") + issue.kind;
    throw Error(ErrorCode::kNotGeneralPosition, what);
  }
  const auto ip = integerize(points);
  const std::size_t n = points.size();

  DelaunayResult result;
  std::vector<IndexEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const int o = orient(ip[i], ip[j], ip[k]);
        if (o == 0) continue;
        const std::size_t b = o > 0 ? j : k;
        const std::size_t c = o > 0 ? k : j;
        bool empty = true;
        for (std::size_t m = 0; m < n && empty; ++m) {
          if (m == i || m == j || m == k) continue;
          empty = in_circle_ccw(ip[i], ip[b], ip[c], ip[m]) < 0;
        }
        if (!empty) continue;
        result.faces.push_back({i, j, k});
        edges.push_back({i, j});
        edges.push_back({i, k});
        edges.push_back({j, k});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  result.edges = std::move(edges);
  result.hull = convex_hull(points).cycle;
  result.general_position = true;
  return result;
}

PlaneTriangulation as_plane_triangulation(const DelaunayResult& result, std::span<const RatPoint> points) {
  const auto ip = integerize(points);
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const IndexEdge& e : result.edges) {
    adjacency[e.a].push_back(e.b);
    adjacency[e.b].push_back(e.a);
  }
  Rotation rotation(n + 1);
  for (std::size_t v = 0; v < n; ++v) {
    auto& nbrs = adjacency[v];
    const ZPoint& o = ip[v];
    auto upper = [&](std::size_t u) {
      const Int dy = ip[u].y - o.y;
      return dy > 0 || (dy == 0 && ip[u].x - o.x > 0);
    };
    std::sort(nbrs.begin(), nbrs.end(), [&](std::size_t a, std::size_t b) {
      const bool ua = upper(a), ub = upper(b);
      if (ua != ub) return ua;
      return orient(o, ip[a], ip[b]) > 0;
    });
    for (std::size_t u : nbrs) rotation[v + 1].push_back(static_cast<Vertex>(u + 1));
  }
  Cycle outer;
  for (std::size_t h : result.hull) outer.push_back(static_cast<Vertex>(h + 1));
  return PlaneTriangulation(static_cast<int>(n), std::move(rotation), std::move(outer));
}

}  // namespace delreal

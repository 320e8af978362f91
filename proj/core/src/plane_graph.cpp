#include "delreal/plane_graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

#include "delreal/error.hpp"

namespace delreal {

Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Cycle normalize_cycle(Cycle cycle) {
  if (cycle.empty()) return cycle;
  const auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  return cycle;
}

bool same_cyclic_order(const Cycle& a, const Cycle& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t shift = 0; shift < b.size(); ++shift) {
    bool match = true;
    for (std::size_t i = 0; i < a.size() && match; ++i) match = a[i] == b[(i + shift) % b.size()];
    if (match) return true;
  }
  return false;
}

bool same_cycle_any_orientation(const Cycle& a, const Cycle& b) {
  if (same_cyclic_order(a, b)) return true;
  Cycle reversed(b.rbegin(), b.rend());
  return same_cyclic_order(a, reversed);
}

namespace {

// Position of u in rotation[v], or -1.
class DartIndex {
 public:
  explicit DartIndex(const Rotation& rotation) : n_(static_cast<int>(rotation.size()) - 1) {
    pos_.assign(static_cast<std::size_t>((n_ + 1) * (n_ + 1)), -1);
    for (int v = 1; v <= n_; ++v) {
      const auto& nbrs = rotation[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < nbrs.size(); ++i) at(v, nbrs[i]) = static_cast<int>(i);
    }
  }
  int& at(Vertex v, Vertex u) { return pos_[static_cast<std::size_t>(v * (n_ + 1) + u)]; }
  int get(Vertex v, Vertex u) const { return pos_[static_cast<std::size_t>(v * (n_ + 1) + u)]; }

 private:
  int n_;
  std::vector<int> pos_;
};

void check_structure(const Rotation& rotation) {
  const int n = static_cast<int>(rotation.size()) - 1;
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "rotation must describe at least one vertex");
  for (int v = 1; v <= n; ++v) {
    std::set<Vertex> seen;
    for (Vertex u : rotation[static_cast<std::size_t>(v)]) {
      if (u < 1 || u > n) {
        throw Error(ErrorCode::kInvalidArgument,
                    "vertex " + std::to_string(v) + " lists out-of-range neighbor " + std::to_string(u));
      }
      if (u == v) throw Error(ErrorCode::kInvalidArgument, "self loop at vertex " + std::to_string(v));
      if (!seen.insert(u).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "vertex " + std::to_string(v) + " lists neighbor " + std::to_string(u) + " twice");
      }
    }
  }
  for (int v = 1; v <= n; ++v) {
    for (Vertex u : rotation[static_cast<std::size_t>(v)]) {
      const auto& back = rotation[static_cast<std::size_t>(u)];
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        throw Error(ErrorCode::kAsymmetricEdge, "dart " + std::to_string(v) + "->" + std::to_string(u) +
                                                    " has no reverse dart");
      }
    }
  }
}

std::vector<Cycle> trace_faces(const Rotation& rotation) {
  const int n = static_cast<int>(rotation.size()) - 1;
  const DartIndex index(rotation);
  std::vector<std::vector<char>> used(rotation.size());
  for (int v = 1; v <= n; ++v) used[static_cast<std::size_t>(v)].assign(rotation[static_cast<std::size_t>(v)].size(), 0);

  std::vector<Cycle> faces;
  for (int v = 1; v <= n; ++v) {
    const auto& nbrs = rotation[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (used[static_cast<std::size_t>(v)][i]) continue;
      Cycle face;
      Vertex from = v;
      std::size_t slot = i;
      while (!used[static_cast<std::size_t>(from)][slot]) {
        used[static_cast<std::size_t>(from)][slot] = 1;
        face.push_back(from);
        const Vertex to = rotation[static_cast<std::size_t>(from)][slot];
        // Next dart leaves `to` along the neighbor preceding `from` in the
        // counterclockwise rotation, keeping the face on the left.
        const auto& around = rotation[static_cast<std::size_t>(to)];
        const int back = index.get(to, from);
        const std::size_t deg = around.size();
        slot = (static_cast<std::size_t>(back) + deg - 1) % deg;
        from = to;
      }
      faces.push_back(normalize_cycle(std::move(face)));
    }
  }
  return faces;
}

std::vector<Edge> collect_edges(const Rotation& rotation) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < rotation.size(); ++v) {
    for (Vertex u : rotation[v]) {
      if (static_cast<Vertex>(v) < u) edges.push_back({static_cast<Vertex>(v), u});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

bool connected_without(const Rotation& rotation, Vertex removed) {
  const int n = static_cast<int>(rotation.size()) - 1;
  Vertex start = 0;
  for (Vertex v = 1; v <= n && start == 0; ++v) {
    if (v != removed) start = v;
  }
  if (start == 0) return true;
  std::vector<char> seen(rotation.size(), 0);
  std::queue<Vertex> queue;
  queue.push(start);
  seen[static_cast<std::size_t>(start)] = 1;
  int count = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    for (Vertex u : rotation[static_cast<std::size_t>(v)]) {
      if (u == removed || seen[static_cast<std::size_t>(u)]) continue;
      seen[static_cast<std::size_t>(u)] = 1;
      ++count;
      queue.push(u);
    }
  }
  return count == n - (removed == 0 ? 0 : 1);
}

Cycle reversed_normalized(const Cycle& c) { return normalize_cycle(Cycle(c.rbegin(), c.rend())); }

}  // namespace

std::vector<Cycle> faces_from_rotation(const Rotation& rotation) {
  check_structure(rotation);
  if (!connected_without(rotation, 0)) throw Error(ErrorCode::kNotConnected, "rotation system is disconnected");
  return trace_faces(rotation);
}

PlaneTriangulation::PlaneTriangulation(int n, Rotation rotation, Cycle outer_face)
    : n_(n), rotation_(std::move(rotation)) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  if (static_cast<int>(rotation_.size()) != n + 1) {
    throw Error(ErrorCode::kInvalidArgument, "rotation must have an entry for every vertex 1..n");
  }
  check_structure(rotation_);
  for (Vertex v : outer_face) {
    if (v < 1 || v > n) throw Error(ErrorCode::kInvalidArgument, "outer face vertex out of range");
  }
  connected_ = connected_without(rotation_, 0);
  edges_ = collect_edges(rotation_);
  faces_ = trace_faces(rotation_);

  const Cycle wanted = normalize_cycle(outer_face);
  auto traced = [&](const Cycle& c) { return std::find(faces_.begin(), faces_.end(), c) != faces_.end(); };
  if (traced(wanted)) {
    outer_face_traced_ = true;
  } else if (!wanted.empty() && traced(reversed_normalized(wanted))) {
    // The rotation is mirrored relative to the clockwise outer face.
    for (auto& nbrs : rotation_) std::reverse(nbrs.begin(), nbrs.end());
    faces_ = trace_faces(rotation_);
    reflected_ = true;
    outer_face_traced_ = traced(wanted);
  }
  outer_face_ = wanted;
}

std::vector<Cycle> PlaneTriangulation::inner_faces() const {
  std::vector<Cycle> inner;
  bool skipped = false;
  for (const Cycle& f : faces_) {
    if (!skipped && outer_face_traced_ && f == outer_face_) {
      skipped = true;
      continue;
    }
    inner.push_back(f);
  }
  return inner;
}

bool PlaneTriangulation::has_edge(Vertex a, Vertex b) const {
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
}

bool PlaneTriangulation::on_outer_face(Vertex v) const {
  return std::find(outer_face_.begin(), outer_face_.end(), v) != outer_face_.end();
}

std::uint64_t PlaneTriangulation::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::int64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= static_cast<std::uint64_t>((value >> (8 * byte)) & 0xff);
      h *= 1099511628211ULL;
    }
  };
  mix(n_);
  for (int v = 1; v <= n_; ++v) {
    mix(-1);
    for (Vertex u : neighbors(v)) mix(u);
  }
  mix(-2);
  for (Vertex v : outer_face_) mix(v);
  return h;
}

bool ValidationReport::has(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

ValidationReport validate_triangulation(const PlaneTriangulation& g) {
  ValidationReport report;
  auto fail = [&](std::string rule, std::string message, std::vector<Vertex> vertices) {
    report.violations.push_back({std::move(rule), std::move(message), std::move(vertices)});
  };

  const int n = g.n();
  if (n < 4) fail("TOO_SMALL", "triangulations need at least 4 vertices", {});

  if (!g.connected()) {
    fail("NOT_CONNECTED", "graph is not connected", {});
  } else {
    std::vector<Vertex> cut;
    for (Vertex v = 1; v <= n; ++v) {
      if (!connected_without(g.rotation(), v)) cut.push_back(v);
    }
    if (!cut.empty()) fail("NOT_2_CONNECTED", "removing a listed vertex disconnects the graph", cut);
    const auto faces = static_cast<long>(g.faces().size());
    const auto edges = static_cast<long>(g.edges().size());
    if (faces + n - edges != 2) {
      fail("EULER_MISMATCH",
           "faces + vertices - edges = " + std::to_string(faces + n - edges) + ", expected 2 (rotation is not planar)",
           {});
    }
  }

  if (g.outer_face().size() < 3 || !g.outer_face_is_traced()) {
    fail("OUTER_FACE_NOT_A_FACE", "outer face is not a face of the embedding", g.outer_face());
  }

  for (const Cycle& f : g.faces()) {
    const std::set<Vertex> distinct(f.begin(), f.end());
    if (distinct.size() != f.size()) fail("FACE_NOT_A_CYCLE", "face boundary repeats a vertex", f);
  }
  for (const Cycle& f : g.inner_faces()) {
    if (f.size() != 3) {
      fail("NONTRIANGULAR_INNER_FACE", "inner face has " + std::to_string(f.size()) + " vertices", f);
    }
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (g.degree(v) == 2 && !g.on_outer_face(v)) {
      fail("DEGREE2_INTERIOR", "degree-2 vertex is not on the outer face", {v});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

std::vector<Cycle> candidate_outer_faces(const PlaneTriangulation& g) {
  if (g.outer_face().size() >= 4) return {g.outer_face()};
  std::vector<Cycle> candidates{g.outer_face()};
  for (const Cycle& f : g.faces()) {
    if (f != g.outer_face()) candidates.push_back(f);
  }
  return candidates;
}

PlaneTriangulation reembed_with_outer_face(const PlaneTriangulation& g, const Cycle& face) {
  for (const Cycle& f : g.faces()) {
    if (same_cycle_any_orientation(f, face)) {
      if (f == g.outer_face()) return g;
      return PlaneTriangulation(g.n(), g.rotation(), f);
    }
  }
  throw Error(ErrorCode::kFaceNotFound, "requested outer face is not a face of the embedding");
}

std::vector<Point2d> tutte_embedding(const PlaneTriangulation& g, double polygon_radius) {
  if (!(polygon_radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "polygon radius must be positive");
  const int n = g.n();
  const Cycle& outer = g.outer_face();
  const auto m = static_cast<int>(outer.size());
  if (m < 3) throw Error(ErrorCode::kSingularSystem, "outer face has fewer than three vertices");

  std::vector<Point2d> pos(static_cast<std::size_t>(n));
  std::vector<int> slot(static_cast<std::size_t>(n + 1), -1);
  for (int k = 0; k < m; ++k) {
    const double angle = std::numbers::pi / 2 - 2 * std::numbers::pi * k / m;  // clockwise
    pos[static_cast<std::size_t>(outer[static_cast<std::size_t>(k)] - 1)] = {polygon_radius * std::cos(angle),
                                                                             polygon_radius * std::sin(angle)};
  }
  std::vector<Vertex> interior;
  for (Vertex v = 1; v <= n; ++v) {
    if (!g.on_outer_face(v)) {
      slot[static_cast<std::size_t>(v)] = static_cast<int>(interior.size());
      interior.push_back(v);
    }
  }
  if (interior.empty()) return pos;

  const auto k = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(k, k);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(k, 2);
  for (Eigen::Index row = 0; row < k; ++row) {
    const Vertex v = interior[static_cast<std::size_t>(row)];
    laplacian(row, row) = g.degree(v);
    for (Vertex u : g.neighbors(v)) {
      const int s = slot[static_cast<std::size_t>(u)];
      if (s >= 0) {
        laplacian(row, s) -= 1.0;
      } else {
        rhs(row, 0) += pos[static_cast<std::size_t>(u - 1)].x;
        rhs(row, 1) += pos[static_cast<std::size_t>(u - 1)].y;
      }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(laplacian);
  if (lu.rank() < k) throw Error(ErrorCode::kSingularSystem, "barycentric system is singular");
  Eigen::MatrixXd solution = lu.solve(rhs);
  // One round of iterative refinement keeps the residual near machine precision.
  solution += lu.solve(rhs - laplacian * solution);
  const double residual = (laplacian * solution - rhs).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10 * std::max(1.0, polygon_radius))) {
    throw Error(ErrorCode::kSingularSystem, "barycentric system is ill-conditioned");
  }

  for (Eigen::Index row = 0; row < k; ++row) {
    pos[static_cast<std::size_t>(interior[static_cast<std::size_t>(row)] - 1)] = {solution(row, 0),
                                                                                  solution(row, 1)};
  }
  // Strictly inside the clockwise polygon means strictly right of every edge.
  for (Vertex v : interior) {
    const Point2d p = pos[static_cast<std::size_t>(v - 1)];
    for (int e = 0; e < m; ++e) {
      const Point2d a = pos[static_cast<std::size_t>(outer[static_cast<std::size_t>(e)] - 1)];
      const Point2d b = pos[static_cast<std::size_t>(outer[static_cast<std::size_t>((e + 1) % m)] - 1)];
      const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      if (!(cross < 0.0)) {
        throw Error(ErrorCode::kSingularSystem, "vertex " + std::to_string(v) + " is not strictly inside");
      }
    }
  }
  return pos;
}

}  // namespace delreal

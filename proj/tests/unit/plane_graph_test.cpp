#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "delreal/delaunay.hpp"
#include "delreal/error.hpp"
#include "delreal/instances.hpp"
#include "delreal/plane_graph.hpp"
#include "fixtures.hpp"

namespace delreal {
namespace {

using namespace testing;

std::set<Cycle> normalized(const std::vector<Cycle>& faces) {
  std::set<Cycle> out;
  for (const Cycle& f : faces) out.insert(normalize_cycle(f));
  return out;
}

TEST(Cycles, NormalizeAndCompare) {
  EXPECT_EQ(normalize_cycle({3, 1, 2}), (Cycle{1, 2, 3}));
  EXPECT_TRUE(same_cyclic_order({1, 2, 3, 4}, {3, 4, 1, 2}));
  EXPECT_FALSE(same_cyclic_order({1, 2, 3, 4}, {4, 3, 2, 1}));
  EXPECT_TRUE(same_cycle_any_orientation({1, 2, 3, 4}, {4, 3, 2, 1}));
  EXPECT_FALSE(same_cycle_any_orientation({1, 2, 3, 4}, {1, 3, 2, 4}));
}

TEST(FacesFromRotation, K4HasFourTriangles) {
  const auto faces = faces_from_rotation(k4().rotation());
  ASSERT_EQ(faces.size(), 4u);
  for (const Cycle& f : faces) EXPECT_EQ(f.size(), 3u);
}

TEST(FacesFromRotation, QuadWithDiagonal) {
  const auto faces = normalized(faces_from_rotation(quad_with_diagonal().rotation()));
  const std::set<Cycle> expected{{1, 2, 3, 4}, {1, 3, 2}, {1, 4, 3}};
  EXPECT_EQ(faces, expected);
}

TEST(FacesFromRotation, Errors) {
  const Rotation missing_dart{{}, {2, 3}, {3, 1}, {2}};
  EXPECT_THROW(
      {
        try {
          faces_from_rotation(missing_dart);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::kAsymmetricEdge);
          throw;
        }
      },
      Error);
  const Rotation two_triangles{{}, {3, 2}, {1, 3}, {2, 1}, {6, 5}, {4, 6}, {5, 4}};
  try {
    faces_from_rotation(two_triangles);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotConnected);
  }
}

TEST(FacesFromRotation, EveryDartOnceAndLengthSum) {
  for (int n = 4; n <= 14; ++n) {
    const Instance inst = random_instance(n, 100 + static_cast<std::uint64_t>(n), 1000);
    const auto faces = faces_from_rotation(inst.graph.rotation());
    std::set<std::pair<Vertex, Vertex>> darts;
    std::size_t total = 0;
    for (const Cycle& f : faces) {
      total += f.size();
      for (std::size_t i = 0; i < f.size(); ++i) EXPECT_TRUE(darts.insert({f[i], f[(i + 1) % f.size()]}).second);
    }
    EXPECT_EQ(total, 2 * inst.graph.edges().size());
    EXPECT_LE(inst.graph.edges().size(), static_cast<std::size_t>(3 * n - 6));
  }
}

// Rebuilding the rotation from the face list must give back the same faces.
TEST(FacesFromRotation, RotationRebuiltFromFacesGivesSameFaces) {
  for (int n = 4; n <= 12; ++n) {
    const Instance inst = random_instance(n, 300 + static_cast<std::uint64_t>(n), 1000);
    const auto faces = faces_from_rotation(inst.graph.rotation());
    // Face on the left of dart (u->v) continues with (v->w); then w follows
    // u clockwise around v, i.e. u follows w counterclockwise.
    std::map<std::pair<Vertex, Vertex>, Vertex> next_ccw;
    for (const Cycle& f : faces)
      for (std::size_t i = 0; i < f.size(); ++i) {
        const Vertex u = f[i], v = f[(i + 1) % f.size()], w = f[(i + 2) % f.size()];
        next_ccw[{v, w}] = u;
      }
    Rotation rebuilt(static_cast<std::size_t>(n) + 1);
    for (Vertex v = 1; v <= n; ++v) {
      const Vertex start = inst.graph.neighbors(v).front();
      Vertex cur = start;
      do {
        rebuilt[static_cast<std::size_t>(v)].push_back(cur);
        cur = next_ccw.at({v, cur});
      } while (cur != start);
    }
    EXPECT_EQ(normalized(faces_from_rotation(rebuilt)), normalized(faces));
  }
}

TEST(Validate, GoodInputs) {
  EXPECT_TRUE(validate_triangulation(k4()).ok);
  EXPECT_TRUE(validate_triangulation(quad_with_diagonal()).ok);
  EXPECT_TRUE(validate_triangulation(octahedron()).ok);
  for (int n = 4; n <= 12; ++n) EXPECT_TRUE(validate_triangulation(fan_triangulation(n)).ok) << n;
}

TEST(Validate, Violations) {
  const ValidationReport r = validate_triangulation(interior_degree2());
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.has("DEGREE2_INTERIOR"));
  const PlaneTriangulation square(4, {{}, {4, 2}, {1, 3}, {2, 4}, {3, 1}}, {1, 2, 3, 4});
  EXPECT_TRUE(validate_triangulation(square).has("NONTRIANGULAR_INNER_FACE"));
  const PlaneTriangulation split(6, {{}, {3, 2}, {1, 3}, {2, 1}, {6, 5}, {4, 6}, {5, 4}}, {1, 2, 3});
  EXPECT_TRUE(validate_triangulation(split).has("NOT_CONNECTED"));
  const PlaneTriangulation triangle(3, {{}, {3, 2}, {1, 3}, {2, 1}}, {1, 2, 3});
  EXPECT_TRUE(validate_triangulation(triangle).has("TOO_SMALL"));
  for (const ValidationReport& rep : {r, validate_triangulation(square)}) EXPECT_EQ(rep.ok, rep.violations.empty());
}

TEST(CandidateOuterFaces, Counts) {
  const auto k4_faces = candidate_outer_faces(k4());
  EXPECT_EQ(k4_faces.size(), 4u);
  EXPECT_EQ(k4_faces.front(), k4().outer_face());
  const auto quad = candidate_outer_faces(quad_with_diagonal());
  ASSERT_EQ(quad.size(), 1u);
  EXPECT_EQ(quad.front(), (Cycle{1, 2, 3, 4}));
  EXPECT_EQ(candidate_outer_faces(octahedron()).size(), static_cast<std::size_t>(2 * 6 - 4));
}

TEST(Reembed, K4ToAnotherFace) {
  const PlaneTriangulation g = reembed_with_outer_face(k4(), {1, 2, 4});
  EXPECT_TRUE(validate_triangulation(g).ok);
  EXPECT_TRUE(same_cycle_any_orientation(g.outer_face(), {1, 2, 4}));
  std::set<std::set<Vertex>> inner;
  for (const Cycle& f : g.inner_faces()) inner.insert(std::set<Vertex>(f.begin(), f.end()));
  const std::set<std::set<Vertex>> expected{{1, 2, 3}, {1, 3, 4}, {2, 3, 4}};
  EXPECT_EQ(inner, expected);
  EXPECT_EQ(g.edges(), k4().edges());
}

TEST(Reembed, IdentityAndMissingFace) {
  EXPECT_EQ(reembed_with_outer_face(k4(), k4().outer_face()), k4());
  try {
    reembed_with_outer_face(octahedron(), {1, 2, 4});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFaceNotFound);
  }
}

TEST(Reembed, EveryOctahedronFaceValidates) {
  for (const Cycle& f : candidate_outer_faces(octahedron())) {
    const PlaneTriangulation g = reembed_with_outer_face(octahedron(), f);
    EXPECT_TRUE(validate_triangulation(g).ok);
    EXPECT_TRUE(same_cycle_any_orientation(g.outer_face(), f));
  }
}

TEST(Tutte, K4CentroidAndOuterPolygon) {
  const auto p = tutte_embedding(k4(), 1.0);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_NEAR(p[3].x, (p[0].x + p[1].x + p[2].x) / 3, 1e-12);
  EXPECT_NEAR(p[3].y, (p[0].y + p[1].y + p[2].y) / 3, 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::hypot(p[i].x, p[i].y), 1.0, 1e-12);
}

TEST(Tutte, FanAllOnPolygon) {
  const auto p = tutte_embedding(fan_triangulation(5), 2.0);
  for (const Point2d& q : p) EXPECT_NEAR(std::hypot(q.x, q.y), 2.0, 1e-12);
}

TEST(Tutte, OctahedronBarycentric) {
  const PlaneTriangulation g = octahedron();
  const auto p = tutte_embedding(g, 1.0);
  for (Vertex v = 4; v <= 6; ++v) {
    double sx = 0, sy = 0;
    for (Vertex w : g.neighbors(v)) {
      sx += p[static_cast<std::size_t>(w - 1)].x;
      sy += p[static_cast<std::size_t>(w - 1)].y;
    }
    EXPECT_NEAR(p[static_cast<std::size_t>(v - 1)].x, sx / g.degree(v), 1e-10);
    EXPECT_NEAR(p[static_cast<std::size_t>(v - 1)].y, sy / g.degree(v), 1e-10);
  }
}

TEST(Tutte, OuterPolygonIsClockwiseConvexAfterRounding) {
  for (int n = 4; n <= 14; ++n) {
    const Instance inst = random_instance(n, 500 + static_cast<std::uint64_t>(n), 1000);
    const auto p = tutte_embedding(inst.graph, 1000.0);
    const Cycle& outer = inst.graph.outer_face();
    for (std::size_t i = 0; i < outer.size(); ++i) {
      auto at = [&](std::size_t k) {
        const Point2d& q = p[static_cast<std::size_t>(outer[k % outer.size()] - 1)];
        return RatPoint{rationalize(q.x, 1000000), rationalize(q.y, 1000000)};
      };
      EXPECT_GT(con_poly(at(i), at(i + 1), at(i + 2)), 0);
    }
  }
}

TEST(PlaneTriangulation, MirroredInputIsReflected) {
  Rotation mirrored = k4().rotation();
  for (auto& r : mirrored) std::reverse(r.begin(), r.end());
  const PlaneTriangulation g(4, mirrored, {1, 2, 3});
  EXPECT_TRUE(g.reflected_on_input());
  EXPECT_TRUE(validate_triangulation(g).ok);
  EXPECT_EQ(g.edges(), k4().edges());
}

TEST(PlaneTriangulation, DelaunayOfDrawingMatchesHandRotation) {
  const auto pts = k4_points();
  const PlaneTriangulation g = as_plane_triangulation(delaunay(pts), pts);
  EXPECT_EQ(g.edges(), k4().edges());
  EXPECT_TRUE(same_cyclic_order(g.outer_face(), k4().outer_face()));
  for (Vertex v = 1; v <= 4; ++v) EXPECT_TRUE(same_cyclic_order(g.neighbors(v), k4().neighbors(v))) << v;
}

}  // namespace
}  // namespace delreal

#pragma once

// Hand-built triangulations. Rotations were derived from explicit drawings
// (listed next to each graph) by sorting neighbors by angle.

#include <string>
#include <vector>

#include "delreal/exact.hpp"
#include "delreal/plane_graph.hpp"

namespace delreal::testing {

// 1=(0,0) 2=(0,3) 3=(3,0) 4=(1,1)
inline PlaneTriangulation k4() { return PlaneTriangulation(4, {{}, {3, 4, 2}, {1, 4, 3}, {2, 4, 1}, {1, 3, 2}}, {1, 2, 3}); }

inline std::vector<RatPoint> k4_points() {
  return {make_point(0, 0), make_point(0, 3), make_point(3, 0), make_point(1, 1)};
}

// 1=(0,0) 2=(0,4) 3=(4,4) 4=(4,0), chord 1-3
inline PlaneTriangulation quad_with_diagonal() {
  return PlaneTriangulation(4, {{}, {4, 3, 2}, {1, 3}, {1, 4, 2}, {3, 1}}, {1, 2, 3, 4});
}

// 1=(0,100) 2=(87,-50) 3=(-87,-50) 4=(0,-20) 5=(-17,10) 6=(17,10)
inline PlaneTriangulation octahedron() {
  return PlaneTriangulation(
      6, {{}, {3, 5, 6, 2}, {1, 6, 4, 3}, {2, 4, 5, 1}, {3, 2, 6, 5}, {3, 4, 6, 1}, {4, 2, 1, 5}}, {1, 2, 3});
}

// K4 drawing plus 5=(0.3,1.3) joined only to 1 and 2.
inline PlaneTriangulation interior_degree2() {
  return PlaneTriangulation(5, {{}, {3, 4, 5, 2}, {1, 5, 4, 3}, {2, 4, 1}, {1, 3, 2}, {1, 2}}, {1, 2, 3});
}

inline const char* k4_json() {
  return R"({"n": 4, "rotation": {"1": [3, 4, 2], "2": [1, 4, 3], "3": [2, 4, 1], "4": [1, 3, 2]}, "outer_face": [1, 2, 3]})";
}

inline const char* interior_degree2_json() {
  return R"({"n": 5, "rotation": {"1": [3, 4, 5, 2], "2": [1, 5, 4, 3], "3": [2, 4, 1], "4": [1, 3, 2], "5": [1, 2]}, "outer_face": [1, 2, 3]})";
}

// Square 1-2-3-4 with an empty quadrilateral interior (no chord).
inline const char* square_json() {
  return R"({"n": 4, "rotation": {"1": [4, 2], "2": [1, 3], "3": [2, 4], "4": [3, 1]}, "outer_face": [1, 2, 3, 4]})";
}

// Two disjoint triangles.
inline const char* disconnected_json() {
  return R"({"n": 6, "rotation": {"1": [3, 2], "2": [1, 3], "3": [2, 1], "4": [6, 5], "5": [4, 6], "6": [5, 4]}, "outer_face": [1, 2, 3]})";
}

}  // namespace delreal::testing

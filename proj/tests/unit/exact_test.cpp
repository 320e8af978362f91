#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "delreal/error.hpp"
#include "delreal/exact.hpp"
#include "oracle.hpp"

namespace delreal {
namespace {

using testing::oracle_best_rational;
using testing::oracle_circumcenter;
using testing::oracle_con;

RatPoint rp(std::int64_t x, std::int64_t y) { return make_point(x, y); }

RatPoint random_point(std::mt19937_64& rng) {
  auto coord = [&] { return make_rat(static_cast<std::int64_t>(rng() % 201) - 100, 1 + static_cast<std::int64_t>(rng() % 7)); };
  return {coord(), coord()};
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no delreal::Error thrown";
  return ErrorCode::kIo;
}

TEST(Rat, ParseAndFormat) {
  EXPECT_EQ(parse_rat("3"), Rat(3));
  EXPECT_EQ(parse_rat("-6/4"), make_rat(-3, 2));
  EXPECT_EQ(format_rat(make_rat(6, -4)), "-3/2");
  EXPECT_EQ(format_rat(Rat(7)), "7");
  EXPECT_EQ(code_of([] { parse_rat("1/0"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_rat("x"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_rat(""); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_rat("1/"); }), ErrorCode::kParse);
}

TEST(ConPoly, Examples) {
  EXPECT_EQ(con_poly(rp(0, 0), rp(1, 0), rp(1, 1)), oracle_con(rp(0, 0), rp(1, 0), rp(1, 1)));
  EXPECT_EQ(con_poly(rp(0, 0), rp(1, 0), rp(1, 1)), -1);
  EXPECT_EQ(con_poly(rp(0, 0), rp(1, 1), rp(2, 2)), 0);
  EXPECT_EQ(con_poly(rp(0, 0), rp(0, 1), rp(1, 1)), oracle_con(rp(0, 0), rp(0, 1), rp(1, 1)));
  EXPECT_EQ(con_poly(rp(0, 0), rp(0, 1), rp(1, 1)), 1);
}

TEST(ConPoly, MatchesOracleAndOrientation) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const RatPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    const Rat v = con_poly(a, b, c);
    EXPECT_EQ(v, oracle_con(a, b, c));
    EXPECT_EQ(orientation(a, b, c), -sgn(v));
  }
}

TEST(ConPoly, AntisymmetryTranslationScaling) {
  std::mt19937_64 rng(12);
  const Rat alphas[] = {make_rat(1, 3), Rat(2), Rat(7)};
  for (int t = 0; t < 200; ++t) {
    const RatPoint a = random_point(rng), b = random_point(rng), c = random_point(rng), d = random_point(rng);
    EXPECT_EQ(con_poly(a, b, c), -con_poly(a, c, b));
    auto shift = [&](const RatPoint& p) { return RatPoint{p.x + d.x, p.y + d.y}; };
    EXPECT_EQ(con_poly(shift(a), shift(b), shift(c)), con_poly(a, b, c));
    for (const Rat& al : alphas) {
      auto sc = [&](const RatPoint& p) { return RatPoint{al * p.x, al * p.y}; };
      EXPECT_EQ(con_poly(sc(a), sc(b), sc(c)), al * al * con_poly(a, b, c));
      EXPECT_EQ(dist_sq(sc(a), sc(b)), al * al * dist_sq(a, b));
    }
  }
}

TEST(InCircle, Examples) {
  const RatPoint a = rp(0, 0), b = rp(2, 0), c = rp(0, 2);
  EXPECT_EQ(in_circle_sign(a, b, c, rp(1, 1)), 1);
  EXPECT_EQ(in_circle_sign(a, b, c, rp(2, 2)), 0);
  EXPECT_EQ(in_circle_sign(a, b, c, rp(5, 5)), -1);
  EXPECT_EQ(code_of([] { in_circle_sign(rp(0, 0), rp(1, 1), rp(2, 2), rp(3, 0)); }), ErrorCode::kCollinearTriple);
}

TEST(InCircle, PermutationInvariantAndMatchesOracle) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const RatPoint a = random_point(rng), b = random_point(rng), c = random_point(rng), q = random_point(rng);
    if (con_poly(a, b, c) == 0) continue;
    const int s = in_circle_sign(a, b, c, q);
    EXPECT_EQ(s, testing::oracle_in_circle(a, b, c, q));
    EXPECT_EQ(s, in_circle_sign(b, a, c, q));
    EXPECT_EQ(s, in_circle_sign(c, b, a, q));
    EXPECT_EQ(s, in_circle_sign(b, c, a, q));
    EXPECT_EQ(s, in_circle_sign(a, c, b, q));
  }
}

TEST(Circumcenter, Examples) {
  EXPECT_EQ(circumcenter(rp(0, 0), rp(2, 0), rp(0, 2)), rp(1, 1));
  const RatPoint expected = oracle_circumcenter(rp(0, 0), rp(4, 0), rp(2, 2));
  EXPECT_EQ(expected, rp(2, 0));
  EXPECT_EQ(circumcenter(rp(0, 0), rp(4, 0), rp(2, 2)), expected);
  EXPECT_EQ(code_of([] { circumcenter(rp(0, 0), rp(1, 1), rp(2, 2)); }), ErrorCode::kCollinearTriple);
}

TEST(Circumcenter, Equidistant) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const RatPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    if (con_poly(a, b, c) == 0) continue;
    const RatPoint o = circumcenter(a, b, c);
    EXPECT_EQ(dist_sq(o, a), dist_sq(o, b));
    EXPECT_EQ(dist_sq(o, a), dist_sq(o, c));
    EXPECT_EQ(o, oracle_circumcenter(a, b, c));
  }
}

TEST(DistSq, Examples) {
  EXPECT_EQ(dist_sq(rp(0, 0), rp(3, 4)), 25);
  EXPECT_EQ(dist_sq(rp(5, -2), rp(5, -2)), 0);
  EXPECT_EQ(dist_sq({make_rat(1, 2), Rat(0)}, {Rat(0), make_rat(1, 2)}), make_rat(1, 2));
}

TEST(Rationalize, Examples) {
  EXPECT_EQ(rationalize(0.5, 10), make_rat(1, 2));
  EXPECT_EQ(rationalize(3.14159265358979, 120), make_rat(355, 113));
  EXPECT_EQ(code_of([] { rationalize(std::numeric_limits<double>::quiet_NaN(), 10); }), ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([] { rationalize(std::numeric_limits<double>::infinity(), 10); }), ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([] { rationalize(1.0, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(rationalize(-2.75, 4), make_rat(-11, 4));
  EXPECT_EQ(rationalize(0.0, 5), Rat(0));
}

TEST(Rationalize, MatchesBruteForce) {
  std::mt19937_64 rng(15);
  const std::int64_t dens[] = {1, 2, 7, 30, 113, 400};
  for (int t = 0; t < 120; ++t) {
    const double x = (static_cast<double>(rng() % 2000001) - 1000000.0) / 65536.0 + 1e-7 * static_cast<double>(t);
    const std::int64_t d = dens[t % 6];
    EXPECT_EQ(rationalize(x, d), oracle_best_rational(x, d)) << x << " " << d;
  }
}

TEST(Rationalize, ReproducesRepresentableValues) {
  for (std::int64_t q = 1; q <= 64; ++q)
    for (std::int64_t p = -70; p <= 70; p += 3) {
      const double x = static_cast<double>(p) / static_cast<double>(q);
      EXPECT_EQ(rationalize(x, q), make_rat(p, q)) << p << "/" << q;
      EXPECT_EQ(rationalize(x, 100), make_rat(p, q)) << p << "/" << q;
    }
}

TEST(ConvexHull, Examples) {
  const std::vector<RatPoint> square{rp(0, 0), rp(4, 0), rp(4, 4), rp(0, 4)};
  HullResult h = convex_hull(square);
  ASSERT_EQ(h.cycle.size(), 4u);
  const std::vector<RatPoint> with_inner{rp(0, 0), rp(4, 0), rp(4, 4), rp(0, 4), rp(1, 1)};
  h = convex_hull(with_inner);
  EXPECT_EQ(h.cycle.size(), 4u);
  EXPECT_TRUE(std::find(h.cycle.begin(), h.cycle.end(), 4u) == h.cycle.end());
  const std::vector<RatPoint> collinear_side{rp(0, 0), rp(2, 0), rp(4, 0), rp(2, 3)};
  h = convex_hull(collinear_side);
  std::vector<std::size_t> sorted = h.cycle;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ(h.boundary_collinear, (std::vector<std::size_t>{1}));
  const std::vector<RatPoint> line{rp(0, 0), rp(1, 1), rp(2, 2)};
  EXPECT_EQ(code_of([&] { convex_hull(line); }), ErrorCode::kAllCollinear);
}

TEST(ConvexHull, ClockwiseAndMatchesOracle) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 60; ++t) {
    std::vector<RatPoint> pts;
    const int n = 3 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) pts.push_back(rp(static_cast<std::int64_t>(rng() % 50), static_cast<std::int64_t>(rng() % 50)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    HullResult h;
    try {
      h = convex_hull(pts);
    } catch (const Error&) {
      continue;
    }
    if (!h.boundary_collinear.empty()) continue;
    const auto oracle = testing::oracle_delaunay(pts).hull_edges;
    ASSERT_EQ(h.cycle.size(), oracle.size());
    for (std::size_t i = 0; i < h.cycle.size(); ++i) {
      const std::size_t a = h.cycle[i], b = h.cycle[(i + 1) % h.cycle.size()];
      EXPECT_TRUE(oracle.count({a, b})) << "hull edge " << a << "->" << b << " not clockwise";
    }
  }
}

TEST(CommonDenominator, Lcm) {
  const std::vector<RatPoint> pts{{make_rat(1, 2), Rat(3)}, {make_rat(5, 4), make_rat(1, 6)}};
  EXPECT_EQ(common_denominator(pts), 12);
}

}  // namespace
}  // namespace delreal

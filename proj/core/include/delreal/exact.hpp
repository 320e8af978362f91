#pragma once

// Exact rational geometry. Everything on the certification path goes
// through these functions; floating point never decides a predicate here.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace delreal {

using Int = mpz_class;
/// Canonical rational (gcd(num, den) = 1, den > 0). gmpxx keeps results of
/// arithmetic canonical; use make_rat() when building from a raw fraction.
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(std::int64_t num, std::int64_t den = 1);

/// Parses "a", "-a" or "a/b". Throws Error(kParse) on malformed text or b = 0.
Rat parse_rat(std::string_view text);
/// "a" when the denominator is 1, otherwise "a/b".
std::string format_rat(const Rat& value);

struct RatPoint {
  Rat x;
  Rat y;

  friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RatPoint& a, const RatPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

struct IntPoint {
  Int x;
  Int y;
  friend bool operator==(const IntPoint&, const IntPoint&) = default;
};

RatPoint make_point(std::int64_t x, std::int64_t y);

/// x2*y1 - x2*y0 - x0*y1 - x1*y2 + x1*y0 + x0*y2, i.e. (p2 - p0) x (p1 - p0).
/// Positive: right turn at p1. Negative: left turn. Zero: collinear.
Rat con_poly(const RatPoint& p0, const RatPoint& p1, const RatPoint& p2);

/// Sign of the counterclockwise orientation of (a, b, c): +1 CCW, -1 CW, 0 collinear.
/// Note this is the negated sign of con_poly(a, b, c).
int orientation(const RatPoint& a, const RatPoint& b, const RatPoint& c);

/// +1 if q is strictly inside the circle through a, b, c; 0 on it; -1 outside.
/// The orientation of (a, b, c) does not matter. Throws kCollinearTriple.
int in_circle_sign(const RatPoint& a, const RatPoint& b, const RatPoint& c, const RatPoint& q);

/// Throws kCollinearTriple.
RatPoint circumcenter(const RatPoint& a, const RatPoint& b, const RatPoint& c);

Rat dist_sq(const RatPoint& p, const RatPoint& q);

/// Best rational approximation of x with denominator <= max_denominator
/// (closest such rational; ties go to the smaller denominator).
/// Throws kNonFinite for NaN/inf and kInvalidArgument for max_denominator < 1.
Rat rationalize(double x, std::int64_t max_denominator);

struct HullResult {
  /// Hull vertices as input indices, clockwise, strictly convex.
  std::vector<std::size_t> cycle;
  /// Input points lying on a hull edge but not at a corner.
  std::vector<std::size_t> boundary_collinear;
};

/// Exact convex hull. Throws kAllCollinear (also for fewer than 3 distinct points).
HullResult convex_hull(std::span<const RatPoint> points);

/// Least common multiple of all coordinate denominators.
Int common_denominator(std::span<const RatPoint> points);

double to_double(const Rat& value);

std::vector<RatPoint> to_rat_points(std::span<const IntPoint> points);

}  // namespace delreal

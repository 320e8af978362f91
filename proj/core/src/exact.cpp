#include "delreal/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "delreal/error.hpp"

namespace delreal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kAsymmetricEdge: return "ASYMMETRIC_EDGE";
    case ErrorCode::kNotConnected: return "NOT_CONNECTED";
    case ErrorCode::kFaceNotFound: return "FACE_NOT_FOUND";
    case ErrorCode::kSingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::kCollinearTriple: return "COLLINEAR_TRIPLE";
    case ErrorCode::kNonFinite: return "NON_FINITE";
    case ErrorCode::kAllCollinear: return "ALL_COLLINEAR";
    case ErrorCode::kNotGeneralPosition: return "NOT_GENERAL_POSITION";
    case ErrorCode::kMissingVariable: return "MISSING_VARIABLE";
    case ErrorCode::kBoundTooSmall: return "BOUND_TOO_SMALL";
    case ErrorCode::kUnsatisfiedInput: return "UNSATISFIED_INPUT";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kIo: return "IO_ERROR";
  }
  return "UNKNOWN_ERROR";
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(std::int64_t num, std::int64_t den) {
  return make_rat(Int(std::to_string(num)), Int(std::to_string(den)));
}

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'");
  }
  const Int n(std::string(num[0] == '+' ? num.substr(1) : num));
  const Int d{std::string(den)};
  if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  return make_rat(n, d);
}

std::string format_rat(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

RatPoint make_point(std::int64_t x, std::int64_t y) { return {make_rat(x), make_rat(y)}; }

Rat con_poly(const RatPoint& p0, const RatPoint& p1, const RatPoint& p2) {
  return p2.x * p1.y - p2.x * p0.y - p0.x * p1.y - p1.x * p2.y + p1.x * p0.y + p0.x * p2.y;
}

int orientation(const RatPoint& a, const RatPoint& b, const RatPoint& c) {
  const Rat det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(det);
}

int in_circle_sign(const RatPoint& a, const RatPoint& b, const RatPoint& c, const RatPoint& q) {
  const int orient = orientation(a, b, c);
  if (orient == 0) throw Error(ErrorCode::kCollinearTriple, "in_circle_sign on a collinear triple");
  const Rat adx = a.x - q.x, ady = a.y - q.y;
  const Rat bdx = b.x - q.x, bdy = b.y - q.y;
  const Rat cdx = c.x - q.x, cdy = c.y - q.y;
  const Rat alift = adx * adx + ady * ady;
  const Rat blift = bdx * bdx + bdy * bdy;
  const Rat clift = cdx * cdx + cdy * cdy;
  const Rat det = adx * (bdy * clift - blift * cdy) - ady * (bdx * clift - blift * cdx) +
                  alift * (bdx * cdy - bdy * cdx);
  return sgn(det) * orient;
}

RatPoint circumcenter(const RatPoint& a, const RatPoint& b, const RatPoint& c) {
  const Rat d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  if (d == 0) throw Error(ErrorCode::kCollinearTriple, "circumcenter of a collinear triple");
  const Rat a2 = a.x * a.x + a.y * a.y;
  const Rat b2 = b.x * b.x + b.y * b.y;
  const Rat c2 = c.x * c.x + c.y * c.y;
  RatPoint center;
  center.x = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
  center.y = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
  return center;
}

Rat dist_sq(const RatPoint& p, const RatPoint& q) {
  const Rat dx = p.x - q.x;
  const Rat dy = p.y - q.y;
  return dx * dx + dy * dy;
}

Rat rationalize(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kNonFinite, "cannot rationalize a non-finite value");
  if (max_denominator < 1) throw Error(ErrorCode::kInvalidArgument, "max_denominator must be >= 1");
  const Rat exact(x);  // doubles are dyadic rationals, so this is exact
  const bool negative = exact < 0;
  const Rat target = negative ? Rat(-exact) : exact;
  const Int bound(std::to_string(max_denominator));

  // Convergents h/k of the continued fraction of target.
  Int h_prev = 0, h = 1, k_prev = 1, k = 0;
  Rat rest = target;
  Rat best;
  while (true) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const Int h_next = a * h + h_prev;
    const Int k_next = a * k + k_prev;
    if (k_next > bound) {
      // Largest admissible semiconvergent versus the last convergent.
      const Int m = (bound - k_prev) / k;
      const Rat semi = make_rat(h_prev + m * h, k_prev + m * k);
      const Rat conv = make_rat(h, k);
      best = abs(semi - target) < abs(conv - target) ? semi : conv;
      break;
    }
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    const Rat frac = rest - Rat(a);
    if (frac == 0) {
      best = make_rat(h, k);
      break;
    }
    rest = 1 / frac;
  }
  return negative ? Rat(-best) : best;
}

HullResult convex_hull(std::span<const RatPoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  // Drop exact duplicates so the chain never sees zero-length edges.
  std::vector<std::size_t> unique;
  for (std::size_t idx : order) {
    if (unique.empty() || !(points[unique.back()] == points[idx])) unique.push_back(idx);
  }
  if (unique.size() < 3) throw Error(ErrorCode::kAllCollinear, "fewer than three distinct points");

  // Andrew's monotone chain, counterclockwise, collinear points popped.
  std::vector<std::size_t> ccw;
  auto build = [&](auto begin, auto end) {
    const std::size_t floor = ccw.size();
    for (auto it = begin; it != end; ++it) {
      while (ccw.size() >= floor + 2 &&
             orientation(points[ccw[ccw.size() - 2]], points[ccw.back()], points[*it]) <= 0) {
        ccw.pop_back();
      }
      ccw.push_back(*it);
    }
    ccw.pop_back();
  };
  build(unique.begin(), unique.end());
  build(unique.rbegin(), unique.rend());
  if (ccw.size() < 3) throw Error(ErrorCode::kAllCollinear, "all points are collinear");

  HullResult result;
  result.cycle.push_back(ccw.front());
  for (std::size_t i = ccw.size() - 1; i >= 1; --i) result.cycle.push_back(ccw[i]);

  std::vector<bool> corner(points.size(), false);
  for (std::size_t idx : result.cycle) corner[idx] = true;
  const std::size_t h = result.cycle.size();
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (corner[p]) continue;
    for (std::size_t e = 0; e < h; ++e) {
      const RatPoint& a = points[result.cycle[e]];
      const RatPoint& b = points[result.cycle[(e + 1) % h]];
      const RatPoint& q = points[p];
      if (orientation(a, b, q) != 0) continue;
      if (std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
          q.y <= std::max(a.y, b.y)) {
        result.boundary_collinear.push_back(p);
        break;
      }
    }
  }
  return result;
}

Int common_denominator(std::span<const RatPoint> points) {
  Int l = 1;
  for (const RatPoint& p : points) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.x.get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.y.get_den_mpz_t());
  }
  return l;
}

double to_double(const Rat& value) { return value.get_d(); }

std::vector<RatPoint> to_rat_points(std::span<const IntPoint> points) {
  std::vector<RatPoint> out;
  out.reserve(points.size());
  for (const IntPoint& p : points) out.push_back({Rat(p.x), Rat(p.y)});
  return out;
}

}  // namespace delreal

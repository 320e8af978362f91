#pragma once

#include "delreal/exact.hpp"

namespace delreal {

/// Closed interval [lo, hi] with rational endpoints that is guaranteed to
/// contain the real quantity it stands for. Endpoints come from outward-rounded
/// MPFR operations; everything after that is exact.
struct Interval {
  Rat lo;
  Rat hi;

  static Interval point(const Rat& v) { return {v, v}; }

  /// Enclosure of sqrt(v) for v >= 0 at the given working precision (bits).
  static Interval sqrt(const Rat& v, int precision_bits = 128);

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
  Interval scaled(const Rat& positive_factor) const { return {lo * positive_factor, hi * positive_factor}; }

  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  Rat width() const { return hi - lo; }
  double mid() const { return to_double((lo + hi) / 2); }
};

Interval min(const Interval& a, const Interval& b);

}  // namespace delreal

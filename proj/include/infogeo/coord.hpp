#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace infogeo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A real interval, possibly half- or doubly-infinite. Infinite ends are
// always open.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool open_lo = true;
  bool open_hi = true;

  Interval() = default;
  Interval(double lo, double hi, bool open_lo = true, bool open_hi = true);

  static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }

  bool finite_lo() const { return std::isfinite(lo); }
  bool finite_hi() const { return std::isfinite(hi); }
  bool bounded() const { return finite_lo() && finite_hi(); }
  double width() const { return hi - lo; }

  // Closure membership, ignoring openness.
  bool in_closure(double x) const { return x >= lo && x <= hi; }
  bool in_interior(double x) const { return x > lo && x < hi; }
  // Closure of `other` lies inside the closure of this interval.
  bool covers(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }

  std::string to_string() const;
};

// A coordinate value that also carries its distances to both ends of the
// domain it lives in. Functions singular at an endpoint read the distance
// instead of forming `hi - value`, which loses every significant digit once
// the value is within a few ulps of the end.
struct Coord {
  double value = 0.0;
  double from_lo = 0.0;  // value - lo, +inf when lo = -inf
  double to_hi = 0.0;    // hi - value, +inf when hi = +inf

  // Distances computed by plain subtraction; fine away from the ends.
  static Coord in(const Interval& domain, double x) {
    return {x, x - domain.lo, domain.hi - x};
  }
  static Coord at_lo(const Interval& domain) { return {domain.lo, 0.0, domain.hi - domain.lo}; }
  static Coord at_hi(const Interval& domain) { return {domain.hi, domain.hi - domain.lo, 0.0}; }

  // Builds a coordinate from a distance to one end, taking `value` from the
  // nearer end so it is rounded once.
  static Coord from_lo_distance(const Interval& domain, double d) {
    return {domain.lo + d, d, domain.hi - (domain.lo + d)};
  }
  static Coord from_hi_distance(const Interval& domain, double d) {
    return {domain.hi - d, (domain.hi - d) - domain.lo, d};
  }

  bool at_boundary() const { return from_lo == 0.0 || to_hi == 0.0; }
};

// Re-expresses `c`, given relative to `inner`, relative to `outer`. Ends the
// two intervals share keep their exact distances.
Coord rebase(const Coord& c, const Interval& inner, const Interval& outer);

}  // namespace infogeo

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace torodyn {

// A value with a certified error radius: the true quantity lies in
// [value - radius, value + radius]. Arithmetic widens radii conservatively;
// a few ulps of slack absorb double rounding of the value itself.
struct ValErr {
  double value = 0.0;
  double radius = 0.0;

  double lower() const { return value - radius; }
  double upper() const { return value + radius; }
  bool contains(double x) const { return lower() <= x && x <= upper(); }

  static ValErr exact(double v) { return {v, 0.0}; }

  static ValErr from_bounds(double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    double rad = std::max(hi - mid, mid - lo) + 4 * ulp(std::max(std::fabs(lo), std::fabs(hi)));
    return {mid, rad};
  }

  ValErr operator+(const ValErr& o) const {
    return {value + o.value, radius + o.radius + ulp_pad(value + o.value)};
  }
  ValErr operator-(const ValErr& o) const {
    return {value - o.value, radius + o.radius + ulp_pad(value - o.value)};
  }
  ValErr scaled(double c) const {
    return {value * c, radius * std::fabs(c) + ulp_pad(value * c)};
  }

  static double ulp(double x) {
    return std::nextafter(std::fabs(x), std::numeric_limits<double>::infinity()) - std::fabs(x);
  }
  static double ulp_pad(double x) { return 4 * ulp(x); }
};

// log over a positive interval [lo, hi]; caller guarantees lo > 0.
inline ValErr log_interval(double lo, double hi) {
  double llo = std::log(lo), lhi = std::log(hi);
  return ValErr::from_bounds(llo, lhi);
}

}  // namespace torodyn

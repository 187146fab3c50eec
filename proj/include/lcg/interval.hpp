#pragma once

#include <string>

namespace lcg {

// Closed real interval with outward-rounded arithmetic. Every operation
// returns an interval that contains the exact result for all operand
// values in the inputs.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double l, double h);

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const { return {-hi, -lo}; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

double round_down(double v);
double round_up(double v);

Interval hull(const Interval& a, const Interval& b);
Interval exp(const Interval& x);
Interval min(const Interval& a, const Interval& b);

// Widens by k ulps on each side.
Interval widen(const Interval& x, int ulps);

std::string format_real(double v);

}  // namespace lcg

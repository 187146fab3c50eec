#include "lcg/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lcg/errors.hpp"

namespace lcg {

double round_down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
double round_up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

Interval::Interval(double l, double h) : lo(l), hi(h) {
  if (std::isnan(l) || std::isnan(h) || l > h) throw ModelError("malformed interval");
}

Interval operator+(const Interval& a, const Interval& b) {
  return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {round_down(a.lo - b.hi), round_up(a.hi - b.lo)};
}

Interval operator*(const Interval& a, const Interval& b) {
  double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {round_down(*std::min_element(c, c + 4)), round_up(*std::max_element(c, c + 4))};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) throw ModelError("interval division by an interval containing zero");
  double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  return {round_down(*std::min_element(c, c + 4)), round_up(*std::max_element(c, c + 4))};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval exp(const Interval& x) {
  // libm exp is accurate to within an ulp; two ulps of slack covers it.
  Interval r{std::exp(x.lo), std::exp(x.hi)};
  r = widen(r, 2);
  if (r.lo < 0.0) r.lo = 0.0;
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval widen(const Interval& x, int ulps) {
  Interval r = x;
  for (int i = 0; i < ulps; ++i) {
    r.lo = round_down(r.lo);
    r.hi = round_up(r.hi);
  }
  return r;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace lcg
